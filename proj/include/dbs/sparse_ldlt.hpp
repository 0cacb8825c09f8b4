// Self-contained sparse LDL' factorization with a fill-reducing minimum
// degree ordering: symbolic analysis via the elimination tree, up-looking
// numeric factorization, no pivoting (intended for shifted SPD systems).
#pragma once

#include <vector>

#include "dbs/fem.hpp"

namespace dbs {

// Quotient-graph minimum degree ordering with supervariable merging and mass
// elimination. Returns perm such that perm[k] is the k-th pivot.
std::vector<int> min_degree_order(const SparseSym& A);

class LdltFactor {
 public:
  // Factorizes P A P' = L D L'. Throws SingularPivot when a pivot falls below
  // the breakdown threshold (relative to the largest diagonal of A).
  static LdltFactor factorize(const SparseSym& A, std::vector<int> perm = {});

  void solve(std::span<const double> b, std::span<double> x) const;
  std::vector<double> solve(const std::vector<double>& b) const;

  int dimension() const { return n_; }
  long long fill_nnz() const { return (long long)(Lx_.size()); }
  const std::vector<int>& permutation() const { return perm_; }
  const std::vector<double>& diagonal() const { return D_; }

 private:
  int n_ = 0;
  std::vector<int> perm_, iperm_;
  std::vector<int> Lp_, Li_;  // columns of unit-lower L (strict part)
  std::vector<double> Lx_, D_;
};

}  // namespace dbs
