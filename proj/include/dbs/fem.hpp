// P1 finite elements for the Neumann Laplacian on a TriMesh: stiffness and
// mass assembly in CSR form, nodal interpolation, and region-filtered norms.
// Quadrature is exact for P1 data, and the global matrices are assembled as
// the exact sum of the per-region matrices.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dbs/mesh.hpp"

namespace dbs {

// Symmetric sparse matrix, CSR with the full (both-triangles) pattern.
struct SparseSym {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> values;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  double inner(std::span<const double> x, std::span<const double> y) const;  // x' A y
  double norm_inf() const;
  double symmetry_defect() const;  // max |a_ij - a_ji| / max |a_ij|
  SparseSym& add_scaled(const SparseSym& other, double s);  // same pattern
};

enum class RegionFilter { All, Bulks, Neck, BulkLeft, BulkRight };

bool region_passes(Region r, RegionFilter f);

SparseSym assemble_stiffness(const TriMesh& mesh, RegionFilter filter = RegionFilter::All);
SparseSym assemble_mass(const TriMesh& mesh, RegionFilter filter = RegionFilter::All);

// Per-vertex nodal field on a mesh.
struct FeField {
  const TriMesh* mesh = nullptr;
  std::vector<double> coeffs;
};

// Nodal interpolant of f; throws NonFinite if f is NaN/inf at a vertex.
FeField interpolate(const TriMesh& mesh,
                    const std::function<double(double, double)>& f);

struct Norms {
  double l2_sq = 0.0;
  double h1_semi_sq = 0.0;
};

// u' M_region u and u' K_region u, assembling the filtered matrices on the
// fly. For repeated use assemble once and call the span overload.
Norms norms(const FeField& u, RegionFilter filter);
Norms norms(std::span<const double> u, const SparseSym& K_f, const SparseSym& M_f);

}  // namespace dbs
