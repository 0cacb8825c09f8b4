#include "dbs/fem.hpp"

#include <algorithm>
#include <cmath>

#include "dbs/errors.hpp"

namespace dbs {

void SparseSym::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = row_ptr[size_t(i)]; k < row_ptr[size_t(i) + 1]; ++k)
      acc += values[size_t(k)] * x[size_t(col_idx[size_t(k)])];
    y[size_t(i)] = acc;
  }
}

std::vector<double> SparseSym::multiply(const std::vector<double>& x) const {
  std::vector<double> y(size_t(n));
  multiply(x, y);
  return y;
}

double SparseSym::inner(std::span<const double> x, std::span<const double> y) const {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int k = row_ptr[size_t(i)]; k < row_ptr[size_t(i) + 1]; ++k)
      row += values[size_t(k)] * y[size_t(col_idx[size_t(k)])];
    acc += x[size_t(i)] * row;
  }
  return acc;
}

double SparseSym::norm_inf() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double SparseSym::symmetry_defect() const {
  double scale = norm_inf();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[size_t(i)]; k < row_ptr[size_t(i) + 1]; ++k) {
      int j = col_idx[size_t(k)];
      if (j < i) continue;
      double aji = 0.0;
      for (int l = row_ptr[size_t(j)]; l < row_ptr[size_t(j) + 1]; ++l)
        if (col_idx[size_t(l)] == i) {
          aji = values[size_t(l)];
          break;
        }
      worst = std::max(worst, std::abs(values[size_t(k)] - aji));
    }
  return worst / scale;
}

SparseSym& SparseSym::add_scaled(const SparseSym& other, double s) {
  for (size_t k = 0; k < values.size(); ++k) values[k] += s * other.values[k];
  return *this;
}

bool region_passes(Region r, RegionFilter f) {
  switch (f) {
    case RegionFilter::All:
      return true;
    case RegionFilter::Bulks:
      return r != Region::Neck;
    case RegionFilter::Neck:
      return r == Region::Neck;
    case RegionFilter::BulkLeft:
      return r == Region::BulkLeft;
    case RegionFilter::BulkRight:
      return r == Region::BulkRight;
  }
  return false;
}

namespace {

SparseSym pattern_from_mesh(const TriMesh& mesh) {
  const int n = mesh.vertex_count();
  std::vector<std::vector<int>> adj(size_t(n));
  for (int v = 0; v < n; ++v) adj[size_t(v)].push_back(v);
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      adj[size_t(t[size_t(e)])].push_back(t[size_t((e + 1) % 3)]);
      adj[size_t(t[size_t(e)])].push_back(t[size_t((e + 2) % 3)]);
    }
  SparseSym A;
  A.n = n;
  A.row_ptr.resize(size_t(n) + 1, 0);
  for (int v = 0; v < n; ++v) {
    auto& a = adj[size_t(v)];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    A.row_ptr[size_t(v) + 1] = A.row_ptr[size_t(v)] + int(a.size());
  }
  A.col_idx.reserve(size_t(A.row_ptr[size_t(n)]));
  for (int v = 0; v < n; ++v)
    A.col_idx.insert(A.col_idx.end(), adj[size_t(v)].begin(), adj[size_t(v)].end());
  A.values.assign(A.col_idx.size(), 0.0);
  return A;
}

void scatter(SparseSym& A, int i, int j, double v) {
  int lo = A.row_ptr[size_t(i)], hi = A.row_ptr[size_t(i) + 1];
  auto it = std::lower_bound(A.col_idx.begin() + lo, A.col_idx.begin() + hi, j);
  A.values[size_t(it - A.col_idx.begin())] += v;
}

enum class Kind { Stiffness, Mass };

// Element matrices are exact for P1 on affine triangles: one-point data for
// the constant gradients, the consistent 3x3 mass block for the product of
// two linear hats.
void assemble_into(SparseSym& A, const TriMesh& mesh, RegionFilter filter, Kind kind) {
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    if (!region_passes(mesh.region[size_t(t)], filter)) continue;
    const auto& tr = mesh.triangles[size_t(t)];
    const Point& p0 = mesh.vertices[size_t(tr[0])];
    const Point& p1 = mesh.vertices[size_t(tr[1])];
    const Point& p2 = mesh.vertices[size_t(tr[2])];
    const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x);
    const double area = 0.5 * det;
    if (kind == Kind::Stiffness) {
      // Gradients of the barycentric basis.
      const double gx[3] = {(p1.y - p2.y) / det, (p2.y - p0.y) / det,
                            (p0.y - p1.y) / det};
      const double gy[3] = {(p2.x - p1.x) / det, (p0.x - p2.x) / det,
                            (p1.x - p0.x) / det};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          scatter(A, tr[size_t(a)], tr[size_t(b)],
                  area * (gx[a] * gx[b] + gy[a] * gy[b]));
    } else {
      const double off = area / 12.0, diag = area / 6.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          scatter(A, tr[size_t(a)], tr[size_t(b)], a == b ? diag : off);
    }
  }
}

SparseSym assemble(const TriMesh& mesh, RegionFilter filter, Kind kind) {
  SparseSym A = pattern_from_mesh(mesh);
  if (filter != RegionFilter::All) {
    assemble_into(A, mesh, filter, kind);
    return A;
  }
  // The global matrix is the exact sum of the per-region matrices, so the
  // partition property holds to the last bit.
  SparseSym part = A;
  for (RegionFilter f :
       {RegionFilter::BulkLeft, RegionFilter::Neck, RegionFilter::BulkRight}) {
    std::fill(part.values.begin(), part.values.end(), 0.0);
    assemble_into(part, mesh, f, kind);
    A.add_scaled(part, 1.0);
  }
  return A;
}

}  // namespace

SparseSym assemble_stiffness(const TriMesh& mesh, RegionFilter filter) {
  return assemble(mesh, filter, Kind::Stiffness);
}

SparseSym assemble_mass(const TriMesh& mesh, RegionFilter filter) {
  return assemble(mesh, filter, Kind::Mass);
}

FeField interpolate(const TriMesh& mesh,
                    const std::function<double(double, double)>& f) {
  FeField u;
  u.mesh = &mesh;
  u.coeffs.resize(mesh.vertices.size());
  for (size_t v = 0; v < mesh.vertices.size(); ++v) {
    double val = f(mesh.vertices[v].x, mesh.vertices[v].y);
    if (!std::isfinite(val))
      throw NonFinite("interpolate: non-finite value at vertex " + std::to_string(v));
    u.coeffs[v] = val;
  }
  return u;
}

Norms norms(std::span<const double> u, const SparseSym& K_f, const SparseSym& M_f) {
  Norms out;
  out.l2_sq = M_f.inner(u, u);
  out.h1_semi_sq = K_f.inner(u, u);
  return out;
}

Norms norms(const FeField& u, RegionFilter filter) {
  SparseSym K = assemble_stiffness(*u.mesh, filter);
  SparseSym M = assemble_mass(*u.mesh, filter);
  return norms(u.coeffs, K, M);
}

}  // namespace dbs
