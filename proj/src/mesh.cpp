#include "dbs/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace dbs {

double TriMesh::triangle_area(int t) const {
  const auto& tr = triangles[size_t(t)];
  const Point& a = vertices[size_t(tr[0])];
  const Point& b = vertices[size_t(tr[1])];
  const Point& c = vertices[size_t(tr[2])];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

double TriMesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < triangle_count(); ++t) a += triangle_area(t);
  return a;
}

int TriMesh::edge_count() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e)
      edges.insert(std::minmax(t[size_t(e)], t[size_t((e + 1) % 3)]));
  return int(edges.size());
}

namespace {

using Key = std::pair<uint64_t, uint64_t>;

Key coord_key(double x, double y) {
  return {std::bit_cast<uint64_t>(x == 0.0 ? 0.0 : x),
          std::bit_cast<uint64_t>(y == 0.0 ? 0.0 : y)};
}

// Vertex pool with exact-bits deduplication. Shared coordinates must be
// computed once and reused so that glued interfaces dedup exactly.
struct Builder {
  TriMesh mesh;
  std::map<Key, int> pool;

  int vertex(double x, double y) {
    auto [it, fresh] = pool.try_emplace(coord_key(x, y), int(mesh.vertices.size()));
    if (fresh) mesh.vertices.push_back({x, y});
    return it->second;
  }
  void tri(int a, int b, int c, Region r) {
    mesh.triangles.push_back({a, b, c});
    mesh.region.push_back(r);
  }
  void bedge(int a, int b, EdgeMarker m) { mesh.boundary_edges.push_back({a, b, m}); }
};

// y-subdivision of a neck cross-section of height `height` into `layers`
// cells. The same expression is used by the bulks at the opening so the glue
// vertices are bitwise identical.
std::vector<double> column_ys(double height, int layers) {
  std::vector<double> ys(size_t(layers) + 1);
  for (int j = 0; j <= layers; ++j)
    ys[size_t(j)] = (double(j) / double(layers)) * height;
  ys[0] = 0.0;
  ys[size_t(layers)] = height;
  return ys;
}

struct BulkMesh {
  // Triangle soup in neck coordinates (left bulk, x <= 0).
  std::vector<Point> points;
  std::vector<std::array<int, 3>> tris;
  std::vector<std::pair<int, int>> boundary;  // ring edges
  std::vector<double> opening_ys;             // interface subdivision in [0, eps g(0)]
};

// --- structured tensor mesh for rectangle bulks -----------------------------

BulkMesh mesh_rectangle_bulk(const std::vector<Point>& outline, double h,
                             const std::vector<double>& opening) {
  double x_min = outline[0].x, y_min = outline[0].y, y_max = outline[0].y;
  for (const Point& p : outline) {
    x_min = std::min(x_min, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  const double W = -x_min, Hgt = y_max - y_min;
  const double open_h = opening.back();
  const double s_open = opening.size() > 1 ? opening[1] - opening[0] : open_h;

  int ny = std::max(1, int(std::ceil(Hgt / h)));
  double hy = Hgt / ny;
  std::vector<double> ylev;
  for (int j = 0; j <= ny; ++j) {
    double y = (j == 0) ? y_min : (j == ny ? y_max : y_min + j * hy);
    // Drop base levels that collide with the opening subdivision; the
    // interface vertex set inside [0, open_h] must be exactly `opening`.
    double margin = 0.45 * std::min(s_open, hy);
    if (y > -margin && y < open_h + margin) continue;
    ylev.push_back(y);
  }
  ylev.insert(ylev.end(), opening.begin(), opening.end());
  std::sort(ylev.begin(), ylev.end());

  int nx = std::max(1, int(std::ceil(W / h)));
  std::vector<double> xlev(size_t(nx) + 1);
  for (int i = 0; i <= nx; ++i) xlev[size_t(i)] = x_min + i * (W / nx);
  xlev.front() = x_min;
  xlev.back() = 0.0;

  BulkMesh bm;
  bm.opening_ys = opening;
  const int rows = int(ylev.size()) - 1;
  auto vid = [&](int i, int j) { return i * (rows + 1) + j; };
  for (int i = 0; i < nx + 1; ++i)
    for (int j = 0; j <= rows; ++j)
      bm.points.push_back({xlev[size_t(i)], ylev[size_t(j)]});
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < rows; ++j) {
      int bl = vid(i, j), br = vid(i + 1, j), tr = vid(i + 1, j + 1),
          tl = vid(i, j + 1);
      bm.tris.push_back({bl, br, tr});
      bm.tris.push_back({bl, tr, tl});
    }
  for (int i = 0; i < nx; ++i) {
    bm.boundary.emplace_back(vid(i, 0), vid(i + 1, 0));
    bm.boundary.emplace_back(vid(i, rows), vid(i + 1, rows));
  }
  for (int j = 0; j < rows; ++j) {
    bm.boundary.emplace_back(vid(0, j), vid(0, j + 1));
    bm.boundary.emplace_back(vid(nx, j), vid(nx, j + 1));
  }
  return bm;
}

// --- ear clipping + uniform refinement for polygon bulks --------------------

double tri_min_angle(const Point& a, const Point& b, const Point& c) {
  auto ang = [](const Point& p, const Point& q, const Point& r) {
    double ux = q.x - p.x, uy = q.y - p.y, vx = r.x - p.x, vy = r.y - p.y;
    double d = ux * vx + uy * vy, cr = ux * vy - uy * vx;
    return std::abs(std::atan2(cr, d));
  };
  return std::min({ang(a, b, c), ang(b, c, a), ang(c, a, b)});
}

double cross2(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Point>& pts) {
  std::vector<int> ring(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) ring[i] = int(i);
  std::vector<std::array<int, 3>> out;
  double scale2 = 0.0;
  for (const Point& p : pts) scale2 = std::max(scale2, p.x * p.x + p.y * p.y);
  const double area_eps = 1e-14 * std::max(scale2, 1.0);

  while (ring.size() > 3) {
    int best = -1;
    double best_quality = -1.0;
    const int n = int(ring.size());
    for (int i = 0; i < n; ++i) {
      const Point& a = pts[size_t(ring[size_t((i + n - 1) % n)])];
      const Point& b = pts[size_t(ring[size_t(i)])];
      const Point& c = pts[size_t(ring[size_t((i + 1) % n)])];
      double ar = cross2(a, b, c);
      if (ar <= area_eps) continue;  // reflex or collinear, not clippable
      bool blocked = false;
      for (int j = 0; j < n && !blocked; ++j) {
        if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
        const Point& p = pts[size_t(ring[size_t(j)])];
        if (cross2(a, b, p) >= 0 && cross2(b, c, p) >= 0 && cross2(c, a, p) >= 0)
          blocked = true;
      }
      if (blocked) continue;
      double q = tri_min_angle(a, b, c);
      if (q > best_quality) {
        best_quality = q;
        best = i;
      }
    }
    if (best < 0) throw MeshFailure("ear clipping failed: no clippable ear");
    const int n2 = int(ring.size());
    out.push_back({ring[size_t((best + n2 - 1) % n2)], ring[size_t(best)],
                   ring[size_t((best + 1) % n2)]});
    ring.erase(ring.begin() + best);
  }
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

BulkMesh mesh_polygon_bulk(std::vector<Point> poly, double h,
                           const std::vector<double>& opening) {
  const double open_h = opening.back();
  for (Point& p : poly)
    if (std::abs(p.x) <= 1e-12) p.x = 0.0;  // snap the attachment edge
  for (const Point& p : poly)
    if (p.x == 0.0 && 0.0 < p.y && p.y < open_h &&
        std::find(opening.begin(), opening.end(), p.y) == opening.end())
      throw MeshFailure("polygon vertex inside the neck opening segment");

  // Opening points become polygon vertices so the interface is conforming.
  for (double y : opening) {
    Point p{0.0, y};
    bool present = false;
    for (const Point& q : poly) present |= (q == p);
    if (present) continue;
    bool placed = false;
    for (size_t i = 0; i < poly.size() && !placed; ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % poly.size()];
      if (a.x == 0.0 && b.x == 0.0 && std::min(a.y, b.y) < y &&
          y < std::max(a.y, b.y)) {
        poly.insert(poly.begin() + long(i) + 1, p);
        placed = true;
      }
    }
    if (!placed) throw MeshFailure("opening point not on the attachment edge");
  }

  BulkMesh bm;
  bm.points = poly;
  bm.tris = ear_clip(poly);
  std::set<std::pair<int, int>> boundary;
  for (size_t i = 0; i < poly.size(); ++i)
    boundary.insert(std::minmax(int(i), int((i + 1) % poly.size())));

  // Conforming longest-edge bisection until every edge is <= h. Unlike a
  // uniform split this never touches the already-short opening edges, so the
  // neck subdivision stays at neck_layers.
  auto edge_len = [&](int a, int b) {
    const Point& p = bm.points[size_t(a)];
    const Point& q = bm.points[size_t(b)];
    return std::hypot(q.x - p.x, q.y - p.y);
  };
  for (int pass = 0; pass < 64; ++pass) {
    std::set<std::pair<int, int>> to_split;
    for (const auto& t : bm.tris) {
      double best = -1.0;
      std::pair<int, int> lngst{0, 0};
      for (int e = 0; e < 3; ++e) {
        int a = t[size_t(e)], b = t[size_t((e + 1) % 3)];
        double len = edge_len(a, b);
        if (len > best) {
          best = len;
          lngst = std::minmax(a, b);
        }
      }
      if (best > h) to_split.insert(lngst);
    }
    if (to_split.empty()) break;
    if (pass == 63) throw MeshFailure("bisection cap reached before h_bulk");
    std::map<std::pair<int, int>, int> mid;
    for (const auto& [a, b] : to_split) {
      const Point& p = bm.points[size_t(a)];
      const Point& q = bm.points[size_t(b)];
      bm.points.push_back({0.5 * (p.x + q.x), 0.5 * (p.y + q.y)});
      mid.emplace(std::minmax(a, b), int(bm.points.size()) - 1);
    }
    std::vector<std::array<int, 3>> next;
    next.reserve(bm.tris.size() + 2 * to_split.size());
    for (const auto& t : bm.tris) {
      // Red-green split: every edge with a registered midpoint must be split
      // to stay conforming with the neighbor across it.
      int m[3];
      int count = 0;
      for (int e = 0; e < 3; ++e) {
        auto it = mid.find(std::minmax(t[size_t(e)], t[size_t((e + 1) % 3)]));
        m[e] = (it == mid.end()) ? -1 : it->second;
        if (m[e] >= 0) ++count;
      }
      if (count == 0) {
        next.push_back(t);
        continue;
      }
      if (count == 3) {
        next.push_back({t[0], m[0], m[2]});
        next.push_back({t[1], m[1], m[0]});
        next.push_back({t[2], m[2], m[1]});
        next.push_back({m[0], m[1], m[2]});
        continue;
      }
      // Rotate so that edge (v0,v1) is split; for two splits, (v1,v2) too.
      int r = 0;
      if (count == 1)
        while (m[r] < 0) ++r;
      else
        while (!(m[r] >= 0 && m[(r + 1) % 3] >= 0)) ++r;
      int v0 = t[size_t(r)], v1 = t[size_t((r + 1) % 3)], v2 = t[size_t((r + 2) % 3)];
      int m01 = m[r], m12 = m[(r + 1) % 3];
      if (count == 1) {
        next.push_back({v0, m01, v2});
        next.push_back({m01, v1, v2});
      } else {
        next.push_back({v1, m12, m01});
        next.push_back({v0, m01, v2});
        next.push_back({m01, m12, v2});
      }
    }
    bm.tris = std::move(next);
    std::set<std::pair<int, int>> nb;
    for (const auto& [a, b] : boundary) {
      auto it = mid.find(std::minmax(a, b));
      if (it == mid.end()) {
        nb.insert({a, b});
      } else {
        nb.insert(std::minmax(a, it->second));
        nb.insert(std::minmax(it->second, b));
      }
    }
    boundary = std::move(nb);
  }
  // Boundary vertices created on the attachment edge within the opening can
  // only come from splitting opening edges; record them for the neck.
  bm.opening_ys = opening;
  for (const auto& [a, b] : boundary)
    for (int v : {a, b}) {
      const Point& p = bm.points[size_t(v)];
      if (p.x == 0.0 && 0.0 <= p.y && p.y <= open_h &&
          std::find(bm.opening_ys.begin(), bm.opening_ys.end(), p.y) ==
              bm.opening_ys.end())
        bm.opening_ys.push_back(p.y);
    }
  std::sort(bm.opening_ys.begin(), bm.opening_ys.end());

  // Laplacian smoothing of interior vertices, boundary fixed. A move is kept
  // only if every incident triangle stays positively oriented.
  std::vector<bool> on_boundary(bm.points.size(), false);
  for (const auto& [a, b] : boundary)
    on_boundary[size_t(a)] = on_boundary[size_t(b)] = true;
  std::vector<std::vector<int>> v2t(bm.points.size());
  for (size_t t = 0; t < bm.tris.size(); ++t)
    for (int v : bm.tris[t]) v2t[size_t(v)].push_back(int(t));
  std::vector<std::set<int>> nbr(bm.points.size());
  for (const auto& t : bm.tris)
    for (int e = 0; e < 3; ++e) {
      nbr[size_t(t[size_t(e)])].insert(t[size_t((e + 1) % 3)]);
      nbr[size_t(t[size_t(e)])].insert(t[size_t((e + 2) % 3)]);
    }
  for (int it = 0; it < 10; ++it) {
    for (size_t v = 0; v < bm.points.size(); ++v) {
      if (on_boundary[v] || nbr[v].empty()) continue;
      Point avg{0, 0};
      for (int u : nbr[v]) {
        avg.x += bm.points[size_t(u)].x;
        avg.y += bm.points[size_t(u)].y;
      }
      avg.x /= double(nbr[v].size());
      avg.y /= double(nbr[v].size());
      Point old = bm.points[v];
      bm.points[v] = avg;
      bool ok = true;
      for (int t : v2t[v]) {
        const auto& tr = bm.tris[size_t(t)];
        if (cross2(bm.points[size_t(tr[0])], bm.points[size_t(tr[1])],
                   bm.points[size_t(tr[2])]) <= 0.0) {
          ok = false;
          break;
        }
      }
      if (!ok) bm.points[v] = old;
    }
  }

  bm.boundary.assign(boundary.begin(), boundary.end());
  return bm;
}

}  // namespace

// ---------------------------------------------------------------------------

TriMesh generate(const DumbbellSpec& spec, double h_bulk, int neck_layers) {
  require_valid(spec);
  if (h_bulk <= 0.0) throw MeshFailure("h_bulk must be positive");
  if (neck_layers < 2) throw MeshFailure("neck_layers must be at least 2");

  const NeckProfile& g = spec.neck;
  const double L = g.length();
  const double axis = L / 2.0;
  const double eps = spec.epsilon;
  const double g0 = g.samples().front();

  std::vector<double> opening = column_ys(eps * g0, neck_layers);

  BulkMesh bulk;
  if (spec.left.kind == BulkKind::Rectangle)
    bulk = mesh_rectangle_bulk(spec.left.outline(), h_bulk, opening);
  else
    bulk = mesh_polygon_bulk(spec.left.outline(), h_bulk, opening);
  const int layers_eff = int(bulk.opening_ys.size()) - 1;

  Builder bld;
  bld.mesh.axis_x = axis;

  // Left bulk.
  std::vector<int> bulk_vid(bulk.points.size());
  for (size_t i = 0; i < bulk.points.size(); ++i)
    bulk_vid[i] = bld.vertex(bulk.points[i].x, bulk.points[i].y);
  for (const auto& t : bulk.tris)
    bld.tri(bulk_vid[size_t(t[0])], bulk_vid[size_t(t[1])], bulk_vid[size_t(t[2])],
            Region::BulkLeft);
  const double open_h = eps * g0;
  for (const auto& [a, b] : bulk.boundary) {
    const Point& pa = bulk.points[size_t(a)];
    const Point& pb = bulk.points[size_t(b)];
    bool on_axis_line = pa.x == 0.0 && pb.x == 0.0;
    if (on_axis_line && std::min(pa.y, pb.y) >= 0.0 &&
        std::max(pa.y, pb.y) <= open_h)
      continue;  // glued to the neck, interior after merge
    bld.bedge(bulk_vid[size_t(a)], bulk_vid[size_t(b)],
              on_axis_line ? EdgeMarker::InterfaceLeft : EdgeMarker::BulkBoundary);
  }

  // Left half of the neck: tensor columns, uniform in x, vertical subdivision
  // scaled by eps*g per column. Column 0 reuses the bulk's interface set.
  const int nx = 2 * std::max(1, int(std::ceil(L / (2.0 * h_bulk))));
  std::vector<double> xlev(size_t(nx) / 2 + 1);
  for (int i = 0; i <= nx / 2; ++i) xlev[size_t(i)] = i * (L / nx);
  xlev.front() = 0.0;
  xlev.back() = axis;

  std::vector<double> frac(size_t(layers_eff) + 1);  // opening subdivision in [0,1]
  for (int j = 0; j <= layers_eff; ++j)
    frac[size_t(j)] = bulk.opening_ys[size_t(j)] / open_h;
  frac.front() = 0.0;
  frac.back() = 1.0;

  std::vector<std::vector<int>> col(size_t(nx) / 2 + 1);
  for (int i = 0; i <= nx / 2; ++i) {
    col[size_t(i)].resize(size_t(layers_eff) + 1);
    const double hi = eps * g(xlev[size_t(i)]);
    for (int j = 0; j <= layers_eff; ++j) {
      double y = (i == 0) ? bulk.opening_ys[size_t(j)] : frac[size_t(j)] * hi;
      col[size_t(i)][size_t(j)] = bld.vertex(xlev[size_t(i)], y);
    }
  }
  for (int i = 0; i < nx / 2; ++i) {
    for (int j = 0; j < layers_eff; ++j) {
      int bl = col[size_t(i)][size_t(j)], br = col[size_t(i) + 1][size_t(j)];
      int tr = col[size_t(i) + 1][size_t(j) + 1], tl = col[size_t(i)][size_t(j) + 1];
      bld.tri(bl, br, tr, Region::Neck);
      bld.tri(bl, tr, tl, Region::Neck);
    }
    bld.bedge(col[size_t(i)][0], col[size_t(i) + 1][0], EdgeMarker::NeckBottom);
    bld.bedge(col[size_t(i)].back(), col[size_t(i) + 1].back(), EdgeMarker::NeckTop);
  }

  // Mirror. Right-side coordinates are produced once via x -> L - x, so each
  // pair is exact; axis vertices map to themselves.
  const int n_left = bld.mesh.vertex_count();
  const int t_left = bld.mesh.triangle_count();
  const int e_left = int(bld.mesh.boundary_edges.size());
  std::vector<int> partner(size_t(n_left));
  for (int v = 0; v < n_left; ++v) {
    const Point p = bld.mesh.vertices[size_t(v)];
    partner[size_t(v)] = (p.x == axis) ? v : bld.vertex(L - p.x, p.y);
  }
  for (int t = 0; t < t_left; ++t) {
    auto tr = bld.mesh.triangles[size_t(t)];
    Region r = bld.mesh.region[size_t(t)];
    Region rm = r == Region::BulkLeft ? Region::BulkRight : r;
    bld.tri(partner[size_t(tr[0])], partner[size_t(tr[2])], partner[size_t(tr[1])], rm);
  }
  for (int e = 0; e < e_left; ++e) {
    BoundaryEdge be = bld.mesh.boundary_edges[size_t(e)];
    EdgeMarker m = be.marker == EdgeMarker::InterfaceLeft ? EdgeMarker::InterfaceRight
                                                          : be.marker;
    bld.bedge(partner[size_t(be.b)], partner[size_t(be.a)], m);
  }

  TriMesh mesh = std::move(bld.mesh);
  mesh.mirror.resize(mesh.vertices.size());
  for (int v = 0; v < n_left; ++v) {
    mesh.mirror[size_t(v)] = partner[size_t(v)];
    mesh.mirror[size_t(partner[size_t(v)])] = v;
  }

  auto bad = check_mesh(mesh);
  if (!bad.empty()) throw MeshFailure("generated mesh inconsistent: " + bad.front());
  return mesh;
}

// ---------------------------------------------------------------------------

TriMesh refine_uniform(const TriMesh& mesh) {
  TriMesh out;
  out.vertices = mesh.vertices;
  out.mirror = mesh.mirror;
  out.axis_x = mesh.axis_x;
  const double L = 2.0 * mesh.axis_x;

  std::map<std::pair<int, int>, int> mid;
  auto mirror_edge = [&](std::pair<int, int> e) {
    return std::minmax(mesh.mirror[size_t(e.first)], mesh.mirror[size_t(e.second)]);
  };
  auto midpoint = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    const Point& p = mesh.vertices[size_t(a)];
    const Point& q = mesh.vertices[size_t(b)];
    Point m{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
    auto mkey = mirror_edge(key);
    int v = int(out.vertices.size());
    if (mkey == key) {
      // Self-mirrored edge: its midpoint lies exactly on the axis.
      if (mesh.mirror[size_t(a)] != a || mesh.mirror[size_t(b)] != b)
        m.x = mesh.axis_x;
      out.vertices.push_back(m);
      out.mirror.push_back(v);
      mid.emplace(key, v);
    } else {
      out.vertices.push_back(m);
      out.vertices.push_back({L - m.x, m.y});
      out.mirror.push_back(v + 1);
      out.mirror.push_back(v);
      mid.emplace(key, v);
      mid.emplace(mkey, v + 1);
    }
    return v;
  };

  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tr = mesh.triangles[t];
    Region r = mesh.region[t];
    int ab = midpoint(tr[0], tr[1]);
    int bc = midpoint(tr[1], tr[2]);
    int ca = midpoint(tr[2], tr[0]);
    out.triangles.push_back({tr[0], ab, ca});
    out.triangles.push_back({tr[1], bc, ab});
    out.triangles.push_back({tr[2], ca, bc});
    out.triangles.push_back({ab, bc, ca});
    out.region.insert(out.region.end(), 4, r);
  }
  for (const BoundaryEdge& be : mesh.boundary_edges) {
    int m = mid.at(std::minmax(be.a, be.b));
    out.boundary_edges.push_back({be.a, m, be.marker});
    out.boundary_edges.push_back({m, be.b, be.marker});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_mesh(const TriMesh& mesh) {
  std::vector<std::string> bad;
  const int nv = mesh.vertex_count();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    for (int v : mesh.triangles[size_t(t)])
      if (v < 0 || v >= nv) return {"triangle vertex index out of range"};
    if (mesh.triangle_area(t) <= 0.0) {
      bad.push_back("triangle " + std::to_string(t) + " has non-positive area");
      break;
    }
  }

  // Conformity: interior edges are shared by exactly two triangles with
  // opposite orientation; boundary edges by exactly one.
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e)
      ++count[std::minmax(t[size_t(e)], t[size_t((e + 1) % 3)])];
  std::set<std::pair<int, int>> listed;
  for (const BoundaryEdge& be : mesh.boundary_edges)
    listed.insert(std::minmax(be.a, be.b));
  for (const auto& [e, c] : count) {
    if (c > 2) {
      bad.push_back("edge shared by more than two triangles");
      break;
    }
    if (c == 1 && !listed.count(e)) {
      bad.push_back("boundary edge missing from the marker list");
      break;
    }
    if (c == 2 && listed.count(e)) {
      bad.push_back("interior edge listed as boundary");
      break;
    }
  }

  // Euler characteristic of a simply connected surface mesh.
  int E = int(count.size());
  if (nv - E + mesh.triangle_count() != 1)
    bad.push_back("Euler check V - E + T = 1 failed");

  if (int(mesh.mirror.size()) == nv && nv > 0) {
    for (int v = 0; v < nv; ++v) {
      int w = mesh.mirror[size_t(v)];
      if (w < 0 || w >= nv || mesh.mirror[size_t(w)] != v) {
        bad.push_back("mirror is not an involution");
        break;
      }
      const Point& p = mesh.vertices[size_t(v)];
      const Point& q = mesh.vertices[size_t(w)];
      if (p.x < mesh.axis_x) {
        if (q.x != 2.0 * mesh.axis_x - p.x || q.y != p.y) {
          bad.push_back("mirrored coordinates not exact");
          break;
        }
      } else if (v == w && p.x != mesh.axis_x) {
        bad.push_back("fixed mirror vertex off the axis");
        break;
      }
    }
    std::set<std::array<int, 4>> tris;  // sorted vertices + region
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
      auto v = mesh.triangles[t];
      std::sort(v.begin(), v.end());
      tris.insert({v[0], v[1], v[2], int(mesh.region[t])});
    }
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
      auto tr = mesh.triangles[t];
      std::array<int, 3> m{mesh.mirror[size_t(tr[0])], mesh.mirror[size_t(tr[1])],
                           mesh.mirror[size_t(tr[2])]};
      std::sort(m.begin(), m.end());
      Region r = mesh.region[t];
      Region rm = r == Region::BulkLeft    ? Region::BulkRight
                  : r == Region::BulkRight ? Region::BulkLeft
                                           : Region::Neck;
      if (!tris.count({m[0], m[1], m[2], int(rm)})) {
        bad.push_back("mirror does not map triangles to triangles");
        break;
      }
    }
    std::set<std::array<int, 3>> bset;
    for (const BoundaryEdge& be : mesh.boundary_edges) {
      auto e = std::minmax(be.a, be.b);
      bset.insert({e.first, e.second, int(be.marker)});
    }
    for (const BoundaryEdge& be : mesh.boundary_edges) {
      auto e = std::minmax(mesh.mirror[size_t(be.a)], mesh.mirror[size_t(be.b)]);
      EdgeMarker m = be.marker == EdgeMarker::InterfaceLeft  ? EdgeMarker::InterfaceRight
                     : be.marker == EdgeMarker::InterfaceRight ? EdgeMarker::InterfaceLeft
                                                               : be.marker;
      if (!bset.count({e.first, e.second, int(m)})) {
        bad.push_back("mirror does not preserve boundary markers");
        break;
      }
    }
  } else if (nv > 0) {
    bad.push_back("mirror permutation missing");
  }
  return bad;
}

// ---------------------------------------------------------------------------
// File I/O: "dbmesh 1" / "V E T" / vertices, triangles, boundary edges.

void write_mesh(const TriMesh& mesh, std::ostream& os) {
  os << "dbmesh 1\n";
  os << mesh.vertex_count() << ' ' << mesh.boundary_edges.size() << ' '
     << mesh.triangle_count() << '\n';
  char buf[64];
  for (const Point& p : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    os << buf;
  }
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tr = mesh.triangles[t];
    os << tr[0] << ' ' << tr[1] << ' ' << tr[2] << ' ' << int(mesh.region[t])
       << '\n';
  }
  for (const BoundaryEdge& be : mesh.boundary_edges)
    os << be.a << ' ' << be.b << ' ' << int(be.marker) << '\n';
}

namespace {

// Tolerant mirror reconstruction; file coordinates of generated meshes are
// exact mirror pairs, so matching is unambiguous.
void reconstruct_mirror(TriMesh& mesh) {
  const int nv = mesh.vertex_count();
  mesh.mirror.assign(size_t(nv), -1);
  if (nv == 0) return;
  double x_min = mesh.vertices[0].x, x_max = mesh.vertices[0].x;
  for (const Point& p : mesh.vertices) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
  }
  mesh.axis_x = 0.5 * (x_min + x_max);
  const double L = x_min + x_max;
  const double tol = 1e-9 * std::max(1.0, x_max - x_min);
  std::map<Key, int> exact;
  for (int v = 0; v < nv; ++v)
    exact[coord_key(mesh.vertices[size_t(v)].x, mesh.vertices[size_t(v)].y)] = v;
  std::vector<std::pair<std::pair<double, double>, int>> sorted(size_t(nv));
  for (int v = 0; v < nv; ++v)
    sorted[size_t(v)] = {{mesh.vertices[size_t(v)].y, mesh.vertices[size_t(v)].x}, v};
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < nv; ++v) {
    const Point p = mesh.vertices[size_t(v)];
    double tx = L - p.x;
    auto it = exact.find(coord_key(tx, p.y));
    if (it != exact.end()) {
      mesh.mirror[size_t(v)] = it->second;
      continue;
    }
    auto lo = std::lower_bound(sorted.begin(), sorted.end(),
                               std::make_pair(std::make_pair(p.y - tol, tx - tol), -1));
    int found = -1;
    for (auto j = lo; j != sorted.end() && j->first.first <= p.y + tol; ++j)
      if (std::abs(j->first.second - tx) <= tol) {
        found = j->second;
        break;
      }
    if (found < 0) {
      mesh.mirror.clear();  // not a symmetric mesh
      return;
    }
    mesh.mirror[size_t(v)] = found;
  }
  // A fixed vertex sits exactly on the axis; prefer its coordinate over the
  // bounding-box estimate so downstream bitwise checks hold.
  for (int v = 0; v < nv; ++v)
    if (mesh.mirror[size_t(v)] == v) {
      mesh.axis_x = mesh.vertices[size_t(v)].x;
      break;
    }
}

}  // namespace

TriMesh read_mesh(std::istream& is) {
  auto next_line = [&is](int& lineno) {
    std::string line;
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return line;
    }
    return std::string();
  };
  int lineno = 0;
  std::string header = next_line(lineno);
  if (header != "dbmesh 1") throw ParseError(lineno ? lineno : 1, "expected 'dbmesh 1' header");
  std::string counts = next_line(lineno);
  std::istringstream cs(counts);
  long nv = -1, ne = -1, nt = -1;
  if (!(cs >> nv >> ne >> nt) || nv < 0 || ne < 0 || nt < 0)
    throw ParseError(lineno, "expected counts 'V E T'");

  TriMesh mesh;
  mesh.vertices.reserve(size_t(nv));
  for (long i = 0; i < nv; ++i) {
    std::string line = next_line(lineno);
    if (line.empty()) throw ParseError(lineno, "unexpected end of vertex list");
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x >> y)) throw ParseError(lineno, "malformed vertex line");
    mesh.vertices.push_back({x, y});
  }
  for (long i = 0; i < nt; ++i) {
    std::string line = next_line(lineno);
    if (line.empty()) throw ParseError(lineno, "unexpected end of triangle list");
    std::istringstream ls(line);
    long a, b, c, r;
    if (!(ls >> a >> b >> c >> r)) throw ParseError(lineno, "malformed triangle line");
    if (a < 0 || a >= nv || b < 0 || b >= nv || c < 0 || c >= nv)
      throw ParseError(lineno, "triangle vertex index out of range");
    if (r < 0 || r > 2) throw ParseError(lineno, "unknown region tag");
    mesh.triangles.push_back({int(a), int(b), int(c)});
    mesh.region.push_back(Region(r));
  }
  for (long i = 0; i < ne; ++i) {
    std::string line = next_line(lineno);
    if (line.empty()) throw ParseError(lineno, "unexpected end of edge list");
    std::istringstream ls(line);
    long a, b, m;
    if (!(ls >> a >> b >> m)) throw ParseError(lineno, "malformed edge line");
    if (a < 0 || a >= nv || b < 0 || b >= nv)
      throw ParseError(lineno, "edge vertex index out of range");
    if (m < 0 || m > 4) throw ParseError(lineno, "unknown edge marker");
    mesh.boundary_edges.push_back({int(a), int(b), EdgeMarker(m)});
  }
  if (!next_line(lineno).empty()) throw ParseError(lineno, "trailing content after edge list");
  reconstruct_mirror(mesh);
  return mesh;
}

bool structurally_equal(const TriMesh& a, const TriMesh& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (size_t i = 0; i < a.vertices.size(); ++i)
    if (!(a.vertices[i] == b.vertices[i])) return false;
  if (a.triangles != b.triangles || a.region != b.region) return false;
  if (a.boundary_edges.size() != b.boundary_edges.size()) return false;
  for (size_t i = 0; i < a.boundary_edges.size(); ++i) {
    const auto& x = a.boundary_edges[i];
    const auto& y = b.boundary_edges[i];
    if (x.a != y.a || x.b != y.b || x.marker != y.marker) return false;
  }
  if (a.mirror != b.mirror) return false;
  return std::abs(a.axis_x - b.axis_x) <= 1e-12 * (1.0 + std::abs(a.axis_x));
}

}  // namespace dbs
