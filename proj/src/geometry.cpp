#include "dbs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dbs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double polygon_area(const std::vector<Point>& poly) {
  double twice = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

namespace {

int orient(const Point& a, const Point& b, const Point& c) {
  double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return orient(a, b, p) == 0 && std::min(a.x, b.x) <= p.x &&
         p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool polygon_is_simple(const std::vector<Point>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j],
                             poly[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// NeckProfile

NeckProfile NeckProfile::constant(double value, double length) {
  NeckProfile p;
  p.kind_ = ProfileKind::Constant;
  p.samples_ = {value, value};
  p.length_ = length;
  return p;
}

NeckProfile NeckProfile::piecewise_linear(std::vector<double> samples,
                                          double length) {
  NeckProfile p;
  p.kind_ = ProfileKind::PiecewiseLinear;
  p.samples_ = std::move(samples);
  p.length_ = length;
  return p;
}

double NeckProfile::operator()(double x) const {
  const size_t m = samples_.size();
  if (m < 2) return samples_.empty() ? 0.0 : samples_[0];
  if (x <= 0.0) return samples_.front();
  if (x >= length_) return samples_.back();
  double t = x / length_ * double(m - 1);
  size_t i = std::min(size_t(t), m - 2);
  double f = t - double(i);
  return samples_[i] * (1.0 - f) + samples_[i + 1] * f;
}

double NeckProfile::integral() const { return integral_to(length_); }

double NeckProfile::integral_to(double x) const {
  const size_t m = samples_.size();
  if (m < 2) return 0.0;
  x = std::clamp(x, 0.0, length_);
  const double h = length_ / double(m - 1);
  double acc = 0.0;
  for (size_t i = 0; i + 1 < m; ++i) {
    double xl = double(i) * h;
    if (xl >= x) break;
    double xr = std::min(double(i + 1) * h, x);
    double gl = (*this)(xl), gr = (*this)(xr);
    acc += 0.5 * (gl + gr) * (xr - xl);
  }
  return acc;
}

double NeckProfile::min_value() const {
  return *std::min_element(samples_.begin(), samples_.end());
}

double NeckProfile::max_value() const {
  return *std::max_element(samples_.begin(), samples_.end());
}

double NeckProfile::symmetry_defect() const {
  double d = 0.0;
  const size_t m = samples_.size();
  for (size_t i = 0; i < m; ++i)
    d = std::max(d, std::abs(samples_[i] - samples_[m - 1 - i]));
  return d;
}

// ---------------------------------------------------------------------------
// BulkDomain

BulkDomain BulkDomain::rectangle(double width, double height, AttachEdge edge,
                                 double offset, double ell) {
  BulkDomain b;
  b.kind = BulkKind::Rectangle;
  b.rect_width = width;
  b.rect_height = height;
  b.attach_edge = edge;
  b.attach_offset = offset;
  b.flat_halfwidth = ell;
  return b;
}

BulkDomain BulkDomain::simple_polygon(std::vector<Point> ccw_vertices,
                                      double ell) {
  BulkDomain b;
  b.kind = BulkKind::SimplePolygon;
  b.polygon = std::move(ccw_vertices);
  b.flat_halfwidth = ell;
  return b;
}

std::vector<Point> BulkDomain::outline() const {
  if (kind == BulkKind::SimplePolygon) return polygon;
  const double M = rect_width, H = rect_height, o = attach_offset;
  // Local ccw rectangle [0,M]x[0,H]; map the chosen edge onto the vertical
  // line x = 0 with outward normal +x and p0 at the origin. The maps are
  // exact 90-degree rotations plus a translation.
  std::vector<Point> local = {{0, 0}, {M, 0}, {M, H}, {0, H}};
  Point s;           // p0 in local coordinates
  int rot = 0;       // number of +90 degree turns applied to local coords
  switch (attach_edge) {
    case AttachEdge::Right:
      s = {M, o};
      rot = 0;
      break;
    case AttachEdge::Top:
      s = {M - o, H};
      rot = 3;  // -90 degrees
      break;
    case AttachEdge::Left:
      s = {0, H - o};
      rot = 2;
      break;
    case AttachEdge::Bottom:
      s = {o, 0};
      rot = 1;
      break;
  }
  std::vector<Point> out;
  out.reserve(4);
  for (const Point& c : local) {
    double x = c.x - s.x, y = c.y - s.y;
    for (int r = 0; r < rot; ++r) {
      double nx = -y, ny = x;  // +90 degrees, exact
      x = nx;
      y = ny;
    }
    out.push_back({x, y});
  }
  return out;
}

double BulkDomain::area() const { return polygon_area(outline()); }

// ---------------------------------------------------------------------------
// Validation

MirrorMap mirror_map(const DumbbellSpec& spec) {
  return MirrorMap{spec.neck.length()};
}

namespace {

// Coverage of [-ell, ell] on the line x = 0 by boundary edges of `poly`.
bool flat_segment_covered(const std::vector<Point>& poly, double ell) {
  constexpr double kTol = 1e-12;
  std::vector<std::pair<double, double>> spans;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    if (std::abs(a.x) <= kTol && std::abs(b.x) <= kTol)
      spans.emplace_back(std::min(a.y, b.y), std::max(a.y, b.y));
  }
  std::sort(spans.begin(), spans.end());
  double covered_to = -ell;
  for (auto& [lo, hi] : spans) {
    if (lo > covered_to + kTol) break;
    covered_to = std::max(covered_to, hi);
  }
  return covered_to >= ell - kTol;
}

}  // namespace

std::vector<std::string> validate(const DumbbellSpec& spec) {
  std::vector<std::string> bad;
  const NeckProfile& g = spec.neck;

  if (g.samples().size() < 2) bad.push_back("g must have at least 2 samples");
  if (g.length() <= 0.0) bad.push_back("neck length must be positive");
  if (!g.samples().empty()) {
    if (g.min_value() <= 0.0) bad.push_back("g must be strictly positive");
    if (g.max_value() > 1.0) bad.push_back("g must satisfy max(g) <= 1");
    if (g.symmetry_defect() > 1e-12)
      bad.push_back("g must be symmetric: g(x) = g(L-x), defect " +
                    fmt(g.symmetry_defect()));
  }
  if (!(spec.epsilon > 0.0 && spec.epsilon <= 1.0))
    bad.push_back("epsilon must lie in (0, 1]");

  const BulkDomain& bulk = spec.left;
  const double ell = bulk.flat_halfwidth;
  if (ell <= 0.0) bad.push_back("flat segment half-length ell must be positive");

  bool geometry_usable = true;
  if (bulk.kind == BulkKind::Rectangle) {
    if (bulk.rect_width <= 0.0 || bulk.rect_height <= 0.0) {
      bad.push_back("rectangle dimensions must be positive");
      geometry_usable = false;
    }
    double edge_len = (bulk.attach_edge == AttachEdge::Right ||
                       bulk.attach_edge == AttachEdge::Left)
                          ? bulk.rect_height
                          : bulk.rect_width;
    if (!(bulk.attach_offset > 0.0 && bulk.attach_offset < edge_len)) {
      bad.push_back("attachment offset must lie strictly inside the edge");
      geometry_usable = false;
    } else if (ell > 0.0 && (bulk.attach_offset < ell ||
                             edge_len - bulk.attach_offset < ell)) {
      bad.push_back("flat segment of half-length " + fmt(ell) +
                    " extends beyond the attachment edge");
    }
  } else {
    if (bulk.polygon.size() < 3) {
      bad.push_back("polygon needs at least 3 vertices");
      geometry_usable = false;
    }
  }

  if (geometry_usable) {
    std::vector<Point> poly = bulk.outline();
    double area = polygon_area(poly);
    if (area <= 0.0)
      bad.push_back("polygon must be counterclockwise with positive area");
    if (!polygon_is_simple(poly))
      bad.push_back("polygon must be simple (no self-intersections)");
    for (const Point& p : poly)
      if (p.x > 1e-12) {
        bad.push_back("bulk must lie in the half-plane x <= 0");
        break;
      }
    if (ell > 0.0 && !flat_segment_covered(poly, ell))
      bad.push_back(
          "boundary must contain a flat vertical segment of half-length " +
          fmt(ell) + " centered at p0");
  }

  if (!g.samples().empty() && ell > 0.0 && spec.epsilon > 0.0) {
    double open0 = spec.epsilon * g.samples().front();
    double openL = spec.epsilon * g.samples().back();
    if (open0 >= ell)
      bad.push_back("neck opening " + fmt(open0) +
                    " exceeds flat segment half-length " + fmt(ell));
    else if (openL >= ell)
      bad.push_back("neck opening " + fmt(openL) +
                    " exceeds flat segment half-length " + fmt(ell));
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Boundary polyline

namespace {

// Insert p on the outline edge that contains it (if not already a vertex);
// returns its index.
size_t insert_on_boundary(std::vector<Point>& poly, const Point& p) {
  for (size_t i = 0; i < poly.size(); ++i)
    if (poly[i] == p) return i;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    if (on_segment(a, b, p)) {
      poly.insert(poly.begin() + long(i) + 1, p);
      return i + 1;
    }
  }
  throw InvalidSpec("attachment point not on bulk boundary");
}

}  // namespace

std::vector<std::vector<Point>> boundary_polyline(const DumbbellSpec& spec,
                                                  double epsilon) {
  {
    auto v = validate(spec);
    if (!v.empty()) throw InvalidSpec(v.front());
  }
  if (epsilon < 0.0) throw InvalidSpec("epsilon must be nonnegative");
  const NeckProfile& g = spec.neck;
  const double L = g.length();
  if (epsilon * g.samples().front() >= spec.left.flat_halfwidth)
    throw InvalidSpec("neck opening exceeds flat segment half-length");

  std::vector<Point> left = spec.left.outline();
  if (epsilon == 0.0) {
    std::vector<Point> right(left.size());
    for (size_t i = 0; i < left.size(); ++i) {
      const Point& q = left[left.size() - 1 - i];
      right[i] = {L - q.x, q.y};  // reversed to stay ccw
    }
    return {left, right};
  }

  const double open_h = epsilon * g.samples().front();
  const Point a{0.0, 0.0}, b{0.0, open_h};
  insert_on_boundary(left, a);
  insert_on_boundary(left, b);
  size_t ia = 0, ib = 0;
  for (size_t i = 0; i < left.size(); ++i) {
    if (left[i] == a) ia = i;
    if (left[i] == b) ib = i;
  }

  // Left bulk path from the neck's top-left corner ccw around to p0.
  std::vector<Point> left_path;
  for (size_t i = ib; i != ia; i = (i + 1) % left.size())
    left_path.push_back(left[i]);
  left_path.push_back(left[ia]);

  // Mirror image, reversed: runs from p1 ccw around the right bulk to the
  // neck's top-right corner. Coordinates are produced by the exact map
  // x -> L - x once, so the loop is symmetric by construction.
  std::vector<Point> right_path(left_path.size());
  for (size_t i = 0; i < left_path.size(); ++i) {
    const Point& q = left_path[left_path.size() - 1 - i];
    right_path[i] = {L - q.x, q.y};
  }

  // Neck top, sampled at the profile's sample abscissae, right to left.
  const auto& s = g.samples();
  const size_t m = s.size();
  std::vector<Point> top(m);
  for (size_t i = 0; i < m; ++i) {
    double x = double(i) * L / double(m - 1);
    if (2.0 * x > L) x = L - double(m - 1 - i) * L / double(m - 1);
    top[i] = {x, epsilon * s[i]};
  }

  std::vector<Point> loop;
  loop.push_back(a);
  loop.push_back({L, 0.0});
  for (size_t i = 1; i + 1 < right_path.size(); ++i) loop.push_back(right_path[i]);
  for (size_t i = m; i-- > 0;) loop.push_back(top[i]);
  for (size_t i = 1; i + 1 < left_path.size(); ++i) loop.push_back(left_path[i]);
  return {loop};
}

}  // namespace dbs
