// Symmetric dumbbell geometry: two mirror-image bulk domains joined by a thin
// neck of height eps*g(x) over [0, L]. Coordinates: the neck occupies
// [0,L] x [0, eps*g(x)], the left bulk lies in x < 0 with its attachment
// point p0 at the origin, and the right bulk is the mirror image across
// x = L/2.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dbs/errors.hpp"

namespace dbs {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double polygon_area(const std::vector<Point>& poly);  // signed, shoelace
bool polygon_is_simple(const std::vector<Point>& poly);

enum class ProfileKind { Constant, PiecewiseLinear };

// Neck height profile g on [0, L]: strictly positive, max <= 1, symmetric
// (g(x) = g(L-x)). Values between samples by linear interpolation.
class NeckProfile {
 public:
  static NeckProfile constant(double value, double length);
  static NeckProfile piecewise_linear(std::vector<double> samples, double length);

  double operator()(double x) const;   // clamped to [0, L]
  double integral() const;             // exact for piecewise-linear data
  double integral_to(double x) const;  // cumulative, exact
  double length() const { return length_; }
  ProfileKind kind() const { return kind_; }
  const std::vector<double>& samples() const { return samples_; }
  double min_value() const;
  double max_value() const;
  double symmetry_defect() const;  // max |g_i - g_{m-1-i}|

 private:
  NeckProfile() = default;
  ProfileKind kind_ = ProfileKind::Constant;
  std::vector<double> samples_;
  double length_ = 1.0;
};

enum class BulkKind { Rectangle, SimplePolygon };
enum class AttachEdge { Right, Top, Left, Bottom };

// One bulk domain with a flat vertical attachment segment through p0 = (0,0).
// outline() is the closed ccw polygon in neck coordinates (bulk in x <= 0).
struct BulkDomain {
  BulkKind kind = BulkKind::Rectangle;
  // Rectangle data (local frame [0,M]x[0,H] before placement).
  double rect_width = 0.0;
  double rect_height = 0.0;
  AttachEdge attach_edge = AttachEdge::Right;
  double attach_offset = 0.0;  // distance from the ccw start of the edge to p0
  // SimplePolygon data: already in neck coordinates, ccw, attachment edge on
  // the line x = 0 passing through the origin.
  std::vector<Point> polygon;

  double flat_halfwidth = 0.0;  // ell

  static BulkDomain rectangle(double width, double height, AttachEdge edge,
                              double offset, double ell);
  static BulkDomain simple_polygon(std::vector<Point> ccw_vertices, double ell);

  std::vector<Point> outline() const;  // neck coordinates, ccw
  double area() const;
};

struct DumbbellSpec {
  BulkDomain left;
  NeckProfile neck;
  double epsilon = 0.0;

  Point p0() const { return {0.0, 0.0}; }
  Point p1() const { return {neck.length(), 0.0}; }
  double axis_x() const { return neck.length() / 2.0; }
};

// Reflection across the vertical line x = L/2; involutive isometry taking the
// left bulk onto the right one and p0 to p1.
struct MirrorMap {
  double neck_length = 1.0;
  Point operator()(Point p) const { return {neck_length - p.x, p.y}; }
};

MirrorMap mirror_map(const DumbbellSpec& spec);

// Returns every violated invariant with a human-readable reason; empty means
// the spec is valid. Violations are data, not failures.
std::vector<std::string> validate(const DumbbellSpec& spec);

inline void require_valid(const DumbbellSpec& spec) {
  auto v = validate(spec);
  if (!v.empty()) throw InvalidSpec(v.front());
}

// Closed ccw boundary loops of Omega_eps at the given neck scale. One loop
// for eps > 0; the two separated bulk loops for eps == 0. The neck's top edge
// carries one point per profile sample and the loops are exactly symmetric
// under mirror_map.
std::vector<std::vector<Point>> boundary_polyline(const DumbbellSpec& spec,
                                                  double epsilon);

}  // namespace dbs
