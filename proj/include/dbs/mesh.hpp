// Conforming, mirror-symmetric triangulation of the dumbbell domain, with
// structured anisotropy control in the thin neck. The mesh is built from the
// left half and mirrored, so the symmetry is exact in floating point: for
// every mirror pair, x_right == L - x_left bitwise.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dbs/geometry.hpp"

namespace dbs {

enum class EdgeMarker : uint8_t {
  BulkBoundary = 0,
  NeckTop = 1,
  NeckBottom = 2,
  InterfaceLeft = 3,
  InterfaceRight = 4,
};

enum class Region : uint8_t { BulkLeft = 0, BulkRight = 1, Neck = 2 };

struct BoundaryEdge {
  int a = 0, b = 0;
  EdgeMarker marker = EdgeMarker::BulkBoundary;
};

struct TriMesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;  // ccw
  std::vector<Region> region;                 // one tag per triangle
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<int> mirror;  // involutive vertex permutation
  double axis_x = 0.0;      // mirror axis location (= L/2)

  int vertex_count() const { return int(vertices.size()); }
  int triangle_count() const { return int(triangles.size()); }
  double triangle_area(int t) const;
  double total_area() const;
  // Distinct undirected edges (interior + boundary).
  int edge_count() const;
};

// Structured mesh of Omega_eps. Bulk target edge length h_bulk; the neck is a
// tensor grid with `neck_layers` cells through the thickness, graded to match
// the bulk at the openings. Throws MeshFailure on degenerate input and
// InvalidSpec if validate(spec) is non-empty.
TriMesh generate(const DumbbellSpec& spec, double h_bulk, int neck_layers);

// Each triangle split into 4 via edge midpoints; markers, regions and exact
// mirror symmetry preserved.
TriMesh refine_uniform(const TriMesh& mesh);

// Structural checks; returns human-readable violations (empty = consistent).
std::vector<std::string> check_mesh(const TriMesh& mesh);

// Plain-text format "dbmesh 1". Round trips losslessly; the mirror
// permutation is reconstructed from coordinates on read.
void write_mesh(const TriMesh& mesh, std::ostream& os);
TriMesh read_mesh(std::istream& is);  // throws ParseError with line number

bool structurally_equal(const TriMesh& a, const TriMesh& b);

}  // namespace dbs
