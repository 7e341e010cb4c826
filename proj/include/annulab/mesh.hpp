#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "annulab/geometry.hpp"

namespace annulab {

// Planar triangulation of the chart image of an eccentric annulus.
// Triangles are counterclockwise; boundary loops are closed node cycles
// lying exactly on the two chart circles.
struct TriMesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> inner_boundary;
  std::vector<int> outer_boundary;
  Circle2D inner_circle;
  Circle2D outer_circle;
  int refinement_level = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  bool is_boundary_node(int i) const;
};

struct MeshReport {
  std::vector<std::string> violations;
  double min_quality = 0.0;    // 2 * inradius / circumradius, 1 = equilateral
  double max_edge_length = 0.0;
  int edge_count = 0;
  bool ok() const { return violations.empty(); }
};

// Structured mesh of the annulus: the circle pair is concentricized by a
// Mobius map, an n_r x n_theta grid (n_r = 8 * 2^L, n_theta = 32 * 2^L,
// log-spaced radii, alternating diagonals) is laid on the concentric
// annulus, and the nodes are pulled back through the inverse map. Boundary
// nodes land on the original circles since Mobius maps take circles to
// circles. Negative offsets are built by mirroring the positive-offset mesh
// in the x-direction so that the +-t meshes are exact mirror images.
TriMesh build_annulus_mesh(const AnnulusSpec& spec, int level);

// Checks every structural invariant (positive areas, boundary nodes on
// their circles, Euler characteristic 0, edge sharing, quality >= 0.05)
// and reports violations instead of throwing.
MeshReport validate_mesh(const TriMesh& mesh);

// Plain-text dump: "v x y" per node, "t i j k" per triangle, "bi ..." and
// "bo ..." for the boundary loops, all 0-based.
void write_mesh_text(const TriMesh& mesh, std::ostream& os);

}  // namespace annulab
