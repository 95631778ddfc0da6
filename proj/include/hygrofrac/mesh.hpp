#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "hygrofrac/element.hpp"
#include "hygrofrac/geometry.hpp"

namespace hygrofrac {

class MeshError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Structured quadrilateral mesh over a rectangular domain.
///
/// Region tags: -1 for matrix, otherwise an index into the fibre layout
/// (circles first, then strips). Named node sets: "left", "right", "top",
/// "bottom", "interface", and after crack insertion "crack_lower"/"crack_upper".
struct Mesh {
  ElementOrder order = ElementOrder::Bilinear4;
  Domain2D domain;
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
  double h = 0.0;  // characteristic element size, max(hx, hy)

  std::vector<double> x, y;                 // node coordinates (mm)
  std::vector<std::array<int, 8>> conn;     // first 4 entries used for Q4
  std::vector<int> region;                  // per element
  int quadrature_points_per_dir = 2;
  std::map<std::string, std::vector<int>> node_sets;

  int node_count() const { return static_cast<int>(x.size()); }
  int element_count() const { return static_cast<int>(conn.size()); }
  int nodes_per_elem() const { return nodes_per_element(order); }
  int qp_per_elem() const {
    return quadrature_points_per_dir * quadrature_points_per_dir;
  }

  Eigen::Matrix2Xd element_coords(int e) const;
  const std::vector<int>& node_set(const std::string& name) const;
  bool has_node_set(const std::string& name) const;

  /// Nearest node to (px, py).
  int nearest_node(double px, double py) const;
};

/// Initial crack realised by node duplication along a mesh line.
struct CrackSeam {
  double y_pos = 0.0;
  double x_start = 0.0;
  double x_tip = 0.0;
  double length = 0.0;
  std::vector<std::pair<int, int>> duplicated;  // (original, copy), same coordinates
  int tip_node = -1;
};

/// Structured grid with ceil(W/h_target) x ceil(H/h_target) elements.
Mesh build_rect_mesh(const Domain2D& domain, double h_target, ElementOrder order);

/// Tag each element matrix/fibre by centroid test and rebuild the
/// "interface" node set from edges where the tag changes.
void classify_regions(Mesh& mesh, const FibreLayout& layout);

/// Duplicate nodes along y = y_pos for x in [x0, x0 + a0), excluding the tip,
/// and remap the elements above the seam. Returns the seam description.
CrackSeam insert_edge_crack(Mesh& mesh, double a0, double y_pos);

/// Minimum Jacobian determinant over all elements and quadrature points.
double min_jacobian(const Mesh& mesh);

/// Plain-text node/element dump for debugging.
void dump_mesh_text(const Mesh& mesh, std::ostream& os);

}  // namespace hygrofrac
