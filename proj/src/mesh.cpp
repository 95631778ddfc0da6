#include "hygrofrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

namespace hygrofrac {

Eigen::Matrix2Xd Mesh::element_coords(int e) const {
  const int nen = nodes_per_elem();
  Eigen::Matrix2Xd coords(2, nen);
  for (int a = 0; a < nen; ++a) {
    const int n = conn[e][a];
    coords(0, a) = x[n];
    coords(1, a) = y[n];
  }
  return coords;
}

const std::vector<int>& Mesh::node_set(const std::string& name) const {
  auto it = node_sets.find(name);
  if (it == node_sets.end()) throw MeshError("unknown node set '" + name + "'");
  return it->second;
}

bool Mesh::has_node_set(const std::string& name) const {
  return node_sets.count(name) > 0;
}

int Mesh::nearest_node(double px, double py) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int n = 0; n < node_count(); ++n) {
    const double dx = x[n] - px, dy = y[n] - py;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

namespace {

double geom_tol(const Mesh& mesh) {
  return 1e-9 * std::max(mesh.domain.width, mesh.domain.height);
}

void rebuild_boundary_sets(Mesh& mesh) {
  const double tol = geom_tol(mesh);
  std::vector<int> left, right, bottom, top;
  for (int n = 0; n < mesh.node_count(); ++n) {
    if (std::abs(mesh.x[n] - mesh.domain.x0) < tol) left.push_back(n);
    if (std::abs(mesh.x[n] - mesh.domain.x1()) < tol) right.push_back(n);
    if (std::abs(mesh.y[n] - mesh.domain.y0) < tol) bottom.push_back(n);
    if (std::abs(mesh.y[n] - mesh.domain.y1()) < tol) top.push_back(n);
  }
  mesh.node_sets["left"] = std::move(left);
  mesh.node_sets["right"] = std::move(right);
  mesh.node_sets["bottom"] = std::move(bottom);
  mesh.node_sets["top"] = std::move(top);
}

}  // namespace

Mesh build_rect_mesh(const Domain2D& domain, double h_target, ElementOrder order) {
  if (domain.width <= 0 || domain.height <= 0) throw MeshError("domain dimensions must be positive");
  if (h_target <= 0) throw MeshError("h_target must be positive");
  if (h_target > std::min(domain.width, domain.height) * (1 + 1e-12)) {
    throw MeshError("degenerate mesh: h_target " + std::to_string(h_target) +
                    " exceeds the smallest domain dimension");
  }

  Mesh mesh;
  mesh.order = order;
  mesh.domain = domain;
  mesh.nx = static_cast<int>(std::ceil(domain.width / h_target - 1e-9));
  mesh.ny = static_cast<int>(std::ceil(domain.height / h_target - 1e-9));
  mesh.hx = domain.width / mesh.nx;
  mesh.hy = domain.height / mesh.ny;
  mesh.h = std::max(mesh.hx, mesh.hy);

  const int nx = mesh.nx, ny = mesh.ny;
  const int n_corner = (nx + 1) * (ny + 1);
  auto corner = [nx](int i, int j) { return j * (nx + 1) + i; };

  if (order == ElementOrder::Bilinear4) {
    mesh.x.resize(n_corner);
    mesh.y.resize(n_corner);
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        mesh.x[corner(i, j)] = domain.x0 + i * mesh.hx;
        mesh.y[corner(i, j)] = domain.y0 + j * mesh.hy;
      }
    mesh.conn.resize(static_cast<std::size_t>(nx) * ny);
    for (int ey = 0; ey < ny; ++ey)
      for (int ex = 0; ex < nx; ++ex) {
        auto& c = mesh.conn[ey * nx + ex];
        c = {corner(ex, ey), corner(ex + 1, ey), corner(ex + 1, ey + 1), corner(ex, ey + 1),
             -1, -1, -1, -1};
      }
  } else {
    const int n_hmid = nx * (ny + 1);
    auto hmid = [n_corner, nx](int i, int j) { return n_corner + j * nx + i; };
    auto vmid = [n_corner, n_hmid, nx](int i, int j) { return n_corner + n_hmid + j * (nx + 1) + i; };
    const int n_total = n_corner + n_hmid + (nx + 1) * ny;
    mesh.x.resize(n_total);
    mesh.y.resize(n_total);
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        mesh.x[corner(i, j)] = domain.x0 + i * mesh.hx;
        mesh.y[corner(i, j)] = domain.y0 + j * mesh.hy;
      }
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i < nx; ++i) {
        mesh.x[hmid(i, j)] = domain.x0 + (i + 0.5) * mesh.hx;
        mesh.y[hmid(i, j)] = domain.y0 + j * mesh.hy;
      }
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        mesh.x[vmid(i, j)] = domain.x0 + i * mesh.hx;
        mesh.y[vmid(i, j)] = domain.y0 + (j + 0.5) * mesh.hy;
      }
    mesh.conn.resize(static_cast<std::size_t>(nx) * ny);
    for (int ey = 0; ey < ny; ++ey)
      for (int ex = 0; ex < nx; ++ex) {
        auto& c = mesh.conn[ey * nx + ex];
        c = {corner(ex, ey),     corner(ex + 1, ey), corner(ex + 1, ey + 1), corner(ex, ey + 1),
             hmid(ex, ey),       vmid(ex + 1, ey),   hmid(ex, ey + 1),       vmid(ex, ey)};
      }
  }

  mesh.region.assign(mesh.element_count(), -1);
  rebuild_boundary_sets(mesh);
  mesh.node_sets["interface"] = {};
  return mesh;
}

void classify_regions(Mesh& mesh, const FibreLayout& layout) {
  const int nx = mesh.nx, ny = mesh.ny;
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      const double cx = mesh.domain.x0 + (ex + 0.5) * mesh.hx;
      const double cy = mesh.domain.y0 + (ey + 0.5) * mesh.hy;
      int tag = -1;
      for (std::size_t i = 0; i < layout.circles.size(); ++i) {
        if (layout.circles[i].contains(cx, cy)) {
          tag = static_cast<int>(i);
          break;
        }
      }
      if (tag < 0) {
        for (std::size_t s = 0; s < layout.strips.size(); ++s) {
          if (layout.strips[s].contains(cy)) {
            tag = static_cast<int>(layout.circles.size() + s);
            break;
          }
        }
      }
      mesh.region[ey * nx + ex] = tag;
    }
  }

  // interface seam: nodes on shared edges where the region tag changes
  std::set<int> seam;
  const bool q8 = mesh.order == ElementOrder::Serendipity8;
  auto add_edge = [&](int e, int a, int b, int mid) {
    seam.insert(mesh.conn[e][a]);
    seam.insert(mesh.conn[e][b]);
    if (q8) seam.insert(mesh.conn[e][mid]);
  };
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      const int e = ey * nx + ex;
      if (ex + 1 < nx && mesh.region[e] != mesh.region[e + 1]) add_edge(e, 1, 2, 5);
      if (ey + 1 < ny && mesh.region[e] != mesh.region[e + nx]) add_edge(e, 3, 2, 6);
    }
  }
  mesh.node_sets["interface"] = std::vector<int>(seam.begin(), seam.end());
}

CrackSeam insert_edge_crack(Mesh& mesh, double a0, double y_pos) {
  CrackSeam seam;
  seam.y_pos = y_pos;
  seam.x_start = mesh.domain.x0;
  seam.x_tip = mesh.domain.x0 + a0;
  seam.length = a0;
  if (a0 == 0.0) return seam;

  const double tol = geom_tol(mesh);
  if (a0 < 0 || a0 >= mesh.domain.width - tol) {
    throw MeshError("crack length must satisfy 0 <= a0 < W");
  }
  const double ky = (y_pos - mesh.domain.y0) / mesh.hy;
  if (std::abs(ky - std::round(ky)) > 1e-6 || std::round(ky) <= 0 || std::round(ky) >= mesh.ny) {
    throw MeshError("crack seam must lie on an interior horizontal mesh line");
  }
  const double ma = a0 / mesh.hx;
  if (std::abs(ma - std::round(ma)) > 1e-6) {
    throw MeshError("crack length must be a whole number of elements");
  }
  seam.tip_node = mesh.nearest_node(seam.x_tip, y_pos);

  // collect seam nodes left of the tip (crack mouth included, tip excluded)
  std::map<int, int> dup;  // original -> copy
  std::vector<int> to_dup;
  for (int n = 0; n < mesh.node_count(); ++n) {
    if (std::abs(mesh.y[n] - y_pos) < tol && mesh.x[n] < seam.x_tip - tol) to_dup.push_back(n);
  }
  for (int n : to_dup) {
    const int copy = mesh.node_count();
    mesh.x.push_back(mesh.x[n]);
    mesh.y.push_back(mesh.y[n]);
    dup[n] = copy;
    seam.duplicated.emplace_back(n, copy);
  }

  // elements above the seam reference the copies
  const int nen = mesh.nodes_per_elem();
  for (int e = 0; e < mesh.element_count(); ++e) {
    double cy = 0;
    for (int a = 0; a < nen; ++a) cy += mesh.y[mesh.conn[e][a]];
    cy /= nen;
    if (cy <= y_pos) continue;
    for (int a = 0; a < nen; ++a) {
      auto it = dup.find(mesh.conn[e][a]);
      if (it != dup.end()) mesh.conn[e][a] = it->second;
    }
  }

  std::vector<int> lower, upper;
  for (auto [orig, copy] : seam.duplicated) {
    lower.push_back(orig);
    upper.push_back(copy);
  }
  mesh.node_sets["crack_lower"] = std::move(lower);
  mesh.node_sets["crack_upper"] = std::move(upper);

  // copies inherit membership of the interface set; boundary sets are geometric
  if (mesh.has_node_set("interface")) {
    auto& iface = mesh.node_sets["interface"];
    std::set<int> is(iface.begin(), iface.end());
    for (auto [orig, copy] : seam.duplicated)
      if (is.count(orig)) is.insert(copy);
    iface.assign(is.begin(), is.end());
  }
  rebuild_boundary_sets(mesh);
  return seam;
}

double min_jacobian(const Mesh& mesh) {
  double mj = std::numeric_limits<double>::max();
  const auto& rule = gauss_rule(mesh.quadrature_points_per_dir);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const Eigen::Matrix2Xd coords = mesh.element_coords(e);
    for (const auto& qp : rule) {
      mj = std::min(mj, element_shape(mesh.order, coords, qp).detJ);
    }
  }
  return mj;
}

void dump_mesh_text(const Mesh& mesh, std::ostream& os) {
  os << "# nodes " << mesh.node_count() << "\n";
  for (int n = 0; n < mesh.node_count(); ++n) {
    os << n << " " << mesh.x[n] << " " << mesh.y[n] << "\n";
  }
  os << "# elements " << mesh.element_count() << " nodes_per_elem " << mesh.nodes_per_elem()
     << "\n";
  for (int e = 0; e < mesh.element_count(); ++e) {
    os << e << " region " << mesh.region[e];
    for (int a = 0; a < mesh.nodes_per_elem(); ++a) os << " " << mesh.conn[e][a];
    os << "\n";
  }
  for (const auto& [name, set] : mesh.node_sets) {
    os << "# set " << name << " " << set.size() << "\n";
  }
}

}  // namespace hygrofrac
