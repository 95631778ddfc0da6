#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hygrofrac/geometry.hpp"
#include "hygrofrac/mesh.hpp"

using namespace hygrofrac;

TEST_CASE("paper-resolution square mesh: 40x40 serendipity grid at h = 0.0005") {
  Mesh mesh = build_rect_mesh(Domain2D{0.02, 0.02}, 0.0005, ElementOrder::Serendipity8);
  CHECK(mesh.nx == 40);
  CHECK(mesh.ny == 40);
  CHECK(mesh.h == doctest::Approx(0.0005).epsilon(1e-12));
  CHECK(mesh.element_count() == 1600);
  CHECK(mesh.nodes_per_elem() == 8);
}

TEST_CASE("unit domain with h_target = 1 gives a single bilinear element") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 1.0}, 1.0, ElementOrder::Bilinear4);
  CHECK(mesh.element_count() == 1);
  CHECK(mesh.node_count() == 4);
}

TEST_CASE("element count follows the ceil arithmetic on a fine plate mesh") {
  const double W = 0.1, H = 0.2, h = 0.00045;
  Mesh mesh = build_rect_mesh(Domain2D{W, H}, h, ElementOrder::Bilinear4);
  const int nx = static_cast<int>(std::ceil(W / h - 1e-9));
  const int ny = static_cast<int>(std::ceil(H / h - 1e-9));
  CHECK(mesh.element_count() == nx * ny);
  CHECK(mesh.h <= h * (1 + 1e-12));
  // within 5% of the 222 x 444 grid estimate
  CHECK(std::abs(mesh.element_count() - 222 * 444) < 0.05 * 222 * 444);
}

TEST_CASE("boundary node sets are populated and consistent") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 2.0}, 0.25, ElementOrder::Bilinear4);
  CHECK(mesh.node_set("left").size() == static_cast<std::size_t>(mesh.ny + 1));
  CHECK(mesh.node_set("bottom").size() == static_cast<std::size_t>(mesh.nx + 1));
  for (int n : mesh.node_set("right")) CHECK(mesh.x[n] == doctest::Approx(1.0));
  for (int n : mesh.node_set("top")) CHECK(mesh.y[n] == doctest::Approx(2.0));
}

TEST_CASE("oversized h_target is a degenerate-mesh error") {
  CHECK_THROWS_AS(build_rect_mesh(Domain2D{1.0, 0.5}, 0.75, ElementOrder::Bilinear4), MeshError);
}

TEST_CASE("positive Jacobians for generated meshes of both orders") {
  for (auto order : {ElementOrder::Bilinear4, ElementOrder::Serendipity8}) {
    Mesh mesh = build_rect_mesh(Domain2D{0.3, 0.7, -0.1, 0.2}, 0.05, order);
    CHECK(min_jacobian(mesh) > 0.0);
  }
}

TEST_CASE("square array: 36 fibres at the regular pitch") {
  FibreLayout layout = place_fibres_square_array(6, 6, 0.01, Domain2D{0.1, 0.1});
  REQUIRE(layout.circles.size() == 36);
  const double pitch = 0.1 / 6;
  CHECK(layout.circles[0].cx == doctest::Approx(pitch / 2));
  CHECK(layout.circles[1].cx - layout.circles[0].cx == doctest::Approx(pitch));
  CHECK(pitch == doctest::Approx(0.0167).epsilon(1e-2));
}

TEST_CASE("square array: single fibre lands at the domain centre") {
  FibreLayout layout = place_fibres_square_array(1, 1, 0.01, Domain2D{0.02, 0.02});
  REQUIRE(layout.circles.size() == 1);
  CHECK(layout.circles[0].cx == doctest::Approx(0.01));
  CHECK(layout.circles[0].cy == doctest::Approx(0.01));
}

TEST_CASE("square array rejects overlapping pitch") {
  CHECK_THROWS_AS(place_fibres_square_array(2, 2, 0.06, Domain2D{0.1, 0.1}), GeometryError);
}

TEST_CASE("random packing respects the minimum gap for every pair") {
  const double d = 0.01, gap = 0.001;
  FibreLayout layout = place_fibres_random(36, d, Domain2D{0.1, 0.1}, 1, gap);
  REQUIRE(layout.circles.size() == 36);
  for (std::size_t i = 0; i < 36; ++i) {
    for (std::size_t j = i + 1; j < 36; ++j) {
      const double dx = layout.circles[i].cx - layout.circles[j].cx;
      const double dy = layout.circles[i].cy - layout.circles[j].cy;
      CHECK(std::sqrt(dx * dx + dy * dy) >= d + gap - 1e-12);
    }
  }
  // fully inside the domain
  for (const Circle& c : layout.circles) {
    CHECK(c.cx - c.radius() >= 0.0);
    CHECK(c.cx + c.radius() <= 0.1);
    CHECK(c.cy - c.radius() >= 0.0);
    CHECK(c.cy + c.radius() <= 0.1);
  }
}

TEST_CASE("random packing: n = 0 gives an empty layout") {
  FibreLayout layout = place_fibres_random(0, 0.01, Domain2D{0.1, 0.1}, 1, 0.0);
  CHECK(layout.circles.empty());
}

TEST_CASE("random packing is deterministic per seed") {
  FibreLayout a = place_fibres_random(36, 0.01, Domain2D{0.1, 0.1}, 1, 0.001);
  FibreLayout b = place_fibres_random(36, 0.01, Domain2D{0.1, 0.1}, 1, 0.001);
  REQUIRE(a.circles.size() == b.circles.size());
  for (std::size_t i = 0; i < a.circles.size(); ++i) {
    CHECK(a.circles[i].cx == b.circles[i].cx);  // bitwise
    CHECK(a.circles[i].cy == b.circles[i].cy);
  }
  FibreLayout c = place_fibres_random(36, 0.01, Domain2D{0.1, 0.1}, 2, 0.001);
  bool any_different = false;
  for (std::size_t i = 0; i < c.circles.size(); ++i) {
    any_different = any_different || c.circles[i].cx != a.circles[i].cx;
  }
  CHECK(any_different);
}

TEST_CASE("impossible packing reports the achieved count") {
  try {
    place_fibres_random(200, 0.01, Domain2D{0.05, 0.05}, 1, 0.001);
    FAIL("expected packing failure");
  } catch (const GeometryError& err) {
    CHECK(std::string(err.what()).find("placed") != std::string::npos);
  }
}

TEST_CASE("region classification recovers the fibre area within 3%") {
  Mesh mesh = build_rect_mesh(Domain2D{0.02, 0.02}, 0.00025, ElementOrder::Bilinear4);
  FibreLayout layout = place_fibres_square_array(1, 1, 0.01, Domain2D{0.02, 0.02});
  classify_regions(mesh, layout);

  double fibre_area = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (mesh.region[e] >= 0) fibre_area += mesh.hx * mesh.hy;
  }
  const double exact = M_PI * 0.01 * 0.01 / 4;
  CHECK(std::abs(fibre_area - exact) / exact < 0.03);
  CHECK_FALSE(mesh.node_set("interface").empty());
}

TEST_CASE("empty layout tags everything matrix with no interface") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 1.0}, 0.1, ElementOrder::Bilinear4);
  classify_regions(mesh, FibreLayout{});
  for (int e = 0; e < mesh.element_count(); ++e) CHECK(mesh.region[e] == -1);
  CHECK(mesh.node_set("interface").empty());
}

TEST_CASE("fibre covering the whole domain leaves no interface") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 1.0}, 0.25, ElementOrder::Bilinear4);
  FibreLayout layout;
  layout.circles.push_back(Circle{0.5, 0.5, 10.0});
  classify_regions(mesh, layout);
  for (int e = 0; e < mesh.element_count(); ++e) CHECK(mesh.region[e] == 0);
  CHECK(mesh.node_set("interface").empty());
}

TEST_CASE("classification is idempotent and partition-complete") {
  Mesh mesh = build_rect_mesh(Domain2D{0.1, 0.1}, 0.002, ElementOrder::Bilinear4);
  FibreLayout layout = place_fibres_random(12, 0.01, Domain2D{0.1, 0.1}, 3, 0.001);
  classify_regions(mesh, layout);
  const std::vector<int> first = mesh.region;
  const std::vector<int> iface = mesh.node_set("interface");
  classify_regions(mesh, layout);
  CHECK(mesh.region == first);
  CHECK(mesh.node_set("interface") == iface);
  for (int tag : mesh.region) CHECK(tag >= -1);
}

TEST_CASE("strip layout tags horizontal bands") {
  Mesh mesh = build_rect_mesh(Domain2D{10.0, 1.5}, 0.05, ElementOrder::Bilinear4);
  FibreLayout layout = make_strip_layout({Strip{0.0, 0.24, 0.0}});
  classify_regions(mesh, layout);
  int fibre_elems = 0;
  for (int e = 0; e < mesh.element_count(); ++e)
    if (mesh.region[e] == 0) ++fibre_elems;
  const double area = fibre_elems * mesh.hx * mesh.hy;
  CHECK(area == doctest::Approx(10.0 * 0.24).epsilon(0.05));
}

TEST_CASE("edge crack duplicates the seam nodes left of the tip") {
  for (auto order : {ElementOrder::Bilinear4, ElementOrder::Serendipity8}) {
    Mesh mesh = build_rect_mesh(Domain2D{0.1, 0.2}, 0.01, order);
    const int nodes_before = mesh.node_count();
    CrackSeam seam = insert_edge_crack(mesh, 0.05, 0.1);
    CHECK(seam.length == doctest::Approx(0.05));
    CHECK(seam.x_tip == doctest::Approx(0.05));

    // independent scan: nodes on the seam line strictly left of the tip
    int expected = 0;
    for (int n = 0; n < nodes_before; ++n) {
      if (std::abs(mesh.y[n] - 0.1) < 1e-12 && mesh.x[n] < 0.05 - 1e-12) ++expected;
    }
    CHECK(static_cast<int>(seam.duplicated.size()) == expected);
    CHECK(mesh.node_count() == nodes_before + expected);
    for (auto [orig, copy] : seam.duplicated) {
      CHECK(mesh.x[orig] == mesh.x[copy]);
      CHECK(mesh.y[orig] == mesh.y[copy]);
    }
    CHECK(min_jacobian(mesh) > 0.0);
  }
}

TEST_CASE("zero-length crack leaves the mesh unchanged") {
  Mesh mesh = build_rect_mesh(Domain2D{0.1, 0.2}, 0.01, ElementOrder::Bilinear4);
  const int nodes_before = mesh.node_count();
  CrackSeam seam = insert_edge_crack(mesh, 0.0, 0.1);
  CHECK(seam.duplicated.empty());
  CHECK(mesh.node_count() == nodes_before);
}

TEST_CASE("misaligned crack requests are rejected") {
  Mesh mesh = build_rect_mesh(Domain2D{0.1, 0.2}, 0.01, ElementOrder::Bilinear4);
  CHECK_THROWS_AS(insert_edge_crack(mesh, 0.05, 0.1037), MeshError);
  Mesh mesh2 = build_rect_mesh(Domain2D{0.1, 0.2}, 0.01, ElementOrder::Bilinear4);
  CHECK_THROWS_AS(insert_edge_crack(mesh2, 0.0533, 0.1), MeshError);
}

TEST_CASE("crack faces split the connectivity above and below the seam") {
  Mesh mesh = build_rect_mesh(Domain2D{0.1, 0.2}, 0.01, ElementOrder::Bilinear4);
  CrackSeam seam = insert_edge_crack(mesh, 0.05, 0.1);
  std::set<int> lower(mesh.node_set("crack_lower").begin(), mesh.node_set("crack_lower").end());
  std::set<int> upper(mesh.node_set("crack_upper").begin(), mesh.node_set("crack_upper").end());
  for (int e = 0; e < mesh.element_count(); ++e) {
    double cy = 0;
    for (int a = 0; a < 4; ++a) cy += mesh.y[mesh.conn[e][a]];
    cy /= 4;
    for (int a = 0; a < 4; ++a) {
      if (cy > 0.1) CHECK(lower.count(mesh.conn[e][a]) == 0);
      if (cy < 0.1) CHECK(upper.count(mesh.conn[e][a]) == 0);
    }
  }
  // the tip stays shared
  bool tip_in_lower = lower.count(seam.tip_node) > 0;
  bool tip_in_upper = upper.count(seam.tip_node) > 0;
  CHECK_FALSE(tip_in_lower);
  CHECK_FALSE(tip_in_upper);
}

TEST_CASE("mesh text dump lists nodes, elements and sets") {
  Mesh mesh = build_rect_mesh(Domain2D{1.0, 1.0}, 0.5, ElementOrder::Bilinear4);
  std::ostringstream os;
  dump_mesh_text(mesh, os);
  CHECK(os.str().find("# nodes 9") != std::string::npos);
  CHECK(os.str().find("# elements 4") != std::string::npos);
  CHECK(os.str().find("# set left") != std::string::npos);
}
