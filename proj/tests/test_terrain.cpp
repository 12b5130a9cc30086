#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gterrain/error.hpp"
#include "gterrain/terrain.hpp"
#include "support.hpp"

using namespace gterrain;
using Members = std::vector<std::uint32_t>;

namespace {

ScalarTree super_tree(const Graph& g, const std::vector<double>& s) {
  return postprocess_super_tree(build_vertex_scalar_tree(g, s));
}

ScalarTree random_super_tree(std::mt19937_64& rng, std::size_t n, int levels) {
  Graph g = testing::random_graph(rng, n, n + rng() % (2 * n));
  return super_tree(g, testing::tied_scalars(rng, n, levels));
}

void check_layout(const Layout2D& lay) {
  for (NodeId n = 0; n < lay.size(); ++n) {
    if (lay.parent[n] != kNoNode) CHECK(lay.rect[lay.parent[n]].strictly_contains(lay.rect[n]));
    const auto& kids = lay.children[n];
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j) CHECK_FALSE(lay.rect[kids[i]].overlaps(lay.rect[kids[j]]));
    const double want = lay.descendants[n] == 0 ? lay.leaf_area : lay.descendants[n] * lay.unit_area;
    CHECK(std::abs(lay.rect[n].area() - want) <= 0.02 * want);
  }
}

// Every directed edge of a closed, consistently oriented surface appears
// exactly once, and so does its reverse.
bool watertight(const TerrainMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> count;
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i) ++count[{t[i], t[(i + 1) % 3]}];
  for (const auto& [e, c] : count) {
    if (c != 1) return false;
    auto rev = count.find({e.second, e.first});
    if (rev == count.end() || rev->second != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("layout: single node") {
  ScalarTree t = super_tree(testing::make_graph(1, {}), {3.0});
  Layout2D lay = layout_2d(t);
  CHECK(lay.size() == 1);
  CHECK_FALSE(lay.synthetic_root);
  TerrainMesh m = build_mesh(t, lay);
  CHECK(m.boundaries.size() == 1);
  CHECK(m.walls.empty());
  CHECK(m.boundaries[0].height == 3.0);
  CHECK(watertight(m));
}

TEST_CASE("layout: two equal subtrees get equal areas") {
  // root 0 with two chains of two nodes each
  ScalarTree t = ScalarTree::one_per_element(TreeKind::vertex, {0, 1, 2, 1, 2}, {kNoNode, 0, 1, 0, 3});
  Layout2D lay = layout_2d(t);
  check_layout(lay);
  CHECK(lay.rect[1].area() == doctest::Approx(lay.rect[3].area()).epsilon(0.02));
  CHECK(lay.rect[2].area() == doctest::Approx(lay.rect[4].area()).epsilon(0.02));
}

TEST_CASE("layout: a node with two child subtrees splits its interior") {
  Graph g = testing::make_graph(9, {{0, 1}, {1, 2}, {2, 4}, {4, 6}, {3, 5}, {5, 6}, {6, 7}, {7, 8}});
  ScalarTree t = super_tree(g, {4.0, 3.5, 3.0, 3.2, 2.6, 2.8, 2.0, 1.5, 1.0});
  Layout2D lay = layout_2d(t);
  check_layout(lay);
  const NodeId n7 = t.node_of(6);
  REQUIRE(lay.children[n7].size() == 2);
  CHECK_FALSE(lay.rect[lay.children[n7][0]].overlaps(lay.rect[lay.children[n7][1]]));
  // larger subtree first
  CHECK(lay.descendants[lay.children[n7][0]] >= lay.descendants[lay.children[n7][1]]);
}

TEST_CASE("layout: forests get a synthetic base") {
  Graph g = testing::make_graph(5, {{0, 1}, {2, 3}});
  ScalarTree t = super_tree(g, {2, 1, 5, 4, 3});
  Layout2D lay = layout_2d(t);
  CHECK(lay.synthetic_root);
  CHECK(lay.root == t.size());
  CHECK(lay.is_synthetic(lay.root));
  CHECK(lay.children[lay.root].size() == 3);
  check_layout(lay);
  TerrainMesh m = build_mesh(t, lay);
  CHECK(m.boundaries[lay.root].synthetic);
  CHECK(m.boundaries[lay.root].height < 1.0);
  CHECK(watertight(m));
}

TEST_CASE("mesh: chain of two nodes has one wall spanning both heights") {
  ScalarTree t = super_tree(testing::path_graph(2), {1.0, 5.0});
  Layout2D lay = layout_2d(t);
  TerrainMesh m = build_mesh(t, lay);
  REQUIRE(m.walls.size() == 1);
  CHECK(m.walls[0].bottom == 1.0);
  CHECK(m.walls[0].top == 5.0);
  CHECK(m.walls[0].inner == t.node_of(1));
  CHECK(m.walls[0].outer == t.node_of(0));
  CHECK(watertight(m));
  CHECK(m.bounds_max[2] == 5.0);
}

TEST_CASE("mesh: treemap mode is flat") {
  std::mt19937_64 rng(3);
  ScalarTree t = random_super_tree(rng, 60, 6);
  MeshOptions flat;
  flat.treemap = true;
  TerrainMesh m = build_mesh(t, layout_2d(t), {}, flat);
  CHECK(m.treemap);
  CHECK(m.walls.empty());
  for (const auto& v : m.vertices) CHECK(v[2] == 0.0);
  for (const auto& b : m.boundaries) CHECK(b.height == 0.0);
}

TEST_CASE("mesh: requires a super tree") {
  ScalarTree raw = build_vertex_scalar_tree(testing::path_graph(3), std::vector<double>{1, 1, 2});
  CHECK_THROWS_AS(build_mesh(raw, layout_2d(raw)), Error);
}

TEST_CASE("colors follow quartiles of node values") {
  ScalarTree t = ScalarTree::one_per_element(TreeKind::vertex, {1, 2, 3, 4, 5, 6, 7, 8},
                                             {kNoNode, 0, 1, 2, 3, 4, 5, 6});
  Layout2D lay = layout_2d(t);
  ColorAssignment c = assign_colors(lay, node_color_values(t, {}));
  // type-7 quartiles of 1..8
  CHECK(c.thresholds[0] == doctest::Approx(2.75));
  CHECK(c.thresholds[1] == doctest::Approx(4.5));
  CHECK(c.thresholds[2] == doctest::Approx(6.25));
  CHECK(c.classes[0] == ColorClass::blue);
  CHECK(c.classes[2] == ColorClass::green);
  CHECK(c.classes[4] == ColorClass::yellow);
  CHECK(c.classes[7] == ColorClass::red);
  TerrainMesh m = build_mesh(t, lay);
  for (const auto& w : m.walls) CHECK(w.color == c.classes[w.inner]);
  CHECK_THROWS_AS(node_color_values(t, std::vector<double>{1, 2}), Error);
}

TEST_CASE("recoloring leaves geometry untouched") {
  std::mt19937_64 rng(13);
  Graph g = testing::random_graph(rng, 80, 160);
  ScalarTree t = super_tree(g, testing::tied_scalars(rng, 80, 5));
  Layout2D lay = layout_2d(t);
  std::vector<double> other(80);
  for (auto& x : other) x = static_cast<double>(rng() % 100);
  TerrainMesh a = build_mesh(t, lay);
  TerrainMesh b = build_mesh(t, lay, other);
  CHECK(a.vertices == b.vertices);
  CHECK(a.triangles == b.triangles);
}

TEST_CASE("peaks and picking") {
  Graph g = testing::make_graph(5, {{0, 1}, {1, 2}, {3, 4}});
  ScalarTree t = super_tree(g, {3, 1, 2, 5, 4});
  Layout2D lay = layout_2d(t);
  TerrainMesh m = build_mesh(t, lay);
  CHECK(peaks_at(t, m, -1e9).size() == 2);
  CHECK(peaks_at(t, m, 6).empty());
  CHECK(pick(t, m, lay.root).members == Members{0, 1, 2, 3, 4});
  CHECK(pick(t, m, t.node_of(0)).members == Members{0});
  CHECK(pick(t, m, t.node_of(0)).alpha == 3.0);
  CHECK_THROWS_AS(pick(t, m, 99), Error);
}

TEST_CASE("property: nesting, area, peaks and watertightness on random trees") {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 40; ++round) {
    ScalarTree t = random_super_tree(rng, 5 + rng() % 150, 2 + static_cast<int>(rng() % 8));
    Layout2D lay = layout_2d(t);
    check_layout(lay);
    TerrainMesh m = build_mesh(t, lay);
    CHECK(watertight(m));
    for (NodeId n = 0; n < t.size(); ++n) CHECK(m.boundaries[n].height == t.scalar(n));
    for (const auto& w : m.walls) CHECK(w.bottom <= w.top);
    std::uniform_real_distribution<double> pick_alpha(-0.5, 4.5);
    for (int k = 0; k < 10; ++k) {
      const double a = pick_alpha(rng);
      const auto peaks = peaks_at(t, m, a);
      const auto cut = cut_at_alpha(t, a);
      REQUIRE(peaks.size() == cut.components.size());
      for (std::size_t i = 0; i < peaks.size(); ++i) CHECK(peaks[i].members == cut.components[i].members);
    }
  }
}

TEST_CASE("mesh files are deterministic") {
  std::mt19937_64 rng(99);
  ScalarTree t = random_super_tree(rng, 120, 6);
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "gterrain_mesh_a.json").string(), b = (dir / "gterrain_mesh_b.json").string();
  const auto o = (dir / "gterrain_mesh.obj").string();
  write_mesh_file(a, build_mesh(t, layout_2d(t)));
  write_mesh_file(b, build_mesh(t, layout_2d(t)));
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(a) == slurp(b));
  auto doc = nlohmann::json::parse(slurp(a));
  CHECK(doc.contains("boundaries"));
  CHECK(doc.contains("walls"));
  CHECK(doc.contains("palette"));
  CHECK(doc.contains("bounds"));
  CHECK(doc["boundaries"][0]["loop"].size() == 4);

  TerrainMesh m = build_mesh(t, layout_2d(t));
  write_obj_file(o, m);
  std::istringstream obj(slurp(o));
  std::size_t vs = 0, fs = 0;
  for (std::string line; std::getline(obj, line);) {
    if (line.rfind("v ", 0) == 0) ++vs;
    if (line.rfind("f ", 0) == 0) ++fs;
  }
  CHECK(vs == m.vertices.size());
  CHECK(fs == m.triangles.size());
}

TEST_CASE("force layout") {
  SUBCASE("two vertices settle at a finite, nonzero distance") {
    Graph g = testing::path_graph(2);
    std::vector<VertexId> vs{0, 1};
    auto p = force_layout_2d(g, vs);
    const double d = std::hypot(p[0].x - p[1].x, p[0].y - p[1].y);
    CHECK(std::isfinite(d));
    CHECK(d > 0.1);
    CHECK(d < 10.0);
  }
  SUBCASE("seeded runs agree") {
    std::mt19937_64 rng(8);
    Graph g = testing::random_graph(rng, 50, 100);
    std::vector<VertexId> vs(50);
    std::iota(vs.begin(), vs.end(), 0);
    auto a = force_layout_2d(g, vs), b = force_layout_2d(g, vs);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      CHECK(a[i].x == b[i].x);
      CHECK(a[i].y == b[i].y);
    }
  }
  SUBCASE("K5 is symmetric: every vertex sits at the same mean distance from the rest") {
    Graph g = testing::complete_graph(5);
    std::vector<VertexId> vs{0, 1, 2, 3, 4};
    auto p = force_layout_2d(g, vs);
    std::vector<double> mean(5, 0.0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (i != j) mean[i] += std::hypot(p[i].x - p[j].x, p[i].y - p[j].y) / 4;
    const auto [lo, hi] = std::minmax_element(mean.begin(), mean.end());
    CHECK(*hi <= 1.10 * *lo);
  }
  SUBCASE("errors") {
    Graph g = testing::path_graph(3);
    ForceLayoutOptions small;
    small.vertex_cap = 2;
    std::vector<VertexId> three{0, 1, 2}, dup{0, 0}, bad{7};
    CHECK_THROWS_AS(force_layout_2d(g, three, small), Error);
    CHECK_THROWS_AS(force_layout_2d(g, dup), Error);
    CHECK_THROWS_AS(force_layout_2d(g, bad), Error);
  }
}
