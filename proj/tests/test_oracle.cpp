#include <doctest.h>

#include "gterrain/error.hpp"
#include "gterrain/oracle.hpp"
#include "support.hpp"

using namespace gterrain;
using Members = std::vector<std::uint32_t>;

TEST_CASE("vertex components") {
  Graph p = testing::path_graph(3);
  std::vector<double> s{3, 1, 2};
  CHECK(oracle::enumerate_maximal_components_bruteforce(p, s, 2).components == std::set<Members>{{0}, {2}});
  CHECK(oracle::enumerate_maximal_components_bruteforce(p, s, 1).components == std::set<Members>{{0, 1, 2}});
  CHECK(oracle::enumerate_maximal_components_bruteforce(p, s, 4).components.empty());
  Graph two = testing::make_graph(4, {{0, 1}, {2, 3}});
  CHECK(oracle::enumerate_maximal_components_bruteforce(two, std::vector<double>(4, 0), -1).components.size() == 2);
}

TEST_CASE("edge components") {
  Graph tri = testing::complete_graph(3);
  std::vector<double> s{3, 2, 1};
  CHECK(oracle::enumerate_edge_components_bruteforce(tri, s, 2).components == std::set<Members>{{0, 1}});
  CHECK(oracle::enumerate_edge_components_bruteforce(tri, s, 4).components.empty());
  Graph two = testing::make_graph(4, {{0, 1}, {2, 3}});
  CHECK(oracle::enumerate_edge_components_bruteforce(two, std::vector<double>{1, 1}, 1).components ==
        std::set<Members>{{0}, {1}});
}

TEST_CASE("dual graph") {
  Graph d = oracle::dual_graph(testing::complete_graph(3));
  CHECK(d.vertex_count() == 3);
  CHECK(d.edge_count() == 3);
  Graph star = oracle::dual_graph(testing::star_graph(3));
  CHECK(star.edge_count() == 3);
  CHECK(oracle::dual_graph(testing::path_graph(2)).edge_count() == 0);
  CHECK(oracle::build_edge_tree_naive_dual(testing::path_graph(2), std::vector<double>{1}).size() == 1);
  CHECK_THROWS_AS(oracle::dual_graph(testing::star_graph(10), 5), Error);
}

TEST_CASE("caps") {
  Graph p = testing::path_graph(5);
  CHECK_THROWS_AS(oracle::enumerate_maximal_components_bruteforce(p, std::vector<double>(5, 1), 0, 4), Error);
}

TEST_CASE("property: components do not depend on vertex numbering") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + rng() % 15;
    Graph g = testing::random_graph(rng, n, rng() % (2 * n));
    auto s = testing::tied_scalars(rng, n, 3);
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<VertexId, VertexId>> pe;
    for (const Edge& e : g.edges()) pe.emplace_back(perm[e.u], perm[e.v]);
    Graph h = testing::make_graph(n, pe);
    std::vector<double> hs(n);
    for (VertexId v = 0; v < n; ++v) hs[perm[v]] = s[v];
    for (double a : testing::distinct_values(s)) {
      std::set<Members> mapped;
      for (const auto& c : oracle::enumerate_maximal_components_bruteforce(g, s, a).components) {
        Members m;
        for (auto v : c) m.push_back(perm[v]);
        std::sort(m.begin(), m.end());
        mapped.insert(m);
      }
      CHECK(mapped == oracle::enumerate_maximal_components_bruteforce(h, hs, a).components);
    }
  }
}
