#include <doctest.h>

#include "gterrain/correlation.hpp"
#include "gterrain/error.hpp"
#include "gterrain/measures.hpp"
#include "support.hpp"

using namespace gterrain;

namespace {

std::vector<double> lci_direct(const Graph& g, const std::vector<double>& a, const std::vector<double>& b, int hops) {
  const auto d = testing::bfs_distances(g);
  std::vector<double> out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<double> xa, xb;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      if (d[v][u] <= static_cast<std::size_t>(hops)) {
        xa.push_back(a[u]);
        xb.push_back(b[u]);
      }
    out[v] = testing::pearson_direct(xa, xb);
  }
  return out;
}

std::vector<double> random_field(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z(0, 3);
  std::vector<double> f(n);
  for (auto& x : f) x = z(rng);
  return f;
}

}  // namespace

TEST_CASE("path example") {
  Graph p = testing::path_graph(3);
  auto r = local_correlation(p, std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 7});
  CHECK(r.values[1] == doctest::Approx(0.99339926779878).epsilon(1e-12));
  CHECK(r.values[1] == doctest::Approx(testing::pearson_direct({1, 2, 3}, {2, 4, 7})).epsilon(1e-14));
  // end vertices see two points each, which are perfectly correlated
  CHECK(r.values[0] == doctest::Approx(1.0));
  CHECK(r.zero_variance == 0);
}

TEST_CASE("self and negated correlation") {
  Graph k = testing::complete_graph(5);
  std::vector<double> a{1, 4, 2, 8, 5}, neg(5);
  for (int i = 0; i < 5; ++i) neg[i] = -a[i];
  for (double x : local_correlation(k, a, a).values) CHECK(x == doctest::Approx(1.0));
  for (double x : local_correlation(k, a, neg).values) CHECK(x == doctest::Approx(-1.0));
  CHECK(correlate(k, "a", a, "a", a).gci == doctest::Approx(1.0));
}

TEST_CASE("flat neighborhoods score zero and are counted") {
  Graph g = testing::path_graph(4);
  std::vector<double> constant(4, 2.5), a{1, 2, 3, 4};
  auto r = local_correlation(g, constant, a);
  CHECK(r.zero_variance == 4);
  for (double x : r.values) CHECK(x == 0.0);
  auto c = correlate(g, "c", constant, "a", a);
  CHECK(c.gci == 0.0);
  CHECK(c.zero_variance == 4);
  // an isolated vertex is its own neighborhood
  auto iso = local_correlation(testing::make_graph(1, {}), std::vector<double>{1}, std::vector<double>{2});
  CHECK(iso.values == std::vector<double>{0.0});
}

TEST_CASE("global index and outliers") {
  CHECK(global_correlation(std::vector<double>{1, 1, 1}) == 1.0);
  CHECK(global_correlation(std::vector<double>{1, -1}) == 0.0);
  CHECK_THROWS_AS(global_correlation(std::vector<double>{}), Error);
  CHECK(outlier_scores(std::vector<double>{1, -0.7}) == std::vector<double>{-1, 0.7});
  std::vector<double> lci{0.3, -0.9, 0.8, -0.2};
  auto o = outlier_scores(lci);
  CHECK(std::max_element(o.begin(), o.end()) - o.begin() == std::min_element(lci.begin(), lci.end()) - lci.begin());
}

TEST_CASE("argument checks") {
  Graph p = testing::path_graph(3);
  CHECK_THROWS_AS(local_correlation(p, std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS(local_correlation(p, std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}, 0), Error);
}

TEST_CASE("property: matches direct evaluation, symmetric, affine invariant, bounded") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 2 + rng() % 40;
    Graph g = testing::random_graph(rng, n, rng() % (3 * n));
    auto a = random_field(rng, n);
    auto b = random_field(rng, n);
    if (round % 3 == 0) b = degree_field(g).values;  // ties and flat spots
    const int hops = 1 + static_cast<int>(rng() % 3);

    const auto got = local_correlation(g, a, b, hops);
    const auto expect = lci_direct(g, a, b, hops);
    for (VertexId v = 0; v < n; ++v) {
      CHECK(std::abs(got.values[v] - expect[v]) <= 1e-9);
      CHECK(std::abs(got.values[v]) <= 1.0 + 1e-12);
    }
    CHECK(local_correlation(g, b, a, hops).values == got.values);

    std::vector<double> a2(n);
    for (std::size_t i = 0; i < n; ++i) a2[i] = 3.5 * a[i] + 100.0;
    const auto shifted = local_correlation(g, a2, b, hops);
    for (VertexId v = 0; v < n; ++v) CHECK(shifted.values[v] == doctest::Approx(got.values[v]).epsilon(1e-9));

    const auto c = correlate(g, "a", a, "b", b, hops);
    double mean = 0;
    for (double x : c.lci) mean += x;
    CHECK(c.gci == doctest::Approx(mean / n).epsilon(1e-12));
    for (VertexId v = 0; v < n; ++v) CHECK(c.outlier[v] == -c.lci[v]);
  }
}
