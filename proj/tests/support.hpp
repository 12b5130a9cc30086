#pragma once

// Random inputs and small brute-force references shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gterrain/graph.hpp"

namespace testing {

using gterrain::Graph;
using gterrain::VertexId;

inline Graph make_graph(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges) {
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return make_graph(leaves + 1, e);
}

/// Erdos-Renyi style graph with about `m` edges (duplicates collapse).
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  std::vector<std::pair<VertexId, VertexId>> e;
  for (std::size_t i = 0; i < m; ++i) e.emplace_back(pick(rng), pick(rng));
  return make_graph(n, e);
}

/// Scalars drawn from a small value set so ties are common.
inline std::vector<double> tied_scalars(std::mt19937_64& rng, std::size_t count, int levels) {
  std::uniform_int_distribution<int> pick(0, levels - 1);
  std::vector<double> s(count);
  for (auto& x : s) x = 0.5 * pick(rng);
  return s;
}

inline std::vector<double> distinct_values(const std::vector<double>& s) {
  std::vector<double> v = s;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<std::vector<std::size_t>> bfs_distances(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, SIZE_MAX));
  for (VertexId s = 0; s < n; ++s) {
    std::queue<VertexId> q;
    d[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : g.neighbors(u))
        if (d[s][w] == SIZE_MAX) {
          d[s][w] = d[s][u] + 1;
          q.push(w);
        }
    }
  }
  return d;
}

/// Coreness by exhaustive search over vertex subsets (n <= ~14).
inline std::vector<double> coreness_bruteforce(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<double> best(n, 0.0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t min_deg = SIZE_MAX;
    for (VertexId v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      std::size_t d = 0;
      for (VertexId w : g.neighbors(v)) d += mask >> w & 1;
      min_deg = std::min(min_deg, d);
    }
    for (VertexId v = 0; v < n; ++v)
      if (mask >> v & 1) best[v] = std::max(best[v], static_cast<double>(min_deg));
  }
  return best;
}

/// Trussness by exhaustive search over edge subsets (m <= ~16).
inline std::vector<double> trussness_bruteforce(const Graph& g) {
  const std::size_t m = g.edge_count();
  std::vector<double> best(m, 0.0);
  auto in = [](std::uint32_t mask, std::optional<gterrain::EdgeId> e) { return e && (mask >> *e & 1); };
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::size_t min_tri = SIZE_MAX;
    for (gterrain::EdgeId e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto [u, v] = g.edge(e);
      std::size_t t = 0;
      for (VertexId w : g.neighbors(u))
        if (in(mask, g.find_edge(u, w)) && in(mask, g.find_edge(v, w))) ++t;
      min_tri = std::min(min_tri, t);
    }
    for (gterrain::EdgeId e = 0; e < m; ++e)
      if (mask >> e & 1) best[e] = std::max(best[e], static_cast<double>(min_tri));
  }
  return best;
}

/// Betweenness from distance and path-count tables: for every unordered pair
/// {s, t}, v gains sigma(s,v) * sigma(v,t) / sigma(s,t) when v lies on a
/// shortest s-t path.
inline std::vector<double> betweenness_by_paths(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const auto d = bfs_distances(g);
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (VertexId s = 0; s < n; ++s) {
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return d[s][a] < d[s][b]; });
    sigma[s][s] = 1.0;
    for (VertexId v : order) {
      if (v == s || d[s][v] == SIZE_MAX) continue;
      for (VertexId w : g.neighbors(v))
        if (d[s][w] + 1 == d[s][v]) sigma[s][v] += sigma[s][w];
    }
  }
  std::vector<double> bc(n, 0.0);
  for (VertexId s = 0; s < n; ++s)
    for (VertexId t = s + 1; t < n; ++t) {
      if (d[s][t] == SIZE_MAX) continue;
      for (VertexId v = 0; v < n; ++v) {
        if (v == s || v == t || d[s][v] == SIZE_MAX || d[v][t] == SIZE_MAX) continue;
        if (d[s][v] + d[v][t] == d[s][t]) bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  return bc;
}

/// Population Pearson correlation evaluated with the textbook two-pass formula.
inline double pearson_direct(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  cov /= n;
  va /= n;
  vb /= n;
  if (*std::min_element(a.begin(), a.end()) == *std::max_element(a.begin(), a.end()) ||
      *std::min_element(b.begin(), b.end()) == *std::max_element(b.begin(), b.end()))
    return 0.0;
  return cov / (std::sqrt(va) * std::sqrt(vb));
}

}  // namespace testing
