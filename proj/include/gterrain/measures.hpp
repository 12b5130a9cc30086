#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gterrain/graph.hpp"

namespace gterrain {

struct VertexField {
  std::string name;
  std::vector<double> values;  // one per vertex
};

struct EdgeField {
  std::string name;
  std::vector<double> values;  // one per edge id
};

VertexField degree_field(const Graph& graph);

/// Coreness KC(v): the largest K such that v lies in a K-core.
VertexField kcore_field(const Graph& graph);

/// Trussness KT(e): the largest K such that e lies in a subgraph where every
/// edge closes at least K triangles. A lone triangle gives 1, K4 gives 2.
EdgeField ktruss_field(const Graph& graph);

/// Triangles through each edge.
std::vector<std::size_t> edge_support(const Graph& graph);

struct BetweennessOptions {
  bool normalized = false;
  std::size_t vertex_cap = 100'000;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Exact shortest-path betweenness (Brandes), each unordered pair counted
/// once. Normalized values divide by (n-1)(n-2)/2.
VertexField betweenness_field(const Graph& graph, const BetweennessOptions& options = {});

}  // namespace gterrain
