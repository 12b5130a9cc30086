#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "gterrain/graph.hpp"
#include "gterrain/scalar_tree.hpp"

namespace gterrain::oracle {

// Brute-force references used to check the tree builders. They share no
// code with the sweep algorithms: no sorting sweep, no union-find.

using MemberSet = std::vector<std::uint32_t>;  // sorted

struct ComponentSetReport {
  double alpha = 0.0;
  std::set<MemberSet> components;
};

inline constexpr std::size_t kDefaultVertexCap = 10'000;
inline constexpr std::size_t kDefaultDualEdgeCap = 200'000'000;

/// Connected components of the subgraph induced by vertices with scalar >= alpha.
ComponentSetReport enumerate_maximal_components_bruteforce(const Graph& graph, std::span<const double> vertex_scalar,
                                                           double alpha, std::size_t cap = kDefaultVertexCap);

/// Components of edges with scalar >= alpha under the shared-endpoint relation.
ComponentSetReport enumerate_edge_components_bruteforce(const Graph& graph, std::span<const double> edge_scalar,
                                                        double alpha, std::size_t cap = kDefaultVertexCap);

/// Line graph of `graph`: one vertex per edge, adjacent when the edges share
/// an endpoint. Throws cap_exceeded past `dual_edge_cap` dual edges.
Graph dual_graph(const Graph& graph, std::size_t dual_edge_cap = kDefaultDualEdgeCap);

/// Edge tree obtained by running the vertex sweep on the dual graph.
ScalarTree build_edge_tree_naive_dual(const Graph& graph, std::span<const double> edge_scalar,
                                      std::size_t dual_edge_cap = kDefaultDualEdgeCap);

/// Tree described by member sets only: node members -> parent members
/// (empty for roots). Equal for two trees iff they have the same super-node
/// partition and parent relation, regardless of node numbering.
using CanonicalTree = std::map<MemberSet, MemberSet>;
CanonicalTree canonical_form(const ScalarTree& tree);

}  // namespace gterrain::oracle
