#include "gterrain/oracle.hpp"

#include <algorithm>
#include <string>

#include "gterrain/error.hpp"

namespace gterrain::oracle {

namespace {

void check_cap(std::size_t size, std::size_t cap) {
  if (size > cap)
    throw Error(ErrorKind::cap_exceeded, "oracle limited to " + std::to_string(cap) + " elements, got " +
                                             std::to_string(size));
}

}  // namespace

ComponentSetReport enumerate_maximal_components_bruteforce(const Graph& graph, std::span<const double> vertex_scalar,
                                                           double alpha, std::size_t cap) {
  check_cap(graph.vertex_count(), cap);
  if (vertex_scalar.size() != graph.vertex_count())
    throw Error(ErrorKind::size_mismatch, "vertex scalar count != vertex count");
  ComponentSetReport report{alpha, {}};
  std::vector<bool> visited(graph.vertex_count(), false);
  for (VertexId s = 0; s < graph.vertex_count(); ++s) {
    if (visited[s] || vertex_scalar[s] < alpha) continue;
    MemberSet component;
    std::vector<VertexId> stack{s};
    visited[s] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (VertexId u : graph.neighbors(v))
        if (!visited[u] && vertex_scalar[u] >= alpha) {
          visited[u] = true;
          stack.push_back(u);
        }
    }
    std::sort(component.begin(), component.end());
    report.components.insert(std::move(component));
  }
  return report;
}

ComponentSetReport enumerate_edge_components_bruteforce(const Graph& graph, std::span<const double> edge_scalar,
                                                        double alpha, std::size_t cap) {
  check_cap(graph.edge_count(), cap);
  if (edge_scalar.size() != graph.edge_count()) throw Error(ErrorKind::size_mismatch, "edge scalar count != edge count");
  ComponentSetReport report{alpha, {}};
  std::vector<bool> visited(graph.edge_count(), false);
  for (EdgeId s = 0; s < graph.edge_count(); ++s) {
    if (visited[s] || edge_scalar[s] < alpha) continue;
    MemberSet component;
    std::vector<EdgeId> stack{s};
    visited[s] = true;
    while (!stack.empty()) {
      EdgeId e = stack.back();
      stack.pop_back();
      component.push_back(e);
      for (VertexId x : {graph.edge(e).u, graph.edge(e).v})
        for (EdgeId f : graph.incident_edges(x))
          if (!visited[f] && edge_scalar[f] >= alpha) {
            visited[f] = true;
            stack.push_back(f);
          }
    }
    std::sort(component.begin(), component.end());
    report.components.insert(std::move(component));
  }
  return report;
}

Graph dual_graph(const Graph& graph, std::size_t dual_edge_cap) {
  std::size_t dual_edges = 0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    const std::size_t d = graph.degree(v);
    dual_edges += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  if (dual_edges > dual_edge_cap)
    throw Error(ErrorKind::cap_exceeded, "dual graph would have " + std::to_string(dual_edges) +
                                             " edges, cap is " + std::to_string(dual_edge_cap));
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(dual_edges);
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    auto inc = graph.incident_edges(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) edges.emplace_back(inc[i], inc[j]);
  }
  return Graph::from_edges(graph.edge_count(), edges);
}

ScalarTree build_edge_tree_naive_dual(const Graph& graph, std::span<const double> edge_scalar,
                                      std::size_t dual_edge_cap) {
  Graph dual = dual_graph(graph, dual_edge_cap);
  ScalarTree on_dual = build_vertex_scalar_tree(dual, edge_scalar);
  std::vector<std::uint32_t> offsets{0}, members;
  for (NodeId n = 0; n < on_dual.size(); ++n) {
    for (auto e : on_dual.members(n)) members.push_back(e);
    offsets.push_back(static_cast<std::uint32_t>(members.size()));
  }
  return ScalarTree(TreeKind::edge, {on_dual.scalars().begin(), on_dual.scalars().end()},
                    {on_dual.parents().begin(), on_dual.parents().end()}, std::move(offsets), std::move(members));
}

CanonicalTree canonical_form(const ScalarTree& tree) {
  CanonicalTree out;
  for (NodeId n = 0; n < tree.size(); ++n) {
    MemberSet own(tree.members(n).begin(), tree.members(n).end());
    MemberSet up;
    if (!tree.is_root(n)) up.assign(tree.members(tree.parent(n)).begin(), tree.members(tree.parent(n)).end());
    out.emplace(std::move(own), std::move(up));
  }
  return out;
}

}  // namespace gterrain::oracle
