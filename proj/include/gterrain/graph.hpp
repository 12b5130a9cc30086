#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gterrain {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using OriginalId = std::int64_t;

struct Edge {
  VertexId u;  // u < v
  VertexId v;
};

/// Immutable undirected simple graph in CSR form.
///
/// Vertices are dense ids in [0, vertex_count). Each dense id carries the
/// original id it was read under; original ids are strictly increasing in
/// dense order, so compaction preserves the natural id order. Edges are
/// numbered by ascending (u, v) with u < v.
class Graph {
public:
  Graph() = default;

  /// Builds a simple graph: edges are symmetrized, self-loops dropped and
  /// duplicates collapsed. `original_ids` defaults to the identity map.
  static Graph from_edges(std::size_t vertex_count,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          std::vector<OriginalId> original_ids = {});

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(VertexId v) const noexcept {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  const Edge& edge(EdgeId e) const noexcept { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const noexcept;

  OriginalId original_id(VertexId v) const noexcept { return original_ids_[v]; }
  std::span<const OriginalId> original_ids() const noexcept { return original_ids_; }
  std::optional<VertexId> dense_id(OriginalId id) const noexcept;

  bool valid_vertex(VertexId v) const noexcept { return v < vertex_count(); }

private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<EdgeId> incident_;
  std::vector<Edge> edges_;
  std::vector<OriginalId> original_ids_;
};

struct ScalarGraph {
  Graph graph;
  std::vector<double> vertex_scalar;
};

struct EdgeScalarGraph {
  Graph graph;
  std::vector<double> edge_scalar;
};

struct Neighborhood {
  VertexId center = 0;
  int hops = 1;
  std::vector<VertexId> members;  // sorted, contains center
};

// Text formats. Whitespace separated, one record per line, '#' starts a
// comment line. Vertex ids are original ids.
//   edge list:      "u v"
//   vertex scalars: "u value"
//   edge scalars:   "u v value"

Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

std::vector<double> parse_vertex_scalars(std::istream& in, const Graph& graph);
std::vector<double> read_vertex_scalars(const std::string& path, const Graph& graph);
ScalarGraph load_vertex_scalars(const std::string& path, Graph graph);

std::vector<double> parse_edge_scalars(std::istream& in, const Graph& graph);
std::vector<double> read_edge_scalars(const std::string& path, const Graph& graph);
EdgeScalarGraph load_edge_scalars(const std::string& path, Graph graph);

void write_edge_list(std::ostream& out, const Graph& graph);
void write_vertex_scalars(std::ostream& out, const Graph& graph, std::span<const double> values);
void write_edge_scalars(std::ostream& out, const Graph& graph, std::span<const double> values);

/// Persists the dense-to-original id map as "dense original" lines.
void write_id_map(std::ostream& out, const Graph& graph);

/// BFS ball of radius `hops` around v, v included.
Neighborhood neighborhood(const Graph& graph, VertexId v, int hops);

}  // namespace gterrain
