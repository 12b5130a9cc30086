#include "gterrain/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "gterrain/error.hpp"
#include "text_util.hpp"

namespace gterrain {

namespace {

std::string at_line(std::size_t line_no) { return " (line " + std::to_string(line_no) + ")"; }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return in;
}

VertexId dense_or_throw(const Graph& graph, std::string_view token, std::size_t line_no) {
  auto id = detail::parse_number<OriginalId>(token);
  if (!id) throw Error(ErrorKind::parse, "bad vertex id '" + std::string(token) + "'" + at_line(line_no));
  auto dense = graph.dense_id(*id);
  if (!dense) throw Error(ErrorKind::unknown_id, "unknown vertex " + std::to_string(*id) + at_line(line_no));
  return *dense;
}

double value_or_throw(std::string_view token, std::size_t line_no) {
  auto value = detail::parse_number<double>(token);
  if (!value) throw Error(ErrorKind::parse, "non-numeric value '" + std::string(token) + "'" + at_line(line_no));
  if (!std::isfinite(*value)) throw Error(ErrorKind::parse, "non-finite value" + at_line(line_no));
  return *value;
}

// Shared by vertex and edge scalar readers: records each slot once and
// reports duplicates with conflicting values.
void assign_once(std::vector<double>& values, std::vector<bool>& seen, std::size_t slot, double value,
                 std::size_t line_no) {
  if (seen[slot]) {
    if (values[slot] != value)
      throw Error(ErrorKind::duplicate_definition, "conflicting duplicate definition" + at_line(line_no));
    return;
  }
  seen[slot] = true;
  values[slot] = value;
}

void require_coverage(const std::vector<bool>& seen, const char* what) {
  auto missing = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), false));
  if (missing > 0)
    throw Error(ErrorKind::coverage, std::to_string(missing) + " " + what + " without a scalar value");
}

}  // namespace

Graph Graph::from_edges(std::size_t vertex_count, std::span<const std::pair<VertexId, VertexId>> edges,
                        std::vector<OriginalId> original_ids) {
  if (original_ids.empty()) {
    original_ids.resize(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) original_ids[i] = static_cast<OriginalId>(i);
  }
  if (original_ids.size() != vertex_count)
    throw Error(ErrorKind::size_mismatch, "original id map does not match vertex count");
  if (!std::is_sorted(original_ids.begin(), original_ids.end()) ||
      std::adjacent_find(original_ids.begin(), original_ids.end()) != original_ids.end())
    throw Error(ErrorKind::invalid_argument, "original ids must be strictly increasing");

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= vertex_count || b >= vertex_count)
      throw Error(ErrorKind::invalid_argument, "edge endpoint out of range");
    if (a == b) continue;
    canon.push_back(a < b ? Edge{a, b} : Edge{b, a});
  }
  std::sort(canon.begin(), canon.end(), [](const Edge& x, const Edge& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  canon.erase(std::unique(canon.begin(), canon.end(),
                          [](const Edge& x, const Edge& y) { return x.u == y.u && x.v == y.v; }),
              canon.end());

  Graph g;
  g.original_ids_ = std::move(original_ids);
  g.offsets_.assign(vertex_count + 1, 0);
  for (const Edge& e : canon) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];

  // Lower neighbors of w (edges with e.v == w) go before higher ones
  // (e.u == w). Edges are sorted by (u, v), so both groups arrive ascending
  // and every adjacency list ends up sorted.
  std::vector<std::size_t> lower_count(vertex_count, 0);
  for (const Edge& e : canon) ++lower_count[e.v];
  std::vector<std::size_t> low(vertex_count), high(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    low[v] = g.offsets_[v];
    high[v] = g.offsets_[v] + lower_count[v];
  }
  g.neighbors_.resize(2 * canon.size());
  g.incident_.resize(2 * canon.size());
  for (EdgeId id = 0; id < canon.size(); ++id) {
    const Edge& e = canon[id];
    g.neighbors_[high[e.u]] = e.v;
    g.incident_[high[e.u]++] = id;
    g.neighbors_[low[e.v]] = e.u;
    g.incident_[low[e.v]++] = id;
  }
  g.edges_ = std::move(canon);
  return g;
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const noexcept {
  if (!valid_vertex(a) || !valid_vertex(b) || a == b) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident_edges(a)[static_cast<std::size_t>(it - nb.begin())];
}

std::optional<VertexId> Graph::dense_id(OriginalId id) const noexcept {
  auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), id);
  if (it == original_ids_.end() || *it != id) return std::nullopt;
  return static_cast<VertexId>(it - original_ids_.begin());
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<OriginalId, OriginalId>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 2)
      throw Error(ErrorKind::parse, "expected 'u v', got '" + line + "'" + at_line(line_no));
    auto a = detail::parse_number<OriginalId>(tokens[0]);
    auto b = detail::parse_number<OriginalId>(tokens[1]);
    if (!a || !b) throw Error(ErrorKind::parse, "non-integer vertex id in '" + line + "'" + at_line(line_no));
    raw.emplace_back(*a, *b);
  }
  if (raw.empty()) throw Error(ErrorKind::empty_graph, "edge list contains no edges");

  std::vector<OriginalId> ids;
  ids.reserve(2 * raw.size());
  for (auto [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto dense = [&](OriginalId id) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.emplace_back(dense(a), dense(b));
  const std::size_t n = ids.size();
  return Graph::from_edges(n, edges, std::move(ids));
}

Graph load_edge_list(const std::string& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

std::vector<double> parse_vertex_scalars(std::istream& in, const Graph& graph) {
  std::vector<double> values(graph.vertex_count(), 0.0);
  std::vector<bool> seen(graph.vertex_count(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 2) throw Error(ErrorKind::parse, "expected 'u value'" + at_line(line_no));
    VertexId v = dense_or_throw(graph, tokens[0], line_no);
    assign_once(values, seen, v, value_or_throw(tokens[1], line_no), line_no);
  }
  require_coverage(seen, "vertices");
  return values;
}

std::vector<double> read_vertex_scalars(const std::string& path, const Graph& graph) {
  auto in = open_input(path);
  return parse_vertex_scalars(in, graph);
}

ScalarGraph load_vertex_scalars(const std::string& path, Graph graph) {
  auto values = read_vertex_scalars(path, graph);
  return ScalarGraph{std::move(graph), std::move(values)};
}

std::vector<double> parse_edge_scalars(std::istream& in, const Graph& graph) {
  std::vector<double> values(graph.edge_count(), 0.0);
  std::vector<bool> seen(graph.edge_count(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 3) throw Error(ErrorKind::parse, "expected 'u v value'" + at_line(line_no));
    VertexId a = dense_or_throw(graph, tokens[0], line_no);
    VertexId b = dense_or_throw(graph, tokens[1], line_no);
    auto e = graph.find_edge(a, b);
    if (!e)
      throw Error(ErrorKind::unknown_id, "no edge (" + std::string(tokens[0]) + ", " + std::string(tokens[1]) +
                                             ") in graph" + at_line(line_no));
    assign_once(values, seen, *e, value_or_throw(tokens[2], line_no), line_no);
  }
  require_coverage(seen, "edges");
  return values;
}

std::vector<double> read_edge_scalars(const std::string& path, const Graph& graph) {
  auto in = open_input(path);
  return parse_edge_scalars(in, graph);
}

EdgeScalarGraph load_edge_scalars(const std::string& path, Graph graph) {
  auto values = read_edge_scalars(path, graph);
  return EdgeScalarGraph{std::move(graph), std::move(values)};
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  for (const Edge& e : graph.edges()) out << graph.original_id(e.u) << ' ' << graph.original_id(e.v) << '\n';
}

void write_vertex_scalars(std::ostream& out, const Graph& graph, std::span<const double> values) {
  if (values.size() != graph.vertex_count())
    throw Error(ErrorKind::size_mismatch, "vertex field length does not match vertex count");
  for (VertexId v = 0; v < graph.vertex_count(); ++v)
    out << graph.original_id(v) << ' ' << detail::format_double(values[v]) << '\n';
}

void write_edge_scalars(std::ostream& out, const Graph& graph, std::span<const double> values) {
  if (values.size() != graph.edge_count())
    throw Error(ErrorKind::size_mismatch, "edge field length does not match edge count");
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    out << graph.original_id(edge.u) << ' ' << graph.original_id(edge.v) << ' ' << detail::format_double(values[e])
        << '\n';
  }
}

void write_id_map(std::ostream& out, const Graph& graph) {
  out << "# dense original\n";
  for (VertexId v = 0; v < graph.vertex_count(); ++v) out << v << ' ' << graph.original_id(v) << '\n';
}

Neighborhood neighborhood(const Graph& graph, VertexId v, int hops) {
  if (!graph.valid_vertex(v)) throw Error(ErrorKind::unknown_id, "vertex " + std::to_string(v) + " out of range");
  if (hops < 1) throw Error(ErrorKind::invalid_argument, "hops must be >= 1");
  std::vector<int> dist(graph.vertex_count(), -1);
  std::vector<VertexId> frontier{v}, members{v};
  dist[v] = 0;
  for (int h = 1; h <= hops && !frontier.empty(); ++h) {
    std::vector<VertexId> next;
    for (VertexId x : frontier)
      for (VertexId y : graph.neighbors(x))
        if (dist[y] < 0) {
          dist[y] = h;
          next.push_back(y);
          members.push_back(y);
        }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return Neighborhood{v, hops, std::move(members)};
}

}  // namespace gterrain
