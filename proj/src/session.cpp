#include "gterrain/session.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>

#include "gterrain/error.hpp"

namespace gterrain {

namespace {

constexpr std::string_view kFilePrefix = "file:";

std::string with_base(const std::string& dir, const std::string& path) {
  if (dir.empty() || path.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(dir) / path).string();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::optional<FieldDomain> builtin_domain(const std::string& spec) {
  if (spec == "degree" || spec == "kcore" || spec == "betweenness" || spec == "betweenness-normalized")
    return FieldDomain::vertex;
  if (spec == "ktruss") return FieldDomain::edge;
  return std::nullopt;
}

NamedField resolve_field(const Graph& graph, const std::string& spec, FieldDomain domain) {
  if (spec.rfind(kFilePrefix, 0) == 0) {
    const std::string path = spec.substr(kFilePrefix.size());
    NamedField f{std::filesystem::path(path).stem().string(), domain, {}};
    f.values = domain == FieldDomain::vertex ? read_vertex_scalars(path, graph) : read_edge_scalars(path, graph);
    return f;
  }
  auto natural = builtin_domain(spec);
  if (!natural) throw Error(ErrorKind::invalid_argument, "unknown field '" + spec + "'");
  if (*natural != domain)
    throw Error(ErrorKind::invalid_argument, "field '" + spec + "' is defined on " +
                                                 (*natural == FieldDomain::vertex ? "vertices" : "edges"));
  if (spec == "degree") return {spec, domain, degree_field(graph).values};
  if (spec == "kcore") return {spec, domain, kcore_field(graph).values};
  if (spec == "ktruss") return {spec, domain, ktruss_field(graph).values};
  BetweennessOptions options;
  options.normalized = spec == "betweenness-normalized";
  return {spec, domain, betweenness_field(graph, options).values};
}

Graph graph_from_labels(const ElementLabels& labels) {
  if (labels.kind == TreeKind::vertex)
    return Graph::from_edges(labels.first.size(), {}, labels.first);
  std::vector<OriginalId> ids(labels.first.begin(), labels.first.end());
  ids.insert(ids.end(), labels.second.begin(), labels.second.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](OriginalId id) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t i = 0; i < labels.size(); ++i) edges.emplace_back(dense(labels.first[i]), dense(labels.second[i]));
  const std::size_t n = ids.size();
  return Graph::from_edges(n, edges, std::move(ids));
}

std::vector<double> read_values_for_labels(const std::string& path, const ElementLabels& labels) {
  const Graph g = graph_from_labels(labels);
  return labels.kind == TreeKind::vertex ? read_vertex_scalars(path, g) : read_edge_scalars(path, g);
}

ScalarTree build_super_tree(const Graph& graph, TreeKind kind, const std::vector<double>& values,
                            std::optional<std::size_t> bins) {
  ScalarTree raw =
      kind == TreeKind::vertex ? build_vertex_scalar_tree(graph, values) : build_edge_scalar_tree(graph, values);
  ScalarTree super = postprocess_super_tree(raw);
  return bins ? simplify(super, bins) : super;
}

Session Session::build(const SessionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Graph graph = load_edge_list(with_base(config.data_dir, config.graph_path));

  TreeKind kind = config.kind.value_or(builtin_domain(config.scalar) == FieldDomain::edge ? TreeKind::edge
                                                                                         : TreeKind::vertex);
  const FieldDomain domain = kind == TreeKind::vertex ? FieldDomain::vertex : FieldDomain::edge;

  auto rebase = [&](const std::string& spec) {
    if (spec.rfind(kFilePrefix, 0) != 0) return spec;
    return std::string(kFilePrefix) + with_base(config.data_dir, spec.substr(kFilePrefix.size()));
  };
  NamedField scalar = resolve_field(graph, rebase(config.scalar), domain);

  std::vector<NamedField> colors;
  std::vector<std::string> specs = config.extra_fields;
  if (config.color_by != "self") specs.push_back(config.color_by);
  for (const auto& spec : specs) {
    auto natural = builtin_domain(spec);
    if (natural && *natural != domain) continue;  // cannot color this tree kind
    bool seen = false;
    for (const auto& f : colors) seen = seen || f.name == spec;
    if (!seen) colors.push_back(resolve_field(graph, rebase(spec), domain));
  }
  std::string active = "self";
  if (config.color_by != "self") active = colors.back().name;
  for (const auto& f : colors)
    if (config.color_by == f.name || rebase(config.color_by) == "file:" + f.name) active = f.name;

  const double io = seconds_since(start);
  Session s(std::move(graph), kind, std::move(scalar), config.bins, std::move(colors), active);
  s.timing_.io_seconds += io;
  return s;
}

Session::Session(Graph graph, TreeKind kind, NamedField scalar, std::optional<std::size_t> bins,
                 std::vector<NamedField> color_fields, const std::string& color_by)
    : graph_(std::move(graph)), kind_(kind), scalar_name_(scalar.name) {
  const auto start = std::chrono::steady_clock::now();
  tree_ = build_super_tree(graph_, kind_, scalar.values, bins);
  timing_.tree_seconds = seconds_since(start);

  labels_ = ElementLabels::of(kind_, graph_);
  layout_ = layout_2d(tree_);

  colorings_.emplace("self", assign_colors(layout_, node_color_values(tree_, {})));
  for (const auto& f : color_fields)
    colorings_.emplace(f.name, assign_colors(layout_, node_color_values(tree_, f.values)));
  if (!colorings_.count(color_by)) throw Error(ErrorKind::invalid_argument, "unknown coloring '" + color_by + "'");
  active_coloring_ = color_by;

  std::span<const double> active_values;
  for (const auto& f : color_fields)
    if (f.name == color_by) active_values = f.values;
  mesh_ = build_mesh(tree_, layout_, active_values);
}

}  // namespace gterrain
