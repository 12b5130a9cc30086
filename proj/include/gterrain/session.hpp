#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gterrain/graph.hpp"
#include "gterrain/measures.hpp"
#include "gterrain/scalar_tree.hpp"
#include "gterrain/terrain.hpp"
#include "gterrain/tree_io.hpp"

namespace gterrain {

enum class FieldDomain { vertex, edge };

struct NamedField {
  std::string name;
  FieldDomain domain = FieldDomain::vertex;
  std::vector<double> values;
};

/// Resolves a field spec against a graph: "degree", "kcore", "ktruss",
/// "betweenness", "betweenness-normalized" or "file:PATH". File fields are
/// read as vertex scalars unless `domain` asks for edges.
NamedField resolve_field(const Graph& graph, const std::string& spec, FieldDomain domain);

/// Domain implied by a builtin spec; std::nullopt for files.
std::optional<FieldDomain> builtin_domain(const std::string& spec);

/// Graph whose vertices (and edges, for edge trees) are exactly the labelled
/// elements, so scalar files can be read against a tree document alone.
Graph graph_from_labels(const ElementLabels& labels);

/// Reads an element-keyed scalar file ("u value" or "u v value") for a tree.
std::vector<double> read_values_for_labels(const std::string& path, const ElementLabels& labels);

struct BuildTiming {
  double tree_seconds = 0.0;  // sweep + postprocessing + simplification
  double io_seconds = 0.0;    // loading inputs and computing the scalar field
};

struct SessionConfig {
  std::string graph_path;
  std::string scalar = "kcore";
  std::optional<TreeKind> kind;  // inferred from `scalar` when unset
  std::optional<std::size_t> bins;
  std::string color_by = "self";             // "self" or a field spec / name
  std::vector<std::string> extra_fields;     // field specs offered for recoloring
  std::string data_dir;                      // base for relative paths
};

/// Everything a viewer needs for one terrain, immutable once built.
class Session {
public:
  static Session build(const SessionConfig& config);
  Session(Graph graph, TreeKind kind, NamedField scalar, std::optional<std::size_t> bins,
          std::vector<NamedField> color_fields, const std::string& color_by);

  const Graph& graph() const noexcept { return graph_; }
  TreeKind kind() const noexcept { return kind_; }
  const ScalarTree& tree() const noexcept { return tree_; }
  const ElementLabels& labels() const noexcept { return labels_; }
  const Layout2D& layout() const noexcept { return layout_; }
  const TerrainMesh& mesh() const noexcept { return mesh_; }
  const BuildTiming& timing() const noexcept { return timing_; }

  /// Coloring fields keyed by name; "self" is the terrain scalar.
  const std::map<std::string, ColorAssignment>& colorings() const noexcept { return colorings_; }
  const std::string& active_coloring() const noexcept { return active_coloring_; }
  const std::string& scalar_name() const noexcept { return scalar_name_; }

private:
  Graph graph_;
  TreeKind kind_ = TreeKind::vertex;
  std::string scalar_name_;
  ScalarTree tree_;
  ElementLabels labels_;
  Layout2D layout_;
  TerrainMesh mesh_;
  BuildTiming timing_;
  std::map<std::string, ColorAssignment> colorings_;
  std::string active_coloring_ = "self";
};

/// Builds the super tree for a field, optionally simplified.
ScalarTree build_super_tree(const Graph& graph, TreeKind kind, const std::vector<double>& values,
                            std::optional<std::size_t> bins);

}  // namespace gterrain
