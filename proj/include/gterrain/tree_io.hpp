#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gterrain/graph.hpp"
#include "gterrain/scalar_tree.hpp"

namespace gterrain {

/// Original ids for the elements of a tree: one vertex id per element for
/// vertex trees, an endpoint pair (first < second in dense order) for edge
/// trees.
struct ElementLabels {
  TreeKind kind = TreeKind::vertex;
  std::vector<OriginalId> first;
  std::vector<OriginalId> second;  // edge trees only

  static ElementLabels of(TreeKind kind, const Graph& graph);

  std::size_t size() const noexcept { return first.size(); }
  nlohmann::json label(std::uint32_t element) const;
};

struct TreeDocument {
  ScalarTree tree;
  ElementLabels labels;
};

/// {kind, synthetic_root, element_count, nodes:[{id, scalar, parent, members}], roots}
/// `synthetic_root` is set when the tree is a forest and the terrain adds a
/// common base node under its roots.
nlohmann::json tree_to_json(const ScalarTree& tree, const ElementLabels& labels);

/// Rebuilds the tree; dense element ids follow ascending original ids,
/// matching the compaction order of the loaders.
TreeDocument tree_from_json(const nlohmann::json& doc);

void write_tree_file(const std::string& path, const ScalarTree& tree, const ElementLabels& labels);
TreeDocument read_tree_file(const std::string& path);

const char* to_string(TreeKind kind) noexcept;

}  // namespace gterrain
