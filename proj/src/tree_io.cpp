#include "gterrain/tree_io.hpp"

#include <algorithm>
#include <fstream>

#include "gterrain/error.hpp"

namespace gterrain {

using nlohmann::json;

const char* to_string(TreeKind kind) noexcept { return kind == TreeKind::vertex ? "vertex" : "edge"; }

ElementLabels ElementLabels::of(TreeKind kind, const Graph& graph) {
  ElementLabels labels;
  labels.kind = kind;
  if (kind == TreeKind::vertex) {
    labels.first.assign(graph.original_ids().begin(), graph.original_ids().end());
    return labels;
  }
  labels.first.reserve(graph.edge_count());
  labels.second.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    labels.first.push_back(graph.original_id(e.u));
    labels.second.push_back(graph.original_id(e.v));
  }
  return labels;
}

json ElementLabels::label(std::uint32_t element) const {
  if (kind == TreeKind::vertex) return first[element];
  return json::array({first[element], second[element]});
}

json tree_to_json(const ScalarTree& tree, const ElementLabels& labels) {
  if (labels.kind != tree.kind() || labels.size() != tree.element_count())
    throw Error(ErrorKind::size_mismatch, "element labels do not match the tree");
  json nodes = json::array();
  for (NodeId n = 0; n < tree.size(); ++n) {
    json members = json::array();
    for (auto e : tree.members(n)) members.push_back(labels.label(e));
    json parent = tree.is_root(n) ? json(nullptr) : json(tree.parent(n));
    nodes.push_back(json{{"id", n}, {"scalar", tree.scalar(n)}, {"parent", parent}, {"members", std::move(members)}});
  }
  return json{{"kind", to_string(tree.kind())},
              {"synthetic_root", tree.roots().size() > 1},
              {"element_count", tree.element_count()},
              {"nodes", std::move(nodes)},
              {"roots", std::vector<NodeId>(tree.roots().begin(), tree.roots().end())}};
}

TreeDocument tree_from_json(const json& doc) {
  try {
    const std::string kind_name = doc.at("kind").get<std::string>();
    TreeKind kind;
    if (kind_name == "vertex")
      kind = TreeKind::vertex;
    else if (kind_name == "edge")
      kind = TreeKind::edge;
    else
      throw Error(ErrorKind::parse, "unknown tree kind '" + kind_name + "'");

    using Key = std::pair<OriginalId, OriginalId>;
    auto key_of = [&](const json& m) {
      if (kind == TreeKind::vertex) return Key{m.get<OriginalId>(), 0};
      if (!m.is_array() || m.size() != 2) throw Error(ErrorKind::parse, "edge member must be [u, v]");
      return Key{m[0].get<OriginalId>(), m[1].get<OriginalId>()};
    };

    const json& nodes = doc.at("nodes");
    std::vector<Key> keys;
    for (const json& node : nodes)
      for (const json& m : node.at("members")) keys.push_back(key_of(m));
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::duplicate_definition, "element listed twice in tree document");

    std::vector<double> scalar;
    std::vector<NodeId> parent;
    std::vector<std::uint32_t> offsets{0}, members;
    std::size_t k = 0;
    for (const json& node : nodes) {
      if (node.at("id").get<std::size_t>() != scalar.size()) throw Error(ErrorKind::parse, "node ids must be 0..n-1");
      scalar.push_back(node.at("scalar").get<double>());
      const json& p = node.at("parent");
      parent.push_back(p.is_null() ? kNoNode : p.get<NodeId>());
      for (std::size_t i = 0; i < node.at("members").size(); ++i, ++k)
        members.push_back(static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[k]) -
                                                     sorted.begin()));
      offsets.push_back(static_cast<std::uint32_t>(members.size()));
    }

    TreeDocument out{ScalarTree(kind, std::move(scalar), std::move(parent), std::move(offsets), std::move(members)),
                     ElementLabels{kind, {}, {}}};
    for (const Key& key : sorted) {
      out.labels.first.push_back(key.first);
      if (kind == TreeKind::edge) out.labels.second.push_back(key.second);
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bad tree document: ") + e.what());
  }
}

void write_tree_file(const std::string& path, const ScalarTree& tree, const ElementLabels& labels) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << tree_to_json(tree, labels).dump() << '\n';
}

TreeDocument read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, "'" + path + "' is not a tree document: " + e.what());
  }
  return tree_from_json(doc);
}

}  // namespace gterrain
