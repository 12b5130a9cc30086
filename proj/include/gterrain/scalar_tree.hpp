#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gterrain/graph.hpp"

namespace gterrain {

enum class TreeKind { vertex, edge };

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Rooted forest whose node heights are scalar values.
///
/// Every node owns a nonempty, sorted set of element ids (vertices for a
/// vertex tree, edges for an edge tree) and the member sets partition the
/// elements. A node is never lower than its parent. Trees straight out of a
/// builder hold one element per node; super trees merge equal-height
/// ancestor/descendant chains into single nodes.
///
/// Construction validates all of the above and precomputes children lists,
/// a preorder and subtree sizes; the object is immutable afterwards.
class ScalarTree {
public:
  ScalarTree() = default;
  ScalarTree(TreeKind kind, std::vector<double> scalar, std::vector<NodeId> parent,
             std::vector<std::uint32_t> member_offsets, std::vector<std::uint32_t> members);

  /// Tree with node i holding exactly element i.
  static ScalarTree one_per_element(TreeKind kind, std::vector<double> scalar, std::vector<NodeId> parent);

  TreeKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return scalar_.size(); }
  std::size_t element_count() const noexcept { return node_of_.size(); }

  double scalar(NodeId n) const noexcept { return scalar_[n]; }
  NodeId parent(NodeId n) const noexcept { return parent_[n]; }
  bool is_root(NodeId n) const noexcept { return parent_[n] == kNoNode; }
  std::span<const std::uint32_t> members(NodeId n) const noexcept {
    return {members_.data() + member_offsets_[n], members_.data() + member_offsets_[n + 1]};
  }
  std::span<const NodeId> children(NodeId n) const noexcept {
    return {children_.data() + child_offsets_[n], children_.data() + child_offsets_[n + 1]};
  }
  std::span<const NodeId> roots() const noexcept { return roots_; }
  NodeId node_of(std::uint32_t element) const noexcept { return node_of_[element]; }

  /// Nodes in the subtree of n, n included.
  std::size_t subtree_size(NodeId n) const noexcept { return subtree_size_[n]; }
  std::size_t descendant_count(NodeId n) const noexcept { return subtree_size_[n] - 1; }
  /// Elements held by the subtree of n.
  std::size_t subtree_element_count(NodeId n) const noexcept { return subtree_elements_[n]; }

  /// Depth-first preorder over all roots; a subtree occupies a contiguous range.
  std::span<const NodeId> preorder() const noexcept { return preorder_; }
  std::size_t preorder_index(NodeId n) const noexcept { return preorder_index_[n]; }

  std::span<const double> scalars() const noexcept { return scalar_; }
  std::span<const NodeId> parents() const noexcept { return parent_; }

  /// True when no node has the same height as its parent.
  bool is_super_tree() const noexcept;

private:
  TreeKind kind_ = TreeKind::vertex;
  std::vector<double> scalar_;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> member_offsets_{0};
  std::vector<std::uint32_t> members_;

  std::vector<std::uint32_t> child_offsets_{0};
  std::vector<NodeId> children_;
  std::vector<NodeId> roots_;
  std::vector<NodeId> node_of_;
  std::vector<NodeId> preorder_;
  std::vector<std::uint32_t> preorder_index_;
  std::vector<std::uint32_t> subtree_size_;
  std::vector<std::uint32_t> subtree_elements_;
};

/// Element ids sorted by decreasing scalar, ties by ascending id.
std::vector<std::uint32_t> descending_order(std::span<const double> scalar);

/// Per vertex, the incident edge that comes first in the sweep order
/// (kNoNode for isolated vertices).
struct MinIdEdgeIndex {
  std::vector<EdgeId> edge;
};
MinIdEdgeIndex min_id_edge_index(const Graph& graph, std::span<const std::uint32_t> sweep_rank);

/// Vertex sweep: vertices in decreasing scalar order, each one adopting the
/// current tops of the already-swept neighbor components.
ScalarTree build_vertex_scalar_tree(const Graph& graph, std::span<const double> vertex_scalar);
ScalarTree build_vertex_scalar_tree(const ScalarGraph& graph);

/// Edge sweep that only consults the min-id edge of each endpoint, so every
/// edge costs O(1) union-find operations after sorting.
ScalarTree build_edge_scalar_tree(const Graph& graph, std::span<const double> edge_scalar);
ScalarTree build_edge_scalar_tree(const EdgeScalarGraph& graph);

/// Merges each node with all descendants reachable through equal-height
/// links into one super node.
ScalarTree postprocess_super_tree(const ScalarTree& tree);

/// Snaps heights to the lower edge of `bins` uniform bins over the height
/// range, then merges ties. std::nullopt leaves the tree unchanged.
ScalarTree simplify(const ScalarTree& tree, std::optional<std::size_t> bins);

struct Component {
  NodeId root = kNoNode;
  double scalar = 0.0;                 // height of the root node
  std::vector<std::uint32_t> members;  // sorted element ids
};

struct Cut {
  double alpha = 0.0;
  std::vector<Component> components;  // ordered by root preorder position
};

/// All maximal subtrees whose root height is >= alpha.
Cut cut_at_alpha(const ScalarTree& tree, double alpha);

/// The maximal component at the element's own height that contains it.
Component mcc_of(const ScalarTree& tree, std::uint32_t element);

std::vector<std::uint32_t> subtree_members(const ScalarTree& tree, NodeId node);

}  // namespace gterrain
