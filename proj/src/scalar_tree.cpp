#include "gterrain/scalar_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "gterrain/error.hpp"
#include "gterrain/union_find.hpp"

namespace gterrain {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::invalid_argument, "malformed tree: " + what); }

}  // namespace

ScalarTree::ScalarTree(TreeKind kind, std::vector<double> scalar, std::vector<NodeId> parent,
                       std::vector<std::uint32_t> member_offsets, std::vector<std::uint32_t> members)
    : kind_(kind),
      scalar_(std::move(scalar)),
      parent_(std::move(parent)),
      member_offsets_(std::move(member_offsets)),
      members_(std::move(members)) {
  const std::size_t n = scalar_.size();
  if (parent_.size() != n || member_offsets_.size() != n + 1 || member_offsets_.front() != 0 ||
      member_offsets_.back() != members_.size())
    malformed("inconsistent array sizes");

  node_of_.assign(members_.size(), kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    if (!std::isfinite(scalar_[v])) malformed("non-finite height");
    if (member_offsets_[v + 1] <= member_offsets_[v]) malformed("node without members");
    auto first = members_.begin() + member_offsets_[v];
    auto last = members_.begin() + member_offsets_[v + 1];
    std::sort(first, last);
    for (auto it = first; it != last; ++it) {
      if (*it >= node_of_.size()) malformed("member id out of range");
      if (node_of_[*it] != kNoNode) malformed("element in two nodes");
      node_of_[*it] = v;
    }
  }

  child_offsets_.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    NodeId p = parent_[v];
    if (p == kNoNode) {
      roots_.push_back(v);
      continue;
    }
    if (p >= n || p == v) malformed("bad parent");
    if (scalar_[v] < scalar_[p]) malformed("node lower than its parent");
    ++child_offsets_[p + 1];
  }
  for (std::size_t v = 0; v < n; ++v) child_offsets_[v + 1] += child_offsets_[v];
  children_.resize(child_offsets_[n]);
  {
    std::vector<std::uint32_t> cursor(child_offsets_.begin(), child_offsets_.end() - 1);
    for (NodeId v = 0; v < n; ++v)
      if (parent_[v] != kNoNode) children_[cursor[parent_[v]]++] = v;
  }

  preorder_.reserve(n);
  preorder_index_.assign(n, 0);
  std::vector<NodeId> stack;
  for (NodeId r : roots_) {
    stack.push_back(r);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      preorder_index_[v] = static_cast<std::uint32_t>(preorder_.size());
      preorder_.push_back(v);
      auto ch = children(v);
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
  }
  if (preorder_.size() != n) malformed("parent links contain a cycle");

  subtree_size_.assign(n, 1);
  subtree_elements_.assign(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    NodeId v = preorder_[i];
    subtree_elements_[v] += member_offsets_[v + 1] - member_offsets_[v];
    if (parent_[v] != kNoNode) {
      subtree_size_[parent_[v]] += subtree_size_[v];
      subtree_elements_[parent_[v]] += subtree_elements_[v];
    }
  }
}

ScalarTree ScalarTree::one_per_element(TreeKind kind, std::vector<double> scalar, std::vector<NodeId> parent) {
  const std::size_t n = scalar.size();
  std::vector<std::uint32_t> offsets(n + 1), members(n);
  std::iota(offsets.begin(), offsets.end(), 0u);
  std::iota(members.begin(), members.end(), 0u);
  return ScalarTree(kind, std::move(scalar), std::move(parent), std::move(offsets), std::move(members));
}

bool ScalarTree::is_super_tree() const noexcept {
  for (NodeId v = 0; v < size(); ++v)
    if (parent_[v] != kNoNode && scalar_[parent_[v]] == scalar_[v]) return false;
  return true;
}

std::vector<std::uint32_t> descending_order(std::span<const double> scalar) {
  // Sorting (value, id) pairs in place keeps comparisons cache-local.
  std::vector<std::pair<double, std::uint32_t>> keyed(scalar.size());
  for (std::uint32_t i = 0; i < keyed.size(); ++i) keyed[i] = {scalar[i], i};
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::uint32_t> order(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) order[i] = keyed[i].second;
  return order;
}

namespace {

std::vector<std::uint32_t> ranks_of(std::span<const std::uint32_t> order) {
  std::vector<std::uint32_t> rank(order.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

}  // namespace

MinIdEdgeIndex min_id_edge_index(const Graph& graph, std::span<const std::uint32_t> sweep_rank) {
  MinIdEdgeIndex index{std::vector<EdgeId>(graph.vertex_count(), kNoNode)};
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    for (EdgeId e : graph.incident_edges(v))
      if (index.edge[v] == kNoNode || sweep_rank[e] < sweep_rank[index.edge[v]]) index.edge[v] = e;
  }
  return index;
}

ScalarTree build_vertex_scalar_tree(const Graph& graph, std::span<const double> vertex_scalar) {
  const std::size_t n = graph.vertex_count();
  if (vertex_scalar.size() != n) throw Error(ErrorKind::size_mismatch, "vertex scalar count != vertex count");

  const auto order = descending_order(vertex_scalar);
  const auto rank = ranks_of(order);

  // Tree parentship is recorded apart from the union-find links; `top`
  // maps a set representative to the current root node of its subtree.
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<NodeId> top(n);
  std::iota(top.begin(), top.end(), 0u);
  DisjointSet sets(n);

  for (std::uint32_t i = 0; i < n; ++i) {
    const VertexId v = order[i];
    for (VertexId u : graph.neighbors(v)) {
      if (rank[u] >= i) continue;
      const auto ru = sets.find(u);
      const auto rv = sets.find(v);
      if (ru == rv) continue;
      parent[top[ru]] = v;
      top[sets.unite(ru, rv)] = v;
    }
  }
  return ScalarTree::one_per_element(TreeKind::vertex, {vertex_scalar.begin(), vertex_scalar.end()},
                                     std::move(parent));
}

ScalarTree build_vertex_scalar_tree(const ScalarGraph& graph) {
  return build_vertex_scalar_tree(graph.graph, graph.vertex_scalar);
}

ScalarTree build_edge_scalar_tree(const Graph& graph, std::span<const double> edge_scalar) {
  const std::size_t m = graph.edge_count();
  if (edge_scalar.size() != m) throw Error(ErrorKind::size_mismatch, "edge scalar count != edge count");

  const auto order = descending_order(edge_scalar);
  const auto rank = ranks_of(order);
  const auto min_edge = min_id_edge_index(graph, rank);

  std::vector<NodeId> parent(m, kNoNode);
  std::vector<NodeId> top(m);
  std::iota(top.begin(), top.end(), 0u);
  DisjointSet sets(m);

  for (std::uint32_t i = 0; i < m; ++i) {
    const EdgeId e = order[i];
    const Edge& ends = graph.edge(e);
    // Any earlier edge on a shared endpoint is already in the same set as
    // that endpoint's min-id edge, so checking those two suffices.
    for (VertexId x : {ends.u, ends.v}) {
      const EdgeId probe = min_edge.edge[x];
      if (rank[probe] >= i) continue;
      const auto rp = sets.find(probe);
      const auto re = sets.find(e);
      if (rp == re) continue;
      parent[top[rp]] = e;
      top[sets.unite(rp, re)] = e;
    }
  }
  return ScalarTree::one_per_element(TreeKind::edge, {edge_scalar.begin(), edge_scalar.end()}, std::move(parent));
}

ScalarTree build_edge_scalar_tree(const EdgeScalarGraph& graph) {
  return build_edge_scalar_tree(graph.graph, graph.edge_scalar);
}

ScalarTree postprocess_super_tree(const ScalarTree& tree) {
  const std::size_t n = tree.size();
  std::vector<NodeId> super_of(n, kNoNode);
  std::vector<double> scalar;
  std::vector<NodeId> parent;
  std::vector<std::vector<NodeId>> absorbed;  // original nodes per super node

  // Work list of nodes that start a super node; FIFO over all roots first.
  std::vector<NodeId> anchors(tree.roots().begin(), tree.roots().end());
  for (NodeId r : anchors) {
    super_of[r] = static_cast<NodeId>(scalar.size());
    scalar.push_back(tree.scalar(r));
    parent.push_back(kNoNode);
    absorbed.emplace_back();
  }
  std::vector<NodeId> queue;
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    const NodeId anchor = anchors[a];
    const NodeId group = super_of[anchor];
    queue.assign(1, anchor);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId q = queue[head];
      absorbed[group].push_back(q);
      for (NodeId c : tree.children(q)) {
        if (tree.scalar(c) == tree.scalar(q)) {
          queue.push_back(c);
        } else {
          super_of[c] = static_cast<NodeId>(scalar.size());
          scalar.push_back(tree.scalar(c));
          parent.push_back(group);
          absorbed.emplace_back();
          anchors.push_back(c);
        }
      }
    }
  }

  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> members;
  members.reserve(tree.element_count());
  for (const auto& group : absorbed) {
    for (NodeId q : group)
      for (auto e : tree.members(q)) members.push_back(e);
    offsets.push_back(static_cast<std::uint32_t>(members.size()));
  }
  return ScalarTree(tree.kind(), std::move(scalar), std::move(parent), std::move(offsets), std::move(members));
}

ScalarTree simplify(const ScalarTree& tree, std::optional<std::size_t> bins) {
  if (!bins) return tree;
  if (*bins == 0) throw Error(ErrorKind::invalid_argument, "bins must be >= 1");
  if (tree.size() == 0) return tree;

  auto [lo_it, hi_it] = std::minmax_element(tree.scalars().begin(), tree.scalars().end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(*bins);

  std::vector<double> snapped(tree.size());
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (!(width > 0)) {
      snapped[v] = lo;
      continue;
    }
    auto bin = static_cast<std::size_t>(std::floor((tree.scalar(v) - lo) / width));
    bin = std::min(bin, *bins - 1);
    snapped[v] = lo + static_cast<double>(bin) * width;
  }

  std::vector<std::uint32_t> offsets{0}, members;
  members.reserve(tree.element_count());
  for (NodeId v = 0; v < tree.size(); ++v) {
    for (auto e : tree.members(v)) members.push_back(e);
    offsets.push_back(static_cast<std::uint32_t>(members.size()));
  }
  ScalarTree binned(tree.kind(), std::move(snapped), {tree.parents().begin(), tree.parents().end()},
                    std::move(offsets), std::move(members));
  return postprocess_super_tree(binned);
}

std::vector<std::uint32_t> subtree_members(const ScalarTree& tree, NodeId node) {
  if (node >= tree.size()) throw Error(ErrorKind::unknown_id, "tree node " + std::to_string(node) + " out of range");
  std::vector<std::uint32_t> out;
  out.reserve(tree.subtree_element_count(node));
  const auto pre = tree.preorder();
  const std::size_t begin = tree.preorder_index(node);
  const std::size_t end = begin + tree.subtree_size(node);
  for (std::size_t i = begin; i < end; ++i)
    for (auto e : tree.members(pre[i])) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

Cut cut_at_alpha(const ScalarTree& tree, double alpha) {
  Cut cut{alpha, {}};
  for (NodeId v : tree.preorder()) {
    if (tree.scalar(v) < alpha) continue;
    const NodeId p = tree.parent(v);
    if (p != kNoNode && tree.scalar(p) >= alpha) continue;
    cut.components.push_back(Component{v, tree.scalar(v), subtree_members(tree, v)});
  }
  return cut;
}

Component mcc_of(const ScalarTree& tree, std::uint32_t element) {
  if (element >= tree.element_count())
    throw Error(ErrorKind::unknown_id, "element " + std::to_string(element) + " not in tree");
  NodeId n = tree.node_of(element);
  // Climb to the highest ancestor still at the same height.
  while (tree.parent(n) != kNoNode && tree.scalar(tree.parent(n)) == tree.scalar(n)) n = tree.parent(n);
  return Component{n, tree.scalar(n), subtree_members(tree, n)};
}

}  // namespace gterrain
