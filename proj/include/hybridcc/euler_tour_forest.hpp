#pragma once

// Euler-tour forest over an implicit treap. Every tree is stored as one
// cyclic tour in which each vertex contributes one node and each tree edge
// contributes two arc nodes, so a tree on n vertices has 3n - 2 nodes.
//
// Payload must provide
//   void detach(const Payload* l, const Payload* r);  // subtree value -> own value
//   void attach(const Payload* l, const Payload* r);  // own value -> subtree value
// which the treap calls around every child change. Payloads that store only
// the subtree value (XOR aggregates) implement both as the same fold.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hybridcc {

template <class Payload>
class EulerTourForest {
 public:
  using NodeId = std::int32_t;
  static constexpr NodeId kNull = -1;

  explicit EulerTourForest(std::uint64_t seed = 1) : rng_(seed) {}

  NodeId make_node(Payload payload) {
    NodeId id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      nodes_[id] = Node{};
    } else {
      id = static_cast<NodeId>(nodes_.size());
      nodes_.emplace_back();
    }
    Node& n = nodes_[id];
    n.prio = static_cast<std::uint32_t>(rng_());
    n.payload = std::move(payload);
    ++live_;
    return id;
  }

  /// Releases a node that is alone in its tree.
  void free_node(NodeId x) {
    assert(is_singleton(x));
    nodes_[x].payload = Payload{};
    nodes_[x].size = 0;
    free_.push_back(x);
    --live_;
  }

  std::size_t live_nodes() const { return live_; }

  NodeId root(NodeId x) const {
    while (nodes_[x].parent != kNull) x = nodes_[x].parent;
    return x;
  }
  bool same_tree(NodeId a, NodeId b) const { return root(a) == root(b); }
  bool is_singleton(NodeId x) const { return nodes_[root(x)].size == 1; }

  /// Node count of the tree containing x.
  std::size_t tree_size(NodeId x) const { return nodes_[root(x)].size; }
  /// Vertex count of the tree containing x, assuming it is a proper tour.
  std::size_t tree_vertices(NodeId x) const { return (tree_size(x) + 2) / 3; }

  /// Subtree value at the root of x's tree.
  const Payload& aggregate(NodeId x) const { return nodes_[root(x)].payload; }
  const Payload& payload(NodeId x) const { return nodes_[x].payload; }

  /// Zero-based position of x in its tour.
  std::size_t position(NodeId x) const {
    std::size_t pos = size_of(nodes_[x].left);
    while (nodes_[x].parent != kNull) {
      const NodeId p = nodes_[x].parent;
      if (nodes_[p].right == x) pos += size_of(nodes_[p].left) + 1;
      x = p;
    }
    return pos;
  }

  /// Rotates x's tour so that it starts at x.
  void reroot(NodeId x) {
    const std::size_t pos = position(x);
    if (pos == 0) return;
    auto [a, b] = split(root(x), pos);
    detach_root(merge(b, a));
  }

  /// Joins the trees of vertex nodes u and v with the fresh singleton arcs
  /// arc_uv and arc_vu.
  void link(NodeId u, NodeId v, NodeId arc_uv, NodeId arc_vu) {
    assert(!same_tree(u, v));
    assert(is_singleton(arc_uv) && is_singleton(arc_vu));
    reroot(u);
    reroot(v);
    const NodeId tu = root(u);
    const NodeId tv = root(v);
    detach_root(merge(merge(merge(tu, arc_uv), tv), arc_vu));
  }

  /// Removes the tree edge whose arcs are given; the arcs become singletons.
  void cut(NodeId arc_uv, NodeId arc_vu) {
    assert(same_tree(arc_uv, arc_vu));
    std::size_t p1 = position(arc_uv);
    std::size_t p2 = position(arc_vu);
    if (p1 > p2) std::swap(p1, p2);
    auto [x, rest] = split(root(arc_uv), p1);
    auto [a1, rest2] = split(rest, 1);
    auto [y, rest3] = split(rest2, p2 - p1 - 1);
    auto [a2, z] = split(rest3, 1);
    (void)a1;
    (void)a2;
    (void)y;
    detach_root(merge(z, x));
  }

  /// Applies f to x and every ancestor. Valid only for payloads where a
  /// change to one node's own value changes every enclosing subtree value
  /// in the same way (XOR aggregates).
  template <class F>
  void apply_path(NodeId x, F&& f) {
    for (; x != kNull; x = nodes_[x].parent) f(nodes_[x].payload);
  }

  /// Changes x's own value with f and recomputes the subtree values above it.
  template <class F>
  void modify_own(NodeId x, F&& f) {
    path_.clear();
    for (NodeId y = x; y != kNull; y = nodes_[y].parent) path_.push_back(y);
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) detach_payload(*it);
    f(nodes_[x].payload);
    for (NodeId y : path_) attach_payload(y);
  }

  /// Leftmost node of x's tree for which own(payload) holds, descending by
  /// sub(subtree payload). Returns kNull if none.
  template <class Sub, class Own>
  NodeId find_first(NodeId x, Sub&& sub, Own&& own) const {
    NodeId t = root(x);
    if (!sub(nodes_[t].payload)) return kNull;
    while (t != kNull) {
      const Node& n = nodes_[t];
      if (n.left != kNull && sub(nodes_[n.left].payload)) {
        t = n.left;
      } else if (own(n.payload)) {
        return t;
      } else {
        t = n.right;
        if (t != kNull && !sub(nodes_[t].payload)) return kNull;
      }
    }
    return kNull;
  }

  /// Visits every allocated node.
  template <class F>
  void for_each_live(F&& f) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].size != 0) f(static_cast<NodeId>(i), nodes_[i].payload);
    }
  }

  /// Visits every node of x's tree in tour order.
  template <class F>
  void for_each_in_tree(NodeId x, F&& f) const {
    std::vector<NodeId> stack;
    NodeId t = root(x);
    while (t != kNull || !stack.empty()) {
      while (t != kNull) {
        stack.push_back(t);
        t = nodes_[t].left;
      }
      t = stack.back();
      stack.pop_back();
      f(t);
      t = nodes_[t].right;
    }
  }

  /// Structural self-check used by tests: parent links, sizes, heap order.
  bool check_tree(NodeId x) const {
    const NodeId r = root(x);
    bool ok = true;
    std::vector<NodeId> stack{r};
    while (!stack.empty()) {
      const NodeId t = stack.back();
      stack.pop_back();
      const Node& n = nodes_[t];
      if (n.size != size_of(n.left) + size_of(n.right) + 1) ok = false;
      for (NodeId c : {n.left, n.right}) {
        if (c == kNull) continue;
        if (nodes_[c].parent != t || nodes_[c].prio > n.prio) ok = false;
        stack.push_back(c);
      }
    }
    return ok;
  }

  NodeId left_child(NodeId x) const { return nodes_[x].left; }
  NodeId right_child(NodeId x) const { return nodes_[x].right; }

 private:
  struct Node {
    NodeId left = kNull;
    NodeId right = kNull;
    NodeId parent = kNull;
    std::uint32_t prio = 0;
    std::uint32_t size = 1;
    Payload payload{};
  };

  std::uint32_t size_of(NodeId x) const { return x == kNull ? 0 : nodes_[x].size; }
  const Payload* payload_ptr(NodeId x) const { return x == kNull ? nullptr : &nodes_[x].payload; }

  void detach_payload(NodeId t) {
    Node& n = nodes_[t];
    n.payload.detach(payload_ptr(n.left), payload_ptr(n.right));
  }
  void attach_payload(NodeId t) {
    Node& n = nodes_[t];
    n.size = size_of(n.left) + size_of(n.right) + 1;
    n.payload.attach(payload_ptr(n.left), payload_ptr(n.right));
  }

  void detach_root(NodeId t) {
    if (t != kNull) nodes_[t].parent = kNull;
  }

  // First k nodes of t go left. Returned roots have no parent.
  std::pair<NodeId, NodeId> split(NodeId t, std::size_t k) {
    if (t == kNull) return {kNull, kNull};
    detach_payload(t);
    Node* n = &nodes_[t];
    if (size_of(n->left) >= k) {
      auto [a, b] = split(n->left, k);
      n = &nodes_[t];
      n->left = b;
      if (b != kNull) nodes_[b].parent = t;
      attach_payload(t);
      nodes_[t].parent = kNull;
      return {a, t};
    }
    auto [a, b] = split(n->right, k - size_of(n->left) - 1);
    n = &nodes_[t];
    n->right = a;
    if (a != kNull) nodes_[a].parent = t;
    attach_payload(t);
    nodes_[t].parent = kNull;
    return {t, b};
  }

  NodeId merge(NodeId a, NodeId b) {
    if (a == kNull) return b;
    if (b == kNull) return a;
    if (nodes_[a].prio > nodes_[b].prio) {
      detach_payload(a);
      const NodeId r = merge(nodes_[a].right, b);
      nodes_[a].right = r;
      nodes_[r].parent = a;
      attach_payload(a);
      nodes_[a].parent = kNull;
      return a;
    }
    detach_payload(b);
    const NodeId l = merge(a, nodes_[b].left);
    nodes_[b].left = l;
    nodes_[l].parent = b;
    attach_payload(b);
    nodes_[b].parent = kNull;
    return b;
  }

  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  std::vector<NodeId> path_;
  std::size_t live_ = 0;
  std::mt19937 rng_;
};

}  // namespace hybridcc
