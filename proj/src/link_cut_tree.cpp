#include "hybridcc/link_cut_tree.hpp"

#include <algorithm>
#include <utility>

namespace hybridcc {

WeightedLinkCutTree::WeightedLinkCutTree(std::size_t num_vertices) : nodes_(num_vertices) {
  for (std::size_t i = 0; i < num_vertices; ++i) nodes_[i].best = static_cast<int>(i);
}

bool WeightedLinkCutTree::is_root(int x) const {
  const int p = nodes_[x].parent;
  return p == -1 || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
}

void WeightedLinkCutTree::push(int x) {
  Node& n = nodes_[x];
  if (!n.flip) return;
  std::swap(n.child[0], n.child[1]);
  for (int c : n.child) {
    if (c != -1) nodes_[c].flip = !nodes_[c].flip;
  }
  n.flip = false;
}

void WeightedLinkCutTree::pull(int x) {
  Node& n = nodes_[x];
  n.best = x;
  for (int c : n.child) {
    if (c != -1 && nodes_[nodes_[c].best].weight > nodes_[n.best].weight) n.best = nodes_[c].best;
  }
}

void WeightedLinkCutTree::rotate(int x) {
  const int p = nodes_[x].parent;
  const int g = nodes_[p].parent;
  const int dir = nodes_[p].child[1] == x ? 1 : 0;
  const int moved = nodes_[x].child[dir ^ 1];
  if (!is_root(p)) nodes_[g].child[nodes_[g].child[1] == p ? 1 : 0] = x;
  nodes_[x].parent = g;
  nodes_[x].child[dir ^ 1] = p;
  nodes_[p].parent = x;
  nodes_[p].child[dir] = moved;
  if (moved != -1) nodes_[moved].parent = p;
  pull(p);
  pull(x);
}

void WeightedLinkCutTree::splay(int x) {
  stack_.clear();
  for (int y = x;; y = nodes_[y].parent) {
    stack_.push_back(y);
    if (is_root(y)) break;
  }
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) push(*it);
  while (!is_root(x)) {
    const int p = nodes_[x].parent;
    if (!is_root(p)) {
      const int g = nodes_[p].parent;
      const bool zigzig = (nodes_[g].child[1] == p) == (nodes_[p].child[1] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
}

void WeightedLinkCutTree::access(int x) {
  int last = -1;
  for (int y = x; y != -1; y = nodes_[y].parent) {
    splay(y);
    nodes_[y].child[1] = last;
    pull(y);
    last = y;
  }
  splay(x);
}

void WeightedLinkCutTree::make_root(int x) {
  access(x);
  nodes_[x].flip = !nodes_[x].flip;
  push(x);
}

int WeightedLinkCutTree::find_root(int x) {
  access(x);
  for (push(x); nodes_[x].child[0] != -1; push(x)) x = nodes_[x].child[0];
  splay(x);
  return x;
}

void WeightedLinkCutTree::link_nodes(int a, int b) {
  make_root(a);
  nodes_[a].parent = b;
}

void WeightedLinkCutTree::cut_nodes(int a, int b) {
  make_root(a);
  access(b);
  // After access(b) with root a adjacent to b, a is b's left child.
  nodes_[b].child[0] = -1;
  nodes_[a].parent = -1;
  pull(b);
}

bool WeightedLinkCutTree::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  return find_root(static_cast<int>(u)) == find_root(static_cast<int>(v));
}

void WeightedLinkCutTree::link(Edge e, int weight) {
  int id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[id] = Node{};
  } else {
    id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[id].weight = weight;
  nodes_[id].best = id;
  nodes_[id].edge = edge_key(e);
  edge_node_[edge_key(e)] = id;
  link_nodes(static_cast<int>(e.u), id);
  link_nodes(id, static_cast<int>(e.v));
}

void WeightedLinkCutTree::cut(Edge e) {
  const auto it = edge_node_.find(edge_key(e));
  if (it == edge_node_.end()) throw Error(ErrorCode::NotForestEdge, "edge is not in the weighted forest");
  const int id = it->second;
  cut_nodes(static_cast<int>(e.u), id);
  cut_nodes(id, static_cast<int>(e.v));
  edge_node_.erase(it);
  free_.push_back(id);
}

std::optional<int> WeightedLinkCutTree::weight(Edge e) const {
  const auto it = edge_node_.find(edge_key(e));
  if (it == edge_node_.end()) return std::nullopt;
  return nodes_[it->second].weight;
}

void WeightedLinkCutTree::set_weight(Edge e, int weight) {
  const int id = edge_node_.at(edge_key(e));
  access(id);
  nodes_[id].weight = weight;
  pull(id);
}

std::pair<Edge, int> WeightedLinkCutTree::path_max(VertexId u, VertexId v) {
  make_root(static_cast<int>(u));
  access(static_cast<int>(v));
  const int best = nodes_[static_cast<int>(v)].best;
  return {edge_from_key(nodes_[best].edge), nodes_[best].weight};
}

std::vector<std::pair<Edge, int>> WeightedLinkCutTree::edges() const {
  std::vector<std::pair<Edge, int>> out;
  out.reserve(edge_node_.size());
  for (const auto& [key, id] : edge_node_) out.emplace_back(edge_from_key(key), nodes_[id].weight);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hybridcc
