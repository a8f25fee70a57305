#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hybridcc/types.hpp"

namespace hybridcc {

/// Link-cut tree over vertices [0, V) with weighted edges, answering
/// maximum-weight edge queries on tree paths. Edges are represented by their
/// own nodes so weights live on nodes.
class WeightedLinkCutTree {
 public:
  explicit WeightedLinkCutTree(std::size_t num_vertices);

  bool connected(VertexId u, VertexId v);
  /// Requires u and v in different trees.
  void link(Edge e, int weight);
  /// Throws NotForestEdge when e is not linked.
  void cut(Edge e);

  bool has_edge(Edge e) const { return edge_node_.count(edge_key(e)) != 0; }
  std::optional<int> weight(Edge e) const;
  void set_weight(Edge e, int weight);

  /// Heaviest edge on the u-v path; ties resolve to any heaviest edge.
  /// Requires connected(u, v) and u != v.
  std::pair<Edge, int> path_max(VertexId u, VertexId v);

  std::size_t num_edges() const { return edge_node_.size(); }
  std::size_t num_nodes() const { return nodes_.size() - free_.size(); }
  std::vector<std::pair<Edge, int>> edges() const;

 private:
  struct Node {
    int child[2] = {-1, -1};
    int parent = -1;
    bool flip = false;
    int weight = -1;  // -1 on vertex nodes
    int best = -1;    // node with the largest weight in the splay subtree
    std::uint64_t edge = 0;
  };

  bool is_root(int x) const;
  void push(int x);
  void pull(int x);
  void rotate(int x);
  void splay(int x);
  void access(int x);
  void make_root(int x);
  int find_root(int x);
  void link_nodes(int a, int b);
  void cut_nodes(int a, int b);

  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::vector<int> stack_;
  std::unordered_map<std::uint64_t, int> edge_node_;
};

}  // namespace hybridcc
