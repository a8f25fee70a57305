#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "hybridcc/euler_tour_forest.hpp"
#include "hybridcc/types.hpp"

namespace hybridcc {

struct LosslessSpace {
  std::size_t edges = 0;
  std::size_t nontree_entries = 0;  // per-level non-tree incidence entries
  std::size_t forest_nodes = 0;     // live Euler-tour nodes over all levels
  std::size_t vertex_slots = 0;     // allocated per-level vertex directory slots
  std::size_t arc_entries = 0;      // per-level tree-edge arc records

  std::size_t words() const;
};

/// Fully dynamic connectivity with a leveled spanning forest (Holm, de
/// Lichtenberg and Thorup). Keeps the exact edge set.
class LosslessDC {
 public:
  explicit LosslessDC(std::uint64_t num_vertices, std::uint64_t seed = 1);

  /// Throws DuplicateEdge / MissingEdge, SelfLoop, VertexOutOfRange.
  ForestDelta insert_edge(Edge e);
  ForestDelta delete_edge(Edge e);

  bool connected(VertexId u, VertexId v) const;
  /// Equal for two vertices iff they are connected; valid until the next update.
  std::uint64_t component_id(VertexId v) const;
  bool contains(Edge e) const;
  std::vector<Edge> incident_edges(VertexId v) const;
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }

  bool is_forest_edge(Edge e) const;
  std::vector<Edge> forest_edges() const;
  /// -1 when e is absent.
  int edge_level(Edge e) const;

  std::uint64_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return info_.size(); }
  std::size_t num_levels() const { return levels_.size(); }
  /// Number of trees in the level-0 forest.
  std::size_t num_components() const;

  LosslessSpace space() const;

  /// Internal consistency: level bound, per-level forest nesting, counters.
  bool audit() const;

 private:
  struct Counts {
    std::uint32_t own_tree = 0;      // 1 on one arc of each tree edge whose level is exactly this one
    std::uint32_t own_nontree = 0;   // on vertex nodes: non-tree edges at this level
    std::uint64_t sub_tree = 0;
    std::uint64_t sub_nontree = 0;
    void detach(const Counts*, const Counts*) {}
    void attach(const Counts* l, const Counts* r) {
      sub_tree = own_tree + (l ? l->sub_tree : 0) + (r ? r->sub_tree : 0);
      sub_nontree = own_nontree + (l ? l->sub_nontree : 0) + (r ? r->sub_nontree : 0);
    }
  };
  using Forest = EulerTourForest<Counts>;
  using NodeId = Forest::NodeId;

  struct Level {
    Forest forest;
    std::vector<NodeId> vertex_node;                          // kNull when not allocated
    std::vector<std::uint64_t> node_owner;                    // node -> vertex or tagged edge key
    std::unordered_map<std::uint64_t, std::pair<NodeId, NodeId>> arcs;
    std::unordered_map<VertexId, std::set<VertexId>> nontree;
    explicit Level(std::uint64_t seed) : forest(seed) {}
  };

  struct EdgeInfo {
    std::uint32_t level = 0;
    bool tree = false;
  };

  void check_edge(const Edge& e) const;
  NodeId ensure_vertex(std::size_t lvl, VertexId x);
  void maybe_release(std::size_t lvl, VertexId x);
  void set_owner(std::size_t lvl, NodeId node, std::uint64_t owner);
  void link_at(std::size_t lvl, const Edge& e);
  void cut_at(std::size_t lvl, const Edge& e);
  void mark_tree(std::size_t lvl, const Edge& e, bool on);
  void add_nontree(std::size_t lvl, const Edge& e);
  void remove_nontree(std::size_t lvl, const Edge& e);
  bool replace(std::size_t lvl, const Edge& removed, ForestDelta& delta);

  std::vector<std::set<VertexId>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeInfo> info_;
  std::vector<Level> levels_;
};

}  // namespace hybridcc
