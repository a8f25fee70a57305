#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "hybridcc/euler_tour_forest.hpp"
#include "hybridcc/link_cut_tree.hpp"
#include "hybridcc/sketch.hpp"
#include "hybridcc/types.hpp"

namespace hybridcc {

struct SketchDCConfig {
  std::uint64_t num_vertices = 0;
  std::size_t tiers = 0;  // 0 selects ceil(log2 V)
  std::uint64_t seed = 1;
};

struct SketchDCStats {
  std::uint64_t samples = 0;
  std::uint64_t sample_fail = 0;      // column returned Fail
  std::uint64_t sample_invalid = 0;   // Good value that is not a cut edge
  std::uint64_t links = 0;            // top-forest links from repair
  std::uint64_t path_cuts = 0;        // heavier path edges displaced by a link
  std::uint64_t max_link_tier = 0;    // highest tier index at which an edge was first linked
};

struct SketchDCSpace {
  std::size_t sketch_nodes = 0;   // Euler-tour nodes in sketch tiers
  std::size_t buckets = 0;        // allocated buckets over all sketch-tier nodes
  std::uint32_t bucket_width = 32;
  std::size_t top_nodes = 0;      // Euler-tour nodes in the top tier
  std::size_t arc_entries = 0;    // per-tier tree-edge records
  std::size_t directory_entries = 0;
  std::size_t active_vertices = 0;
  std::size_t lct_nodes = 0;
  std::size_t lct_edges = 0;

  std::size_t bucket_words() const;
  std::size_t words() const;
};

struct SketchDCAudit {
  bool invariant1 = true;          // F_0 has no edges
  bool nested = true;              // F_i subset of F_{i+1}
  bool top_mirror = true;          // weighted forest equals F_top with lowest-tier weights
  bool aggregates = true;          // node values match directly built leaf columns
  std::size_t invariant3_violations = 0;

  bool ok() const { return invariant1 && nested && top_mirror && aggregates && invariant3_violations == 0; }
};

/// Sketch-based dynamic connectivity: tiers 0..T-1 are cutset forests whose
/// nodes carry BalloonSketch aggregates, tier T is the plain top forest, and
/// a weighted link-cut tree over F_T answers path-maximum queries.
class SketchDC {
 public:
  explicit SketchDC(const SketchDCConfig& config);

  std::size_t num_tiers() const { return tiers_.size(); }
  std::uint64_t num_vertices() const { return num_vertices_; }
  std::uint64_t universe() const { return universe_; }

  /// Throws DuplicateVertex / VertexOutOfRange.
  void insert_vertex(VertexId v);
  /// Throws InactiveVertex, or NonZeroDegree while v still has sketched edges.
  void delete_vertex(VertexId v);
  bool is_active(VertexId v) const { return directory_.count(v) != 0; }
  std::size_t num_active() const { return directory_.size(); }

  /// Toggles e in both endpoint sketches at every tier, cuts it if it is a
  /// forest edge, then repairs. Returns the net change to F_top.
  ForestDelta update_edge(Edge e);

  /// Cuts forest edge e at every tier from its weight upwards and repairs.
  /// Throws NotForestEdge.
  ForestDelta delete_forest_edge(Edge e);

  bool connected(VertexId u, VertexId v) const;
  /// Equal for two active vertices iff connected; valid until the next update.
  std::uint64_t component_id(VertexId v) const { return static_cast<std::uint64_t>(top_.root(handles(v).back())); }
  bool is_forest_edge(Edge e) const { return top_weights_.has_edge(e); }
  std::vector<Edge> forest_edges() const;
  std::vector<Edge> tier_forest_edges(std::size_t tier) const;
  std::size_t component_size(VertexId v, std::size_t tier) const;

  /// Column of the tier-i aggregate of v's component.
  const BalloonColumn& component_sketch(VertexId v, std::size_t tier) const;

  const SketchDCStats& stats() const { return stats_; }
  SketchDCSpace space() const;

  /// Structural audit. When `neighbors` is given, also rebuilds every leaf
  /// column from the reported incident edges and compares bit-exactly.
  SketchDCAudit audit(const std::function<std::vector<VertexId>(VertexId)>& neighbors = {}) const;

 private:
  struct SketchPayload {
    BalloonColumn column;
    void fold(const SketchPayload* l, const SketchPayload* r) {
      if (l) column.xor_unchecked(l->column);
      if (r) column.xor_unchecked(r->column);
      column.shrink_to_depth();
    }
    void detach(const SketchPayload* l, const SketchPayload* r) { fold(l, r); }
    void attach(const SketchPayload* l, const SketchPayload* r) { fold(l, r); }
  };
  struct NoPayload {
    void detach(const NoPayload*, const NoPayload*) {}
    void attach(const NoPayload*, const NoPayload*) {}
  };
  using SketchForest = EulerTourForest<SketchPayload>;
  using TopForest = EulerTourForest<NoPayload>;
  using NodeId = std::int32_t;

  struct Tier {
    SketchForest forest;
    BalloonColumn proto;  // empty column carrying this tier's seed
    std::unordered_map<std::uint64_t, std::pair<NodeId, NodeId>> arcs;
    Tier(std::uint64_t forest_seed, BalloonColumn empty) : forest(forest_seed), proto(std::move(empty)) {}
  };

  const std::vector<NodeId>& handles(VertexId v) const;
  bool same_component(VertexId a, VertexId b, std::size_t tier) const;
  void link_at(std::size_t tier, const Edge& e);
  void cut_at(std::size_t tier, const Edge& e);
  void cut_from(const Edge& e, int weight, ForestDelta& delta);
  /// Validated sample of the cut of v's tier-i component: returns true and
  /// sets (inside, outside) when the sample is a real crossing edge.
  bool query_cut(VertexId v, std::size_t tier, VertexId& inside, VertexId& outside, bool count);
  void repair(std::vector<std::vector<VertexId>>& affected, ForestDelta& delta);
  BalloonColumn leaf_column(std::size_t tier, NodeId node) const;

  std::uint64_t num_vertices_;
  std::uint64_t universe_;
  std::vector<Tier> tiers_;
  TopForest top_;
  std::unordered_map<std::uint64_t, std::pair<NodeId, NodeId>> top_arcs_;
  WeightedLinkCutTree top_weights_;
  // Per active vertex: node ids in tiers 0..T-1 followed by the top node.
  std::unordered_map<VertexId, std::vector<NodeId>> directory_;
  SketchDCStats stats_;
};

}  // namespace hybridcc
