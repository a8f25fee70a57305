#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hybridcc/iblt.hpp"
#include "hybridcc/lossless_dc.hpp"
#include "hybridcc/sketch_dc.hpp"
#include "hybridcc/types.hpp"

namespace hybridcc {

struct HybridConfig {
  std::uint64_t num_vertices = 0;
  std::size_t delta = 0;        // 0 selects 25 * ceil(log2 V)
  std::size_t demote_div = 2;   // demote at degree <= delta / demote_div
  std::size_t tiers = 0;        // forwarded to the sketch engine
  std::size_t buffer = 1024;    // pending dense updates; 0 disables buffering
  std::uint64_t seed = 1;
};

struct HybridStats {
  std::uint64_t promotions = 0;
  std::uint64_t demotions = 0;
  std::uint64_t aborted_demotions = 0;
  std::uint64_t flushes = 0;
  std::uint64_t forced_flushes = 0;
  std::uint64_t buffered_updates = 0;
  /// Transitions of one vertex separated by fewer than delta_demote incident updates.
  std::uint64_t hysteresis_violations = 0;
  /// Smallest number of incident updates between two transitions of the same vertex.
  std::uint64_t min_transition_gap = UINT64_MAX;
};

struct HybridSpace {
  std::size_t sparse_words = 0;  // lossless store plus degree and flag arrays
  std::size_t dense_words = 0;   // sketch engine plus pending buffer
  std::size_t iblt_words = 0;
  std::size_t buckets = 0;
  std::size_t dense_vertices = 0;

  std::size_t total() const { return sparse_words + dense_words + iblt_words; }
};

struct HybridAudit {
  bool partition = true;    // edges split between the stores per the density rule
  bool mirror = true;       // dense forest edges are present in the lossless store
  bool degrees = true;
  bool dense_flags = true;  // flag <=> active in the sketch engine with a table
  bool iblts = true;        // each table equals one rebuilt from dense neighbors
  SketchDCAudit dense;

  bool ok() const { return partition && mirror && degrees && dense_flags && iblts && dense.ok(); }
};

/// Fully dynamic connectivity that keeps light vertices' edges in a lossless
/// store and edges among heavy vertices in the sketch engine, mirroring the
/// sketch engine's spanning forest into the lossless store so that every
/// query is answered there.
class HybridDC {
 public:
  explicit HybridDC(const HybridConfig& config);

  /// Throws DuplicateEdge / MissingEdge where detectable, SelfLoop,
  /// VertexOutOfRange. Edges between two heavy vertices are only checked
  /// against the mirrored forest.
  void insert_edge(Edge e);
  void delete_edge(Edge e);
  bool connected(VertexId u, VertexId v) const { return sparse_.connected(u, v); }
  std::uint64_t component_id(VertexId v) const { return sparse_.component_id(v); }

  void flush();
  std::size_t pending() const { return buffer_.size(); }

  std::uint64_t num_vertices() const { return degree_.size(); }
  std::size_t delta() const { return delta_; }
  std::size_t delta_demote() const { return delta_demote_; }
  std::size_t degree(VertexId v) const { return degree_.at(v); }
  bool is_dense(VertexId v) const { return dense_.at(v) != 0; }
  std::size_t num_dense() const { return iblts_.size(); }

  const LosslessDC& sparse() const { return sparse_; }
  const SketchDC& dense() const { return dense_engine_; }
  const HybridStats& stats() const { return stats_; }
  HybridSpace space() const;

  /// Requires an empty buffer. `graph` is the true current edge set.
  /// Aggregate checks inside the sketch engine run when `deep` is set.
  HybridAudit audit(const std::vector<Edge>& graph, bool deep) const;

 private:
  struct Pending {
    Edge edge;
    bool insert;
  };

  void check_edge(const Edge& e) const;
  void promote(VertexId v);
  void demote(VertexId v);
  void mirror(const ForestDelta& delta, const std::unordered_set<std::uint64_t>& exempt);
  void dense_update(const Edge& e, bool insert);
  void note_transition(VertexId v);

  LosslessDC sparse_;
  SketchDC dense_engine_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint8_t> dense_;
  std::unordered_map<VertexId, NeighborIblt> iblts_;
  std::vector<Pending> buffer_;
  std::vector<std::uint64_t> incident_updates_;
  std::vector<std::uint64_t> last_transition_;
  std::size_t delta_;
  std::size_t delta_demote_;
  std::size_t buffer_capacity_;
  IbltConfig iblt_config_;
  HybridStats stats_;
};

}  // namespace hybridcc
