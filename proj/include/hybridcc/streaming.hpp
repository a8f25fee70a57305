#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "hybridcc/iblt.hpp"
#include "hybridcc/sketch.hpp"
#include "hybridcc/types.hpp"

namespace hybridcc {

struct StreamingConfig {
  std::uint64_t num_vertices = 0;
  std::size_t delta = 0;    // 0 selects 25 * ceil(log2 V)
  std::size_t columns = 0;  // 0 selects ceil(log2 V)
  std::uint64_t seed = 1;
};

struct StreamingStats {
  std::uint64_t promotions = 0;
  std::uint64_t demotions = 0;
  std::uint64_t aborted_demotions = 0;
  /// Transitions of one vertex separated by fewer than delta/2 incident updates.
  std::uint64_t hysteresis_violations = 0;
};

struct StreamingSpace {
  std::size_t explicit_entries = 0;
  std::size_t sketch_vertices = 0;
  std::size_t buckets = 0;
  std::uint32_t bucket_width = 32;
  std::size_t iblt_cells = 0;

  std::size_t words(std::uint64_t num_vertices, std::size_t columns) const;
};

struct SpanningForest {
  std::vector<Edge> edges;             // sorted
  std::vector<VertexId> labels;        // smallest vertex id of each component
  std::size_t boruvka_rounds = 0;
  std::size_t failed_samples = 0;
};

/// Semi-streaming connectivity with per-vertex explicit neighbor sets for
/// light vertices and sketch matrices plus IBLTs for heavy ones. An edge
/// lives in one explicit endpoint's set, or in both sketches when both
/// endpoints are in sketch form.
class HybridStreaming {
 public:
  explicit HybridStreaming(const StreamingConfig& config);

  /// Throws MalformedUpdate on self loops, out-of-range ids, and deletions
  /// of edges that are detectably absent.
  void insert(Edge e);
  void erase(Edge e);

  /// Works on copies; the structure stays usable.
  SpanningForest query() const;

  std::uint64_t num_vertices() const { return vertices_.size(); }
  std::size_t delta() const { return delta_; }
  std::size_t demote_threshold() const { return delta_ / 2; }
  std::size_t num_columns() const { return columns_; }

  std::size_t degree(VertexId v) const { return vertices_.at(v).degree; }
  bool is_sketch(VertexId v) const { return vertices_.at(v).sketch != nullptr; }
  const std::set<VertexId>& explicit_neighbors(VertexId v) const { return vertices_.at(v).neighbors; }
  /// Sketch-form neighbors recovered from v's IBLT. Empty result on failure.
  RecoverResult recover_sketch_neighbors(VertexId v) const;
  const SketchMatrix* matrix(VertexId v) const;
  const NeighborIblt* iblt(VertexId v) const;
  std::uint64_t matrix_seed() const { return matrix_seed_; }

  const StreamingStats& stats() const { return stats_; }
  StreamingSpace space() const;
  /// Counted words held by one vertex.
  std::size_t vertex_words(VertexId v) const;

 private:
  struct SketchState {
    SketchMatrix matrix;
    NeighborIblt iblt;
  };
  struct VertexState {
    std::size_t degree = 0;
    std::set<VertexId> neighbors;
    std::unique_ptr<SketchState> sketch;
    std::uint64_t incident_updates = 0;
    std::uint64_t last_transition = 0;
    bool transitioned = false;
  };

  void check(const Edge& e) const;
  void toggle_sketch_edge(const Edge& e);
  void promote(VertexId v);
  void demote(VertexId v);
  void note_transition(VertexState& s);

  std::vector<VertexState> vertices_;
  std::size_t delta_;
  std::size_t columns_;
  std::uint64_t matrix_seed_;
  IbltConfig iblt_config_;
  std::uint64_t universe_;
  StreamingStats stats_;
};

}  // namespace hybridcc
