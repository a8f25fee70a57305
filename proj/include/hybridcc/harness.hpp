#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hybridcc/types.hpp"

namespace hybridcc::harness {

enum class OpKind : char { Insert = 'i', Delete = 'd', Query = 'q', Checkpoint = 'c' };

struct StreamOp {
  OpKind kind = OpKind::Checkpoint;
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const StreamOp&, const StreamOp&) = default;
};

struct Stream {
  std::uint64_t num_vertices = 0;
  std::vector<StreamOp> ops;
  friend bool operator==(const Stream&, const Stream&) = default;
};

/// Throws MalformedStream with the offending line number.
Stream read_stream(std::istream& in);
void write_stream(std::ostream& out, const Stream& s);

/// Empty string when every insert is of an absent edge, every delete of a
/// present one, and all ids are in range; otherwise a description.
std::string well_formedness_error(const Stream& s);

// ---- generators (deterministic in seed; BadParams on bad input) ----

std::vector<Edge> gnp_edges(std::uint64_t num_vertices, double p, std::uint64_t seed);
/// Sparse G(V, p_out) periphery over all vertices plus a G(k, p_in) core on
/// k vertices chosen uniformly at random.
std::vector<Edge> planted_core_edges(std::uint64_t num_vertices, double p_out, std::size_t core_size, double p_in,
                                     std::uint64_t seed);

struct StreamShape {
  std::size_t query_every = 0;       // one random query per this many updates; 0 = none
  std::size_t checkpoint_every = 0;  // one checkpoint per this many updates; 0 = none
};

/// Inserts the edges in shuffled order.
Stream insert_stream(std::uint64_t num_vertices, const std::vector<Edge>& edges, const StreamShape& shape,
                     std::uint64_t seed);
/// Inserts every edge, then deletes every edge, each phase shuffled.
Stream insert_then_delete(std::uint64_t num_vertices, const std::vector<Edge>& edges, const StreamShape& shape,
                          std::uint64_t seed);

struct ChurnParams {
  std::uint64_t num_vertices = 0;
  std::size_t updates = 0;
  std::size_t core_size = 0;        // endpoints drawn from [0, core) with probability core_bias
  double core_bias = 0.0;
  double delete_fraction = 0.35;    // probability an update deletes a random present edge
  std::size_t phase_updates = 0;    // if set, alternate delete_fraction and 1 - delete_fraction
};
/// Random insert/delete churn concentrated on a core so that core vertices
/// cross the density threshold in both directions.
Stream churn_stream(const ChurnParams& params, const StreamShape& shape, std::uint64_t seed);

// ---- oracles ----

/// Smallest vertex id of each vertex's component, by union-find.
std::vector<VertexId> union_find_labels(std::uint64_t num_vertices, const std::vector<Edge>& edges);
/// Same labelling computed by breadth-first search.
std::vector<VertexId> bfs_labels(std::uint64_t num_vertices, const std::vector<Edge>& edges);
/// Answers every query of a well-formed stream offline (segment tree over
/// time with a rollback union-find).
std::vector<bool> offline_answers(const Stream& s);

// ---- runner ----

enum class Mode { Hybrid, Lossless, Sketch, Streaming };
Mode parse_mode(const std::string& name);
const char* mode_name(Mode m);

struct RunConfig {
  std::size_t delta_mult = 25;
  std::size_t demote_div = 2;
  std::size_t tiers = 0;
  std::size_t columns = 0;
  std::size_t buffer = 1024;
  std::uint64_t seed = 1;
  bool timing = true;              // false zeroes throughput and latency columns
  std::size_t audit_every = 0;     // structural audits every this many updates (sketch and hybrid)
  bool deep_audit = false;         // include per-node aggregate recomputation
};

struct MetricsRow {
  std::uint64_t step = 0;
  std::string mode;
  std::size_t counted_words_sparse = 0;
  std::size_t counted_words_dense = 0;
  std::size_t counted_words_iblt = 0;
  std::size_t buckets_total = 0;
  std::size_t dense_vertices = 0;
  double throughput_ups = 0;
  double query_latency_ns = 0;
  std::uint64_t oracle_mismatches = 0;
};

std::string metrics_header();
std::string metrics_line(const MetricsRow& r);
void write_metrics(std::ostream& out, const std::vector<MetricsRow>& rows);

struct AuditTotals {
  std::size_t audits = 0;
  std::size_t invariant1_failures = 0;
  std::size_t nesting_failures = 0;
  std::size_t invariant3_violations = 0;
  std::size_t other_failures = 0;  // mirror, aggregates, partition, degrees, tables
};

struct TransitionTotals {
  std::uint64_t promotions = 0;
  std::uint64_t demotions = 0;
  std::uint64_t aborted_demotions = 0;
  std::uint64_t hysteresis_violations = 0;
  std::uint64_t min_gap = UINT64_MAX;
};

struct RunResult {
  std::vector<bool> answers;
  std::vector<bool> expected;
  std::uint64_t query_mismatches = 0;
  std::uint64_t checkpoint_failures = 0;
  std::vector<MetricsRow> rows;
  AuditTotals audits;
  TransitionTotals transitions;
  std::size_t final_words = 0;
};

/// Replays the stream through one engine. Throws MalformedStream on a
/// deletion of an absent edge or a duplicate insertion.
RunResult run(Mode mode, const Stream& stream, const RunConfig& config);

}  // namespace hybridcc::harness
