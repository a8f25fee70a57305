#include <chrono>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "hybridcc/harness.hpp"
#include "hybridcc/hash.hpp"
#include "hybridcc/hybrid.hpp"
#include "hybridcc/lossless_dc.hpp"
#include "hybridcc/space.hpp"
#include "hybridcc/sketch_dc.hpp"
#include "hybridcc/streaming.hpp"

namespace hybridcc::harness {

Mode parse_mode(const std::string& name) {
  if (name == "hybrid") return Mode::Hybrid;
  if (name == "lossless") return Mode::Lossless;
  if (name == "sketch") return Mode::Sketch;
  if (name == "streaming") return Mode::Streaming;
  throw Error(ErrorCode::BadParams, "unknown mode '" + name + "'");
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Hybrid:
      return "hybrid";
    case Mode::Lossless:
      return "lossless";
    case Mode::Sketch:
      return "sketch";
    case Mode::Streaming:
      return "streaming";
  }
  return "?";
}

std::string metrics_header() {
  return "step,mode,counted_words_sparse,counted_words_dense,counted_words_iblt,buckets_total,dense_vertices,"
         "throughput_ups,query_latency_ns,oracle_mismatches";
}

std::string metrics_line(const MetricsRow& r) {
  char tail[96];
  std::snprintf(tail, sizeof tail, "%.1f,%.1f,%llu", r.throughput_ups, r.query_latency_ns,
                static_cast<unsigned long long>(r.oracle_mismatches));
  return std::to_string(r.step) + "," + r.mode + "," + std::to_string(r.counted_words_sparse) + "," +
         std::to_string(r.counted_words_dense) + "," + std::to_string(r.counted_words_iblt) + "," +
         std::to_string(r.buckets_total) + "," + std::to_string(r.dense_vertices) + "," + tail;
}

void write_metrics(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << metrics_header() << '\n';
  for (const MetricsRow& r : rows) out << metrics_line(r) << '\n';
}

namespace {

using Clock = std::chrono::steady_clock;

struct LiveGraph {
  std::unordered_set<std::uint64_t> keys;
  std::vector<std::unordered_set<VertexId>> adj;

  // Adjacency is only needed by audits.
  LiveGraph(std::uint64_t n, bool with_adj) : adj(with_adj ? n : 0) {}
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(keys.size());
    for (std::uint64_t k : keys) out.push_back(edge_from_key(k));
    return out;
  }
};

class Engine {
 public:
  virtual ~Engine() = default;
  virtual void insert(const Edge& e) = 0;
  virtual void erase(const Edge& e) = 0;
  virtual bool connected(VertexId u, VertexId v) = 0;
  /// Component representative per vertex; equal iff connected.
  virtual std::vector<std::uint64_t> components() = 0;
  virtual void fill_space(MetricsRow& row) const = 0;
  virtual std::size_t words() const = 0;
  virtual void audit(const LiveGraph&, bool, AuditTotals&) {}
  virtual void transitions(TransitionTotals&) const {}
};

class LosslessEngine : public Engine {
 public:
  LosslessEngine(std::uint64_t n, std::uint64_t seed) : dc_(n, seed), n_(n) {}
  void insert(const Edge& e) override { dc_.insert_edge(e); }
  void erase(const Edge& e) override { dc_.delete_edge(e); }
  bool connected(VertexId u, VertexId v) override { return dc_.connected(u, v); }
  std::vector<std::uint64_t> components() override {
    std::vector<std::uint64_t> out(n_);
    for (VertexId x = 0; x < n_; ++x) out[x] = dc_.component_id(x);
    return out;
  }
  void fill_space(MetricsRow& row) const override { row.counted_words_sparse = dc_.space().words(); }
  std::size_t words() const override { return dc_.space().words(); }
  void audit(const LiveGraph&, bool, AuditTotals& t) override {
    ++t.audits;
    if (!dc_.audit()) ++t.other_failures;
  }

 private:
  LosslessDC dc_;
  std::uint64_t n_;
};

void add_sketch_audit(const SketchDCAudit& a, AuditTotals& t) {
  if (!a.invariant1) ++t.invariant1_failures;
  if (!a.nested) ++t.nesting_failures;
  t.invariant3_violations += a.invariant3_violations;
  if (!a.top_mirror || !a.aggregates) ++t.other_failures;
}

class SketchEngine : public Engine {
 public:
  SketchEngine(std::uint64_t n, std::size_t tiers, std::uint64_t seed) : dc_({n, tiers, seed}), n_(n) {
    for (VertexId x = 0; x < n; ++x) dc_.insert_vertex(x);
  }
  void insert(const Edge& e) override { dc_.update_edge(e); }
  void erase(const Edge& e) override { dc_.update_edge(e); }
  bool connected(VertexId u, VertexId v) override { return dc_.connected(u, v); }
  std::vector<std::uint64_t> components() override {
    std::vector<std::uint64_t> out(n_);
    for (VertexId x = 0; x < n_; ++x) out[x] = dc_.component_id(x);
    return out;
  }
  void fill_space(MetricsRow& row) const override {
    const SketchDCSpace s = dc_.space();
    row.counted_words_dense = s.words();
    row.buckets_total = s.buckets;
    row.dense_vertices = s.active_vertices;
  }
  std::size_t words() const override { return dc_.space().words(); }
  void audit(const LiveGraph& g, bool deep, AuditTotals& t) override {
    ++t.audits;
    std::function<std::vector<VertexId>(VertexId)> nbrs;
    if (deep) nbrs = [&g](VertexId x) { return std::vector<VertexId>(g.adj[x].begin(), g.adj[x].end()); };
    add_sketch_audit(dc_.audit(nbrs), t);
  }

 private:
  SketchDC dc_;
  std::uint64_t n_;
};

class HybridEngine : public Engine {
 public:
  HybridEngine(std::uint64_t n, const RunConfig& c)
      : dc_({n, c.delta_mult * ceil_log2(n), c.demote_div, c.tiers, c.buffer, c.seed}), n_(n) {}
  void insert(const Edge& e) override { dc_.insert_edge(e); }
  void erase(const Edge& e) override { dc_.delete_edge(e); }
  bool connected(VertexId u, VertexId v) override { return dc_.connected(u, v); }
  std::vector<std::uint64_t> components() override {
    std::vector<std::uint64_t> out(n_);
    for (VertexId x = 0; x < n_; ++x) out[x] = dc_.component_id(x);
    return out;
  }
  void fill_space(MetricsRow& row) const override {
    const HybridSpace s = dc_.space();
    row.counted_words_sparse = s.sparse_words;
    row.counted_words_dense = s.dense_words;
    row.counted_words_iblt = s.iblt_words;
    row.buckets_total = s.buckets;
    row.dense_vertices = s.dense_vertices;
  }
  std::size_t words() const override { return dc_.space().total(); }
  void audit(const LiveGraph& g, bool deep, AuditTotals& t) override {
    dc_.flush();
    ++t.audits;
    const HybridAudit a = dc_.audit(g.edges(), deep);
    add_sketch_audit(a.dense, t);
    if (!a.partition || !a.mirror || !a.degrees || !a.dense_flags || !a.iblts) ++t.other_failures;
  }
  void transitions(TransitionTotals& t) const override {
    const HybridStats& s = dc_.stats();
    t.promotions += s.promotions;
    t.demotions += s.demotions;
    t.aborted_demotions += s.aborted_demotions;
    t.hysteresis_violations += s.hysteresis_violations;
    t.min_gap = std::min<std::uint64_t>(t.min_gap, s.min_transition_gap);
  }

 private:
  HybridDC dc_;
  std::uint64_t n_;
};

// Queries are answered from one end-of-prefix forest, recomputed lazily
// after each batch of updates.
class StreamingEngine : public Engine {
 public:
  StreamingEngine(std::uint64_t n, const RunConfig& c)
      : alg_({n, c.delta_mult * ceil_log2(n), c.columns, c.seed}), n_(n) {}
  void insert(const Edge& e) override {
    alg_.insert(e);
    forest_.reset();
  }
  void erase(const Edge& e) override {
    alg_.erase(e);
    forest_.reset();
  }
  bool connected(VertexId u, VertexId v) override {
    const auto& labels = forest().labels;
    return labels[u] == labels[v];
  }
  std::vector<std::uint64_t> components() override {
    const auto& labels = forest().labels;
    return {labels.begin(), labels.end()};
  }
  void fill_space(MetricsRow& row) const override {
    const StreamingSpace s = alg_.space();
    const std::size_t cols = alg_.num_columns();
    row.counted_words_sparse = n_ * hybridcc::words::kDegree + s.explicit_entries * hybridcc::words::kNeighborEntry;
    row.counted_words_dense = s.sketch_vertices * cols * hybridcc::words::kColumnHeader + s.buckets * hybridcc::words::bucket(s.bucket_width);
    row.counted_words_iblt = s.sketch_vertices * hybridcc::words::kIbltHeader + s.iblt_cells * hybridcc::words::bucket(32);
    row.buckets_total = s.buckets;
    row.dense_vertices = s.sketch_vertices;
  }
  std::size_t words() const override { return alg_.space().words(n_, alg_.num_columns()); }
  void transitions(TransitionTotals& t) const override {
    const StreamingStats& s = alg_.stats();
    t.promotions += s.promotions;
    t.demotions += s.demotions;
    t.aborted_demotions += s.aborted_demotions;
    t.hysteresis_violations += s.hysteresis_violations;
  }

 private:
  const SpanningForest& forest() {
    if (!forest_) forest_ = alg_.query();
    return *forest_;
  }
  HybridStreaming alg_;
  std::uint64_t n_;
  std::optional<SpanningForest> forest_;
};

std::unique_ptr<Engine> make_engine(Mode mode, std::uint64_t n, const RunConfig& c) {
  switch (mode) {
    case Mode::Lossless:
      return std::make_unique<LosslessEngine>(n, c.seed);
    case Mode::Sketch:
      return std::make_unique<SketchEngine>(n, c.tiers, c.seed);
    case Mode::Hybrid:
      return std::make_unique<HybridEngine>(n, c);
    case Mode::Streaming:
      return std::make_unique<StreamingEngine>(n, c);
  }
  throw Error(ErrorCode::BadParams, "unknown mode");
}

// Same partition iff the representative maps are consistent both ways.
bool same_partition(const std::vector<std::uint64_t>& reps, const std::vector<VertexId>& labels) {
  std::unordered_map<std::uint64_t, VertexId> fwd;
  std::unordered_map<VertexId, std::uint64_t> back;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const auto [f, fnew] = fwd.emplace(reps[x], labels[x]);
    if (f->second != labels[x]) return false;
    const auto [b, bnew] = back.emplace(labels[x], reps[x]);
    if (b->second != reps[x]) return false;
  }
  return true;
}

}  // namespace

RunResult run(Mode mode, const Stream& stream, const RunConfig& config) {
  const std::uint64_t n = stream.num_vertices;
  if (n < 2) throw Error(ErrorCode::BadParams, "stream needs at least two vertices");
  RunResult res;
  res.expected = offline_answers(stream);
  auto engine = make_engine(mode, n, config);
  LiveGraph graph(n, config.audit_every != 0);
  graph.keys.reserve(stream.ops.size() / 2 + 16);

  std::uint64_t updates = 0;
  std::uint64_t last_row_step = 0;
  bool have_row = false;
  double update_seconds = 0;
  double query_seconds = 0;
  std::uint64_t window_updates = 0;
  std::uint64_t window_queries = 0;

  const auto emit_row = [&] {
    MetricsRow row;
    row.step = updates;
    row.mode = mode_name(mode);
    engine->fill_space(row);
    if (config.timing) {
      row.throughput_ups = update_seconds > 0 ? window_updates / update_seconds : 0;
      row.query_latency_ns = window_queries ? query_seconds * 1e9 / window_queries : 0;
    }
    row.oracle_mismatches = res.query_mismatches + res.checkpoint_failures;
    res.rows.push_back(row);
    last_row_step = updates;
    have_row = true;
    update_seconds = query_seconds = 0;
    window_updates = window_queries = 0;
  };

  for (const StreamOp& op : stream.ops) {
    switch (op.kind) {
      case OpKind::Insert:
      case OpKind::Delete: {
        const Edge e(op.u, op.v);
        const bool ins = op.kind == OpKind::Insert;
        if (ins != (graph.keys.count(edge_key(e)) == 0)) {
          throw Error(ErrorCode::MalformedStream, ins ? "duplicate insert" : "delete of absent edge");
        }
        const auto t0 = Clock::now();
        if (ins) {
          engine->insert(e);
        } else {
          engine->erase(e);
        }
        update_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
        if (ins) {
          graph.keys.insert(edge_key(e));
        } else {
          graph.keys.erase(edge_key(e));
        }
        if (!graph.adj.empty()) {
          if (ins) {
            graph.adj[e.u].insert(e.v);
            graph.adj[e.v].insert(e.u);
          } else {
            graph.adj[e.u].erase(e.v);
            graph.adj[e.v].erase(e.u);
          }
        }
        ++updates;
        ++window_updates;
        if (config.audit_every && updates % config.audit_every == 0) engine->audit(graph, config.deep_audit, res.audits);
        break;
      }
      case OpKind::Query: {
        const auto t0 = Clock::now();
        const bool ans = engine->connected(op.u, op.v);
        query_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
        ++window_queries;
        if (ans != res.expected[res.answers.size()]) ++res.query_mismatches;
        res.answers.push_back(ans);
        break;
      }
      case OpKind::Checkpoint: {
        const std::vector<VertexId> truth = union_find_labels(n, graph.edges());
        if (!same_partition(engine->components(), truth)) ++res.checkpoint_failures;
        emit_row();
        break;
      }
    }
  }
  if (updates > 0 && (!have_row || last_row_step != updates)) emit_row();
  engine->transitions(res.transitions);
  res.final_words = engine->words();
  return res;
}

}  // namespace hybridcc::harness
