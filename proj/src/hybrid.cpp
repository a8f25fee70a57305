#include "hybridcc/hybrid.hpp"

#include <algorithm>

#include "hybridcc/hash.hpp"
#include "hybridcc/space.hpp"

namespace hybridcc {

namespace {

constexpr std::uint64_t kNever = UINT64_MAX;

std::size_t default_delta(std::uint64_t n) { return 25 * std::max<std::size_t>(1, ceil_log2(n)); }

}  // namespace

HybridDC::HybridDC(const HybridConfig& config)
    : sparse_(config.num_vertices, hash64(config.seed, 1)),
      dense_engine_({config.num_vertices, config.tiers, hash64(config.seed, 2)}),
      degree_(config.num_vertices, 0),
      dense_(config.num_vertices, 0),
      incident_updates_(config.num_vertices, 0),
      last_transition_(config.num_vertices, kNever),
      delta_(config.delta == 0 ? default_delta(config.num_vertices) : config.delta),
      delta_demote_(0),
      buffer_capacity_(config.buffer) {
  if (config.demote_div == 0) throw Error(ErrorCode::BadParams, "demotion divisor must be positive");
  delta_demote_ = delta_ / config.demote_div;
  if (delta_demote_ >= delta_) throw Error(ErrorCode::BadParams, "demotion threshold must be below delta");
  iblt_config_ = {config.num_vertices, std::max<std::size_t>(1, delta_demote_), hash64(config.seed, 3)};
  buffer_.reserve(buffer_capacity_);
}

void HybridDC::check_edge(const Edge& e) const {
  if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self loop");
  if (e.v >= degree_.size()) throw Error(ErrorCode::VertexOutOfRange, "edge endpoint out of range");
}

void HybridDC::note_transition(VertexId v) {
  if (last_transition_[v] != kNever) {
    const std::uint64_t gap = incident_updates_[v] - last_transition_[v];
    stats_.min_transition_gap = std::min(stats_.min_transition_gap, gap);
    if (gap < delta_demote_) ++stats_.hysteresis_violations;
  }
  last_transition_[v] = incident_updates_[v];
}

void HybridDC::mirror(const ForestDelta& delta, const std::unordered_set<std::uint64_t>& exempt) {
  for (const ForestEvent& ev : delta) {
    if (ev.added) {
      if (!sparse_.contains(ev.edge)) sparse_.insert_edge(ev.edge);
    } else if (!exempt.count(edge_key(ev.edge)) && sparse_.contains(ev.edge)) {
      sparse_.delete_edge(ev.edge);
    }
  }
}

void HybridDC::flush() {
  if (buffer_.empty()) return;
  ++stats_.flushes;
  ForestDelta all;
  for (const Pending& p : buffer_) {
    const ForestDelta d = dense_engine_.update_edge(p.edge);
    all.insert(all.end(), d.begin(), d.end());
  }
  buffer_.clear();
  mirror(net_forest_delta(all), {});
}

void HybridDC::dense_update(const Edge& e, bool insert) {
  // Anything that could change connectivity as seen by the lossless store
  // must reach the sketch engine before the next query.
  const bool forced = insert ? !sparse_.connected(e.u, e.v) : dense_engine_.is_forest_edge(e);
  if (buffer_capacity_ > 0 && !forced) {
    buffer_.push_back({e, insert});
    ++stats_.buffered_updates;
    if (buffer_.size() >= buffer_capacity_) flush();
    return;
  }
  if (!buffer_.empty()) {
    ++stats_.forced_flushes;
    flush();
  }
  mirror(dense_engine_.update_edge(e), {});
}

void HybridDC::promote(VertexId v) {
  if (!buffer_.empty()) {
    ++stats_.forced_flushes;
    flush();
  }
  dense_engine_.insert_vertex(v);
  NeighborIblt& mine = iblts_.emplace(v, NeighborIblt(iblt_config_)).first->second;
  dense_[v] = 1;
  ForestDelta all;
  for (const Edge& e : sparse_.incident_edges(v)) {
    const VertexId u = e.u == v ? e.v : e.u;
    if (!dense_[u]) continue;
    const ForestDelta d = dense_engine_.update_edge(e);
    all.insert(all.end(), d.begin(), d.end());
    iblts_.at(u).insert(v);
    mine.insert(u);
    sparse_.delete_edge(e);
  }
  mirror(net_forest_delta(all), {});
  ++stats_.promotions;
  note_transition(v);
}

void HybridDC::demote(VertexId v) {
  const RecoverResult r = iblts_.at(v).recover();
  if (!r.ok()) {
    ++stats_.aborted_demotions;
    return;
  }
  if (!buffer_.empty()) {
    ++stats_.forced_flushes;
    flush();
  }
  ForestDelta all;
  std::unordered_set<std::uint64_t> rehomed;
  for (VertexId u : r.elements) {
    const Edge e(u, v);
    const ForestDelta d = dense_engine_.update_edge(e);
    all.insert(all.end(), d.begin(), d.end());
    iblts_.at(u).erase(v);
    if (!sparse_.contains(e)) sparse_.insert_edge(e);
    rehomed.insert(edge_key(e));
  }
  mirror(net_forest_delta(all), rehomed);
  dense_engine_.delete_vertex(v);
  iblts_.erase(v);
  dense_[v] = 0;
  ++stats_.demotions;
  note_transition(v);
}

void HybridDC::insert_edge(Edge e) {
  check_edge(e);
  if (sparse_.contains(e)) throw Error(ErrorCode::DuplicateEdge, "edge already present");
  for (VertexId x : {e.u, e.v}) {
    ++degree_[x];
    ++incident_updates_[x];
    if (!dense_[x] && degree_[x] > delta_) promote(x);
  }
  if (dense_[e.u] && dense_[e.v]) {
    iblts_.at(e.u).insert(e.v);
    iblts_.at(e.v).insert(e.u);
    dense_update(e, true);
  } else {
    sparse_.insert_edge(e);
  }
}

void HybridDC::delete_edge(Edge e) {
  check_edge(e);
  const bool both_dense = dense_[e.u] && dense_[e.v];
  if ((!both_dense && !sparse_.contains(e)) || degree_[e.u] == 0 || degree_[e.v] == 0) {
    throw Error(ErrorCode::MissingEdge, "edge not present");
  }
  for (VertexId x : {e.u, e.v}) {
    --degree_[x];
    ++incident_updates_[x];
    if (dense_[x] && degree_[x] <= delta_demote_) demote(x);
  }
  if (dense_[e.u] && dense_[e.v]) {
    iblts_.at(e.u).erase(e.v);
    iblts_.at(e.v).erase(e.u);
    dense_update(e, false);
  } else {
    if (!buffer_.empty() && sparse_.is_forest_edge(e)) {
      ++stats_.forced_flushes;
      flush();
    }
    sparse_.delete_edge(e);
  }
}

HybridSpace HybridDC::space() const {
  HybridSpace s;
  const std::size_t n = degree_.size();
  s.sparse_words = sparse_.space().words() + n * words::kDegree + (n + 31) / 32;
  const SketchDCSpace d = dense_engine_.space();
  s.dense_words = d.words() + buffer_.size() * words::kPendingUpdate;
  s.buckets = d.buckets;
  for (const auto& [v, t] : iblts_) {
    s.iblt_words += words::kIbltHeader + words::kMapEntry + t.num_cells() * words::bucket(32);
  }
  s.dense_vertices = iblts_.size();
  return s;
}

HybridAudit HybridDC::audit(const std::vector<Edge>& graph, bool deep) const {
  HybridAudit a;
  const std::size_t n = degree_.size();
  if (!buffer_.empty()) a.partition = false;

  std::vector<std::uint32_t> deg(n, 0);
  std::vector<std::vector<VertexId>> dense_nbrs(n);
  std::size_t sparse_expected = 0;
  for (const Edge& e : graph) {
    ++deg[e.u];
    ++deg[e.v];
    if (dense_[e.u] && dense_[e.v]) {
      dense_nbrs[e.u].push_back(e.v);
      dense_nbrs[e.v].push_back(e.u);
      if (sparse_.contains(e) != dense_engine_.is_forest_edge(e)) a.partition = false;
    } else {
      ++sparse_expected;
      if (!sparse_.contains(e) || dense_engine_.is_forest_edge(e)) a.partition = false;
    }
  }
  a.degrees = deg == degree_;

  const std::vector<Edge> forest = dense_engine_.forest_edges();
  for (const Edge& e : forest) {
    if (!sparse_.contains(e) || !dense_[e.u] || !dense_[e.v]) a.mirror = false;
  }
  if (sparse_.num_edges() != sparse_expected + forest.size()) a.partition = false;

  for (VertexId v = 0; v < n; ++v) {
    const bool flag = dense_[v] != 0;
    if (flag != (iblts_.count(v) != 0) || flag != dense_engine_.is_active(v)) a.dense_flags = false;
    if (!flag || !a.dense_flags) continue;
    NeighborIblt rebuilt(iblt_config_);
    for (VertexId u : dense_nbrs[v]) rebuilt.insert(u);
    if (!(rebuilt == iblts_.at(v))) a.iblts = false;
  }

  if (deep) {
    a.dense = dense_engine_.audit([&dense_nbrs](VertexId v) { return dense_nbrs[v]; });
  } else {
    a.dense = dense_engine_.audit();
  }
  return a;
}

}  // namespace hybridcc
