#include "hybridcc/streaming.hpp"

#include <algorithm>
#include <unordered_map>

#include "hybridcc/edge_codec.hpp"
#include "hybridcc/hash.hpp"
#include "hybridcc/space.hpp"

namespace hybridcc {

namespace {

struct Dsu {
  std::vector<VertexId> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<VertexId>(i);
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

}  // namespace

std::size_t StreamingSpace::words(std::uint64_t num_vertices, std::size_t columns) const {
  return num_vertices * words::kDegree + explicit_entries * words::kNeighborEntry +
         sketch_vertices * (columns * words::kColumnHeader + words::kIbltHeader) +
         buckets * words::bucket(bucket_width) + iblt_cells * words::bucket(32);
}

HybridStreaming::HybridStreaming(const StreamingConfig& config)
    : vertices_(config.num_vertices),
      delta_(config.delta),
      columns_(config.columns),
      matrix_seed_(hash64(config.seed, 0x2545f4914f6cdd1dULL)),
      universe_(edge_universe(config.num_vertices)) {
  if (config.num_vertices < 2 || config.num_vertices > (1ULL << 31)) {
    throw Error(ErrorCode::BadParams, "vertex count out of range");
  }
  const std::size_t lg = std::max<std::size_t>(1, ceil_log2(config.num_vertices));
  if (delta_ == 0) delta_ = 25 * lg;
  if (columns_ == 0) columns_ = lg;
  if (delta_ < 2) throw Error(ErrorCode::BadParams, "delta must be at least 2");
  iblt_config_ = {config.num_vertices, std::max<std::size_t>(1, demote_threshold()), hash64(config.seed, 0x9e6c63d0676a9a99ULL)};
}

void HybridStreaming::check(const Edge& e) const {
  if (e.u == e.v) throw Error(ErrorCode::MalformedUpdate, "self loop");
  if (e.v >= vertices_.size()) throw Error(ErrorCode::MalformedUpdate, "vertex out of range");
}

void HybridStreaming::toggle_sketch_edge(const Edge& e) {
  const std::uint64_t coord = encode_edge(e.u, e.v, vertices_.size());
  SketchState& a = *vertices_[e.u].sketch;
  SketchState& b = *vertices_[e.v].sketch;
  a.matrix.update(coord);
  b.matrix.update(coord);
  a.iblt.toggle(e.v);
  b.iblt.toggle(e.u);
}

void HybridStreaming::note_transition(VertexState& s) {
  if (s.transitioned && s.incident_updates - s.last_transition < demote_threshold()) ++stats_.hysteresis_violations;
  s.transitioned = true;
  s.last_transition = s.incident_updates;
}

void HybridStreaming::promote(VertexId v) {
  VertexState& s = vertices_[v];
  s.sketch = std::make_unique<SketchState>(
      SketchState{SketchMatrix(universe_, columns_, matrix_seed_), NeighborIblt(iblt_config_)});
  const std::set<VertexId> stored = std::move(s.neighbors);
  s.neighbors.clear();
  for (VertexId w : stored) {
    if (vertices_[w].sketch) {
      toggle_sketch_edge(Edge(v, w));
    } else {
      vertices_[w].neighbors.insert(v);
    }
  }
  ++stats_.promotions;
  note_transition(s);
}

void HybridStreaming::demote(VertexId v) {
  VertexState& s = vertices_[v];
  const RecoverResult r = s.sketch->iblt.recover();
  if (!r.ok()) {
    ++stats_.aborted_demotions;
    return;
  }
  for (VertexId w : r.elements) {
    const std::uint64_t coord = encode_edge(v, w, vertices_.size());
    SketchState& o = *vertices_[w].sketch;
    o.matrix.update(coord);
    o.iblt.toggle(v);
  }
  s.sketch.reset();
  s.neighbors.insert(r.elements.begin(), r.elements.end());
  ++stats_.demotions;
  note_transition(s);
}

void HybridStreaming::insert(Edge e) {
  check(e);
  VertexState& a = vertices_[e.u];
  VertexState& b = vertices_[e.v];
  if (a.neighbors.count(e.v) || b.neighbors.count(e.u)) throw Error(ErrorCode::MalformedUpdate, "duplicate edge");
  ++a.degree;
  ++b.degree;
  ++a.incident_updates;
  ++b.incident_updates;
  if (!a.sketch && a.degree > delta_) promote(e.u);
  if (!b.sketch && b.degree > delta_) promote(e.v);
  if (a.sketch && b.sketch) {
    toggle_sketch_edge(e);
  } else if (!a.sketch) {
    a.neighbors.insert(e.v);
  } else {
    b.neighbors.insert(e.u);
  }
}

void HybridStreaming::erase(Edge e) {
  check(e);
  VertexState& a = vertices_[e.u];
  VertexState& b = vertices_[e.v];
  if (a.sketch && b.sketch) {
    toggle_sketch_edge(e);
  } else if (!a.neighbors.erase(e.v) && !b.neighbors.erase(e.u)) {
    throw Error(ErrorCode::MalformedUpdate, "deleting an absent edge");
  }
  if (a.degree == 0 || b.degree == 0) throw Error(ErrorCode::MalformedUpdate, "degree underflow");
  --a.degree;
  --b.degree;
  ++a.incident_updates;
  ++b.incident_updates;
  if (a.sketch && a.degree <= demote_threshold()) demote(e.u);
  if (b.sketch && b.degree <= demote_threshold()) demote(e.v);
}

RecoverResult HybridStreaming::recover_sketch_neighbors(VertexId v) const {
  const VertexState& s = vertices_.at(v);
  if (!s.sketch) return {RecoverStatus::Recovered, {}};
  return s.sketch->iblt.recover();
}

const SketchMatrix* HybridStreaming::matrix(VertexId v) const {
  const VertexState& s = vertices_.at(v);
  return s.sketch ? &s.sketch->matrix : nullptr;
}

const NeighborIblt* HybridStreaming::iblt(VertexId v) const {
  const VertexState& s = vertices_.at(v);
  return s.sketch ? &s.sketch->iblt : nullptr;
}

SpanningForest HybridStreaming::query() const {
  const std::size_t n = vertices_.size();
  SpanningForest out;
  Dsu dsu(n);
  auto unite = [&](VertexId x, VertexId y) {
    x = dsu.find(x);
    y = dsu.find(y);
    if (x == y) return false;
    dsu.parent[x] = y;
    return true;
  };

  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : vertices_[v].neighbors) {
      if (unite(v, w)) out.edges.emplace_back(v, w);
    }
  }

  std::unordered_map<VertexId, SketchMatrix> merged;
  for (VertexId v = 0; v < n; ++v) {
    if (!vertices_[v].sketch) continue;
    const VertexId r = dsu.find(v);
    auto it = merged.find(r);
    if (it == merged.end()) {
      merged.emplace(r, vertices_[v].sketch->matrix);
    } else {
      it->second.merge_in(vertices_[v].sketch->matrix);
    }
  }

  for (std::size_t round = 0; round < columns_ && merged.size() > 1; ++round) {
    ++out.boruvka_rounds;
    std::vector<Edge> found;
    bool any_pending = false;
    for (const auto& [root, m] : merged) {
      const SampleResult s = m.sample_column(round);
      if (s.status == SampleStatus::Empty) continue;
      if (s.status == SampleStatus::Good) {
        const Edge e = decode_edge(s.coordinate, n);
        const VertexId ra = dsu.find(e.u);
        const VertexId rb = dsu.find(e.v);
        if (vertices_[e.u].sketch && vertices_[e.v].sketch && ra != rb && (ra == root || rb == root)) {
          found.push_back(e);
          continue;
        }
      }
      ++out.failed_samples;
      any_pending = true;
    }
    if (found.empty() && !any_pending) break;
    for (const Edge& e : found) {
      const VertexId ra = dsu.find(e.u);
      const VertexId rb = dsu.find(e.v);
      if (ra == rb) continue;
      dsu.parent[ra] = rb;
      out.edges.push_back(e);
      auto ia = merged.find(ra);
      auto ib = merged.find(rb);
      ib->second.merge_in(ia->second);
      merged.erase(ia);
    }
  }

  std::sort(out.edges.begin(), out.edges.end());
  out.labels.assign(n, 0);
  std::vector<VertexId> first(n, static_cast<VertexId>(n));
  for (VertexId v = 0; v < n; ++v) {
    const VertexId r = dsu.find(v);
    if (first[r] == n) first[r] = v;
    out.labels[v] = first[r];
  }
  return out;
}

std::size_t HybridStreaming::vertex_words(VertexId v) const {
  const VertexState& s = vertices_.at(v);
  std::size_t w = words::kDegree + s.neighbors.size() * words::kNeighborEntry;
  if (s.sketch) {
    const SketchMatrix& m = s.sketch->matrix;
    w += columns_ * words::kColumnHeader + words::kIbltHeader;
    w += m.total_buckets() * words::bucket(m.column(0).width());
    w += s.sketch->iblt.num_cells() * words::bucket(32);
  }
  return w;
}

StreamingSpace HybridStreaming::space() const {
  StreamingSpace sp;
  for (const VertexState& s : vertices_) {
    sp.explicit_entries += s.neighbors.size();
    if (!s.sketch) continue;
    ++sp.sketch_vertices;
    sp.buckets += s.sketch->matrix.total_buckets();
    sp.bucket_width = s.sketch->matrix.column(0).width();
    sp.iblt_cells += s.sketch->iblt.num_cells();
  }
  return sp;
}

}  // namespace hybridcc
