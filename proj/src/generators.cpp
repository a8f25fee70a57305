#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "hybridcc/edge_codec.hpp"
#include "hybridcc/harness.hpp"

namespace hybridcc::harness {

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadParams, "probability outside [0, 1]");
}

// Index-skipping sampler over the pair universe of `n` local ids.
template <class F>
void sample_pairs(std::uint64_t n, double p, std::mt19937_64& rng, F&& emit) {
  if (n < 2 || p <= 0.0) return;
  const std::uint64_t universe = edge_universe(n);
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < universe; ++i) emit(decode_edge(i, n));
    return;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  for (std::uint64_t i = skip(rng); i < universe; i += 1 + skip(rng)) emit(decode_edge(i, n));
}

struct Shaper {
  const StreamShape& shape;
  std::mt19937_64& rng;
  std::uint64_t n;
  Stream& out;
  std::size_t updates = 0;

  void update(OpKind kind, const Edge& e) {
    out.ops.push_back({kind, e.u, e.v});
    ++updates;
    if (shape.query_every && updates % shape.query_every == 0) {
      out.ops.push_back({OpKind::Query, static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n)});
    }
    if (shape.checkpoint_every && updates % shape.checkpoint_every == 0) out.ops.push_back({OpKind::Checkpoint, 0, 0});
  }
};

}  // namespace

std::vector<Edge> gnp_edges(std::uint64_t num_vertices, double p, std::uint64_t seed) {
  check_p(p);
  if (num_vertices == 0 || num_vertices > (1ULL << 31)) throw Error(ErrorCode::BadParams, "vertex count out of range");
  std::mt19937_64 rng(seed);
  std::vector<Edge> out;
  sample_pairs(num_vertices, p, rng, [&out](const Edge& e) { out.push_back(e); });
  return out;
}

std::vector<Edge> planted_core_edges(std::uint64_t num_vertices, double p_out, std::size_t core_size, double p_in,
                                     std::uint64_t seed) {
  check_p(p_out);
  check_p(p_in);
  if (core_size > num_vertices) throw Error(ErrorCode::BadParams, "core larger than the graph");
  std::mt19937_64 rng(seed);
  std::vector<VertexId> perm(num_vertices);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> out;
  auto add = [&](const Edge& e) {
    if (seen.insert(edge_key(e)).second) out.push_back(e);
  };
  sample_pairs(num_vertices, p_out, rng, add);
  sample_pairs(core_size, p_in, rng, [&](const Edge& local) { add(Edge(perm[local.u], perm[local.v])); });
  return out;
}

Stream insert_stream(std::uint64_t num_vertices, const std::vector<Edge>& edges, const StreamShape& shape,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Stream s{num_vertices, {}};
  std::vector<Edge> order = edges;
  std::shuffle(order.begin(), order.end(), rng);
  Shaper sh{shape, rng, num_vertices, s};
  for (const Edge& e : order) sh.update(OpKind::Insert, e);
  return s;
}

Stream insert_then_delete(std::uint64_t num_vertices, const std::vector<Edge>& edges, const StreamShape& shape,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Stream s{num_vertices, {}};
  std::vector<Edge> order = edges;
  Shaper sh{shape, rng, num_vertices, s};
  std::shuffle(order.begin(), order.end(), rng);
  for (const Edge& e : order) sh.update(OpKind::Insert, e);
  std::shuffle(order.begin(), order.end(), rng);
  for (const Edge& e : order) sh.update(OpKind::Delete, e);
  return s;
}

Stream churn_stream(const ChurnParams& params, const StreamShape& shape, std::uint64_t seed) {
  const std::uint64_t n = params.num_vertices;
  if (n < 2 || params.core_size > n) throw Error(ErrorCode::BadParams, "bad churn parameters");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Stream s{n, {}};
  Shaper sh{shape, rng, n, s};
  std::vector<Edge> present;
  std::unordered_set<std::uint64_t> live;
  const std::uint64_t core = std::max<std::uint64_t>(2, params.core_size);
  while (sh.updates < params.updates) {
    double del = params.delete_fraction;
    if (params.phase_updates && (sh.updates / params.phase_updates) % 2 == 1) del = 1.0 - del;
    if (!present.empty() && coin(rng) < del) {
      const std::size_t k = rng() % present.size();
      const Edge e = present[k];
      present[k] = present.back();
      present.pop_back();
      live.erase(edge_key(e));
      sh.update(OpKind::Delete, e);
      continue;
    }
    const std::uint64_t span = coin(rng) < params.core_bias ? core : n;
    const Edge e(static_cast<VertexId>(rng() % span), static_cast<VertexId>(rng() % span));
    if (e.u == e.v || !live.insert(edge_key(e)).second) continue;
    present.push_back(e);
    sh.update(OpKind::Insert, e);
  }
  return s;
}

}  // namespace hybridcc::harness
