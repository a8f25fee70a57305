#include "hybridcc/sketch_dc.hpp"

#include <algorithm>
#include <unordered_set>

#include "hybridcc/edge_codec.hpp"
#include "hybridcc/hash.hpp"
#include "hybridcc/space.hpp"

namespace hybridcc {

namespace {

constexpr std::uint64_t kTierSeedSalt = 0x7f4a7c159e3779b9ULL;
constexpr std::uint64_t kForestSeedSalt = 0x94d049bb133111ebULL;

}  // namespace

std::size_t SketchDCSpace::bucket_words() const { return buckets * words::bucket(bucket_width); }

std::size_t SketchDCSpace::words() const {
  return sketch_nodes * (words::kTreapNode + words::kColumnHeader) + bucket_words() + top_nodes * words::kTreapNode +
         arc_entries * words::kArcMapEntry + directory_entries * words::kDirectoryEntry +
         active_vertices * words::kMapEntry + lct_nodes * words::kLinkCutNode;
}

SketchDC::SketchDC(const SketchDCConfig& config)
    : num_vertices_(config.num_vertices),
      universe_(edge_universe(config.num_vertices)),
      top_(hash64(config.seed, kForestSeedSalt)),
      top_weights_(config.num_vertices) {
  if (config.num_vertices == 0 || config.num_vertices >= (1ULL << 31)) {
    throw Error(ErrorCode::BadParams, "vertex count out of range");
  }
  std::size_t count = config.tiers;
  if (count == 0) count = std::max<std::size_t>(1, ceil_log2(config.num_vertices));
  const std::uint64_t master = hash64(config.seed, kTierSeedSalt);
  tiers_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    tiers_.emplace_back(hash64(i, config.seed ^ kForestSeedSalt),
                        BalloonColumn(universe_, derive_column_seed(master, i)));
  }
}

const std::vector<SketchDC::NodeId>& SketchDC::handles(VertexId v) const {
  auto it = directory_.find(v);
  if (it == directory_.end()) throw Error(ErrorCode::InactiveVertex, "vertex " + std::to_string(v) + " is not active");
  return it->second;
}

void SketchDC::insert_vertex(VertexId v) {
  if (v >= num_vertices_) throw Error(ErrorCode::VertexOutOfRange, "vertex out of range");
  if (directory_.count(v)) throw Error(ErrorCode::DuplicateVertex, "vertex already active");
  std::vector<NodeId> h;
  h.reserve(tiers_.size() + 1);
  for (Tier& t : tiers_) h.push_back(t.forest.make_node(SketchPayload{t.proto}));
  h.push_back(top_.make_node({}));
  directory_.emplace(v, std::move(h));
}

void SketchDC::delete_vertex(VertexId v) {
  const std::vector<NodeId>& h = handles(v);
  if (!tiers_[0].forest.aggregate(h[0]).column.empty() || !top_.is_singleton(h.back())) {
    throw Error(ErrorCode::NonZeroDegree, "vertex still has incident edges");
  }
  for (std::size_t i = 0; i < tiers_.size(); ++i) {
    if (!tiers_[i].forest.is_singleton(h[i]) || !tiers_[i].forest.payload(h[i]).column.empty()) {
      throw Error(ErrorCode::NonZeroDegree, "vertex still has incident edges");
    }
  }
  for (std::size_t i = 0; i < tiers_.size(); ++i) tiers_[i].forest.free_node(h[i]);
  top_.free_node(h.back());
  directory_.erase(v);
}

bool SketchDC::same_component(VertexId a, VertexId b, std::size_t tier) const {
  const auto& ha = handles(a);
  const auto& hb = handles(b);
  if (tier == tiers_.size()) return top_.same_tree(ha.back(), hb.back());
  return tiers_[tier].forest.same_tree(ha[tier], hb[tier]);
}

std::size_t SketchDC::component_size(VertexId v, std::size_t tier) const {
  const auto& h = handles(v);
  if (tier == tiers_.size()) return top_.tree_vertices(h.back());
  return tiers_.at(tier).forest.tree_vertices(h[tier]);
}

const BalloonColumn& SketchDC::component_sketch(VertexId v, std::size_t tier) const {
  return tiers_.at(tier).forest.aggregate(handles(v).at(tier)).column;
}

bool SketchDC::connected(VertexId u, VertexId v) const {
  auto iu = directory_.find(u);
  auto iv = directory_.find(v);
  if (iu == directory_.end() || iv == directory_.end()) return false;
  return top_.same_tree(iu->second.back(), iv->second.back());
}

void SketchDC::link_at(std::size_t tier, const Edge& e) {
  const auto& hu = handles(e.u);
  const auto& hv = handles(e.v);
  if (tier == tiers_.size()) {
    const NodeId a = top_.make_node({});
    const NodeId b = top_.make_node({});
    top_.link(hu.back(), hv.back(), a, b);
    top_arcs_.emplace(edge_key(e), std::make_pair(a, b));
    return;
  }
  Tier& t = tiers_[tier];
  const NodeId a = t.forest.make_node(SketchPayload{t.proto});
  const NodeId b = t.forest.make_node(SketchPayload{t.proto});
  t.forest.link(hu[tier], hv[tier], a, b);
  t.arcs.emplace(edge_key(e), std::make_pair(a, b));
}

void SketchDC::cut_at(std::size_t tier, const Edge& e) {
  if (tier == tiers_.size()) {
    auto it = top_arcs_.find(edge_key(e));
    top_.cut(it->second.first, it->second.second);
    top_.free_node(it->second.first);
    top_.free_node(it->second.second);
    top_arcs_.erase(it);
    return;
  }
  Tier& t = tiers_[tier];
  auto it = t.arcs.find(edge_key(e));
  t.forest.cut(it->second.first, it->second.second);
  t.forest.free_node(it->second.first);
  t.forest.free_node(it->second.second);
  t.arcs.erase(it);
}

void SketchDC::cut_from(const Edge& e, int weight, ForestDelta& delta) {
  for (std::size_t i = static_cast<std::size_t>(weight); i <= tiers_.size(); ++i) cut_at(i, e);
  top_weights_.cut(e);
  delta.push_back({e, false});
}

bool SketchDC::query_cut(VertexId v, std::size_t tier, VertexId& inside, VertexId& outside, bool count) {
  const SampleResult s = component_sketch(v, tier).sample();
  if (count) ++stats_.samples;
  if (s.status == SampleStatus::Empty) return false;
  if (s.status == SampleStatus::Fail) {
    if (count) ++stats_.sample_fail;
    return false;
  }
  const Edge e = decode_edge(s.coordinate, num_vertices_);
  bool valid = is_active(e.u) && is_active(e.v);
  if (valid) {
    const bool a = same_component(e.u, v, tier);
    const bool b = same_component(e.v, v, tier);
    valid = a != b;
    inside = a ? e.u : e.v;
    outside = a ? e.v : e.u;
  }
  if (!valid && count) ++stats_.sample_invalid;
  return valid;
}

void SketchDC::repair(std::vector<std::vector<VertexId>>& affected, ForestDelta& delta) {
  const std::size_t top = tiers_.size();
  std::unordered_set<NodeId> seen;
  for (std::size_t i = 0; i < top; ++i) {
    seen.clear();
    for (std::size_t k = 0; k < affected[i].size(); ++k) {
      const VertexId x = affected[i][k];
      if (!is_active(x)) continue;
      const NodeId r = tiers_[i].forest.root(handles(x)[i]);
      if (!seen.insert(r).second) continue;
      if (component_size(x, i) != component_size(x, i + 1)) continue;
      VertexId in = 0;
      VertexId out = 0;
      if (!query_cut(x, i, in, out, true)) continue;
      std::size_t j = top + 1;
      if (top_weights_.connected(in, out)) {
        auto [f, w] = top_weights_.path_max(in, out);
        j = static_cast<std::size_t>(w);
        cut_from(f, w, delta);
        ++stats_.path_cuts;
      }
      const Edge e(in, out);
      for (std::size_t t = i + 1; t <= top; ++t) link_at(t, e);
      top_weights_.link(e, static_cast<int>(i + 1));
      delta.push_back({e, true});
      ++stats_.links;
      stats_.max_link_tier = std::max<std::uint64_t>(stats_.max_link_tier, i + 1);
      for (std::size_t t = i + 1; t < std::min(j, top); ++t) affected[t].push_back(in);
    }
  }
}

ForestDelta SketchDC::update_edge(Edge e) {
  if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self loop");
  if (e.v >= num_vertices_) throw Error(ErrorCode::VertexOutOfRange, "edge endpoint out of range");
  const auto& hu = handles(e.u);
  const auto& hv = handles(e.v);
  const std::uint64_t coord = encode_edge(e.u, e.v, num_vertices_);
  for (std::size_t i = 0; i < tiers_.size(); ++i) {
    const BalloonColumn::Placement p = tiers_[i].proto.place(coord);
    auto toggle = [&p](SketchPayload& payload) { payload.column.apply(p); };
    tiers_[i].forest.apply_path(hu[i], toggle);
    tiers_[i].forest.apply_path(hv[i], toggle);
  }
  ForestDelta delta;
  if (auto w = top_weights_.weight(e)) cut_from(e, *w, delta);
  std::vector<std::vector<VertexId>> affected(tiers_.size(), std::vector<VertexId>{e.u, e.v});
  repair(affected, delta);
  return net_forest_delta(delta);
}

ForestDelta SketchDC::delete_forest_edge(Edge e) {
  const auto w = top_weights_.weight(e);
  if (!w) throw Error(ErrorCode::NotForestEdge, "not a forest edge");
  ForestDelta delta;
  cut_from(e, *w, delta);
  std::vector<std::vector<VertexId>> affected(tiers_.size(), std::vector<VertexId>{e.u, e.v});
  repair(affected, delta);
  return net_forest_delta(delta);
}

std::vector<Edge> SketchDC::forest_edges() const { return tier_forest_edges(tiers_.size()); }

std::vector<Edge> SketchDC::tier_forest_edges(std::size_t tier) const {
  const auto& arcs = tier == tiers_.size() ? top_arcs_ : tiers_.at(tier).arcs;
  std::vector<Edge> out;
  out.reserve(arcs.size());
  for (const auto& [key, nodes] : arcs) out.push_back(edge_from_key(key));
  std::sort(out.begin(), out.end());
  return out;
}

SketchDCSpace SketchDC::space() const {
  SketchDCSpace s;
  s.bucket_width = tiers_.front().proto.width();
  for (const Tier& t : tiers_) {
    s.sketch_nodes += t.forest.live_nodes();
    s.arc_entries += t.arcs.size();
    t.forest.for_each_live([&s](NodeId, const SketchPayload& p) { s.buckets += p.column.depth(); });
  }
  s.top_nodes = top_.live_nodes();
  s.arc_entries += top_arcs_.size();
  s.active_vertices = directory_.size();
  s.directory_entries = directory_.size() * (tiers_.size() + 1);
  s.lct_nodes = top_weights_.num_nodes();
  s.lct_edges = top_weights_.num_edges();
  return s;
}

BalloonColumn SketchDC::leaf_column(std::size_t tier, NodeId node) const {
  const SketchForest& f = tiers_[tier].forest;
  BalloonColumn own = f.payload(node).column;
  const NodeId l = f.left_child(node);
  const NodeId r = f.right_child(node);
  if (l != SketchForest::kNull) own.xor_unchecked(f.payload(l).column);
  if (r != SketchForest::kNull) own.xor_unchecked(f.payload(r).column);
  own.shrink_to_depth();
  return own;
}

SketchDCAudit SketchDC::audit(const std::function<std::vector<VertexId>(VertexId)>& neighbors) const {
  SketchDCAudit a;
  const std::size_t top = tiers_.size();
  a.invariant1 = tiers_[0].arcs.empty();

  for (std::size_t i = 0; i < top; ++i) {
    const auto& upper = i + 1 == top ? top_arcs_ : tiers_[i + 1].arcs;
    for (const auto& [key, nodes] : tiers_[i].arcs) {
      if (!upper.count(key)) a.nested = false;
    }
  }

  const auto weighted = top_weights_.edges();
  if (weighted.size() != top_arcs_.size()) a.top_mirror = false;
  for (const auto& [e, w] : weighted) {
    if (!top_arcs_.count(edge_key(e))) {
      a.top_mirror = false;
      continue;
    }
    std::size_t lowest = top;
    for (std::size_t i = 0; i < top; ++i) {
      if (tiers_[i].arcs.count(edge_key(e))) {
        lowest = i;
        break;
      }
    }
    if (static_cast<std::size_t>(w) != lowest) a.top_mirror = false;
  }

  // A validated sample on a component that is not strictly inside its
  // next-tier component is exactly what repair would have acted on.
  for (std::size_t i = 0; i < top; ++i) {
    std::unordered_set<NodeId> seen;
    for (const auto& [v, h] : directory_) {
      if (!seen.insert(tiers_[i].forest.root(h[i])).second) continue;
      if (component_size(v, i) != component_size(v, i + 1)) continue;
      const SampleResult s = component_sketch(v, i).sample();
      if (s.status != SampleStatus::Good) continue;
      const Edge e = decode_edge(s.coordinate, num_vertices_);
      if (!is_active(e.u) || !is_active(e.v)) continue;
      if (same_component(e.u, v, i) != same_component(e.v, v, i)) ++a.invariant3_violations;
    }
  }

  if (neighbors) {
    for (std::size_t i = 0; i < top && a.aggregates; ++i) {
      std::unordered_map<NodeId, VertexId> owner;
      for (const auto& [v, h] : directory_) owner.emplace(h[i], v);
      tiers_[i].forest.for_each_live([&](NodeId id, const SketchPayload&) {
        if (!a.aggregates) return;
        const BalloonColumn own = leaf_column(i, id);
        auto it = owner.find(id);
        BalloonColumn expected = tiers_[i].proto;
        if (it != owner.end()) {
          for (VertexId w : neighbors(it->second)) expected.update(encode_edge(it->second, w, num_vertices_));
        }
        if (!(own == expected)) a.aggregates = false;
      });
    }
  }
  return a;
}

}  // namespace hybridcc
