#include "hybridcc/lossless_dc.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "hybridcc/hash.hpp"
#include "hybridcc/space.hpp"

namespace hybridcc {

namespace {

constexpr std::uint64_t kVertexTag = 1ULL << 63;

}  // namespace

std::size_t LosslessSpace::words() const {
  return 2 * edges * words::kNeighborEntry + edges * words::kEdgeRecord + nontree_entries * words::kNeighborEntry +
         forest_nodes * (words::kTreapNode + words::kCountPayload) + vertex_slots * words::kDirectoryEntry +
         arc_entries * words::kArcMapEntry;
}

LosslessDC::LosslessDC(std::uint64_t num_vertices, std::uint64_t seed) : adjacency_(num_vertices) {
  if (num_vertices >= (1ULL << 31)) throw Error(ErrorCode::BadParams, "vertex count too large");
  const std::size_t count = num_vertices < 2 ? 1 : std::bit_width(num_vertices);  // floor(log2 V) + 1
  levels_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    levels_.emplace_back(hash64(i, seed));
    levels_.back().vertex_node.assign(num_vertices, Forest::kNull);
  }
  for (VertexId x = 0; x < num_vertices; ++x) ensure_vertex(0, x);
}

void LosslessDC::check_edge(const Edge& e) const {
  if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self loop");
  if (e.v >= adjacency_.size()) throw Error(ErrorCode::VertexOutOfRange, "edge endpoint out of range");
}

LosslessDC::NodeId LosslessDC::ensure_vertex(std::size_t lvl, VertexId x) {
  Level& L = levels_[lvl];
  if (L.vertex_node[x] == Forest::kNull) {
    const NodeId n = L.forest.make_node({});
    L.vertex_node[x] = n;
    set_owner(lvl, n, kVertexTag | x);
  }
  return L.vertex_node[x];
}

void LosslessDC::maybe_release(std::size_t lvl, VertexId x) {
  if (lvl == 0) return;
  Level& L = levels_[lvl];
  const NodeId n = L.vertex_node[x];
  if (n == Forest::kNull || !L.forest.is_singleton(n) || L.forest.payload(n).own_nontree != 0) return;
  L.forest.free_node(n);
  L.vertex_node[x] = Forest::kNull;
}

void LosslessDC::set_owner(std::size_t lvl, NodeId node, std::uint64_t owner) {
  auto& owners = levels_[lvl].node_owner;
  if (owners.size() <= static_cast<std::size_t>(node)) owners.resize(node + 1);
  owners[node] = owner;
}

void LosslessDC::link_at(std::size_t lvl, const Edge& e) {
  Level& L = levels_[lvl];
  const NodeId nu = ensure_vertex(lvl, e.u);
  const NodeId nv = ensure_vertex(lvl, e.v);
  const NodeId a = L.forest.make_node({});
  const NodeId b = L.forest.make_node({});
  set_owner(lvl, a, edge_key(e));
  set_owner(lvl, b, edge_key(e));
  L.forest.link(nu, nv, a, b);
  L.arcs[edge_key(e)] = {a, b};
}

void LosslessDC::cut_at(std::size_t lvl, const Edge& e) {
  Level& L = levels_[lvl];
  const auto it = L.arcs.find(edge_key(e));
  assert(it != L.arcs.end());
  const auto [a, b] = it->second;
  L.forest.cut(a, b);
  L.forest.free_node(a);
  L.forest.free_node(b);
  L.arcs.erase(it);
}

void LosslessDC::mark_tree(std::size_t lvl, const Edge& e, bool on) {
  Level& L = levels_[lvl];
  const NodeId a = L.arcs.at(edge_key(e)).first;
  L.forest.modify_own(a, [on](Counts& c) { c.own_tree = on ? 1 : 0; });
}

void LosslessDC::add_nontree(std::size_t lvl, const Edge& e) {
  Level& L = levels_[lvl];
  for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
    const NodeId n = ensure_vertex(lvl, x);
    L.nontree[x].insert(y);
    L.forest.modify_own(n, [](Counts& c) { ++c.own_nontree; });
  }
}

void LosslessDC::remove_nontree(std::size_t lvl, const Edge& e) {
  Level& L = levels_[lvl];
  for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
    auto it = L.nontree.find(x);
    it->second.erase(y);
    if (it->second.empty()) L.nontree.erase(it);
    L.forest.modify_own(L.vertex_node[x], [](Counts& c) { --c.own_nontree; });
  }
}

ForestDelta LosslessDC::insert_edge(Edge e) {
  check_edge(e);
  if (info_.count(edge_key(e))) throw Error(ErrorCode::DuplicateEdge, "edge already present");
  adjacency_[e.u].insert(e.v);
  adjacency_[e.v].insert(e.u);
  if (!connected(e.u, e.v)) {
    info_[edge_key(e)] = {0, true};
    link_at(0, e);
    mark_tree(0, e, true);
    return {{e, true}};
  }
  info_[edge_key(e)] = {0, false};
  add_nontree(0, e);
  return {};
}

ForestDelta LosslessDC::delete_edge(Edge e) {
  check_edge(e);
  const auto it = info_.find(edge_key(e));
  if (it == info_.end()) throw Error(ErrorCode::MissingEdge, "edge not present");
  const EdgeInfo info = it->second;
  info_.erase(it);
  adjacency_[e.u].erase(e.v);
  adjacency_[e.v].erase(e.u);
  if (!info.tree) {
    remove_nontree(info.level, e);
    maybe_release(info.level, e.u);
    maybe_release(info.level, e.v);
    return {};
  }
  mark_tree(info.level, e, false);
  for (std::size_t i = 0; i <= info.level; ++i) cut_at(i, e);
  ForestDelta delta{{e, false}};
  for (std::size_t i = info.level + 1; i-- > 0;) {
    if (replace(i, e, delta)) break;
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    maybe_release(i, e.u);
    maybe_release(i, e.v);
  }
  return delta;
}

bool LosslessDC::replace(std::size_t lvl, const Edge& removed, ForestDelta& delta) {
  Level& L = levels_[lvl];
  NodeId small = L.vertex_node[removed.u];
  const NodeId other = L.vertex_node[removed.v];
  if (L.forest.tree_size(other) < L.forest.tree_size(small)) small = other;

  // Raise every tree edge of the smaller side whose level is exactly lvl.
  const auto has_tree = [](const Counts& c) { return c.sub_tree > 0; };
  const auto own_tree = [](const Counts& c) { return c.own_tree > 0; };
  for (NodeId n; (n = L.forest.find_first(small, has_tree, own_tree)) != Forest::kNull;) {
    const Edge t = edge_from_key(L.node_owner[n]);
    if (lvl + 1 >= levels_.size()) throw std::logic_error("tree edge level exceeds bound");
    mark_tree(lvl, t, false);
    link_at(lvl + 1, t);
    mark_tree(lvl + 1, t, true);
    info_[edge_key(t)].level = static_cast<std::uint32_t>(lvl + 1);
  }

  const auto has_nt = [](const Counts& c) { return c.sub_nontree > 0; };
  const auto own_nt = [](const Counts& c) { return c.own_nontree > 0; };
  for (NodeId n; (n = L.forest.find_first(small, has_nt, own_nt)) != Forest::kNull;) {
    const auto x = static_cast<VertexId>(L.node_owner[n] & ~kVertexTag);
    const std::vector<VertexId> partners(L.nontree[x].begin(), L.nontree[x].end());
    for (VertexId y : partners) {
      const Edge f(x, y);
      remove_nontree(lvl, f);
      if (!L.forest.same_tree(L.vertex_node[y], small)) {
        EdgeInfo& info = info_[edge_key(f)];
        info.tree = true;
        for (std::size_t i = 0; i <= lvl; ++i) link_at(i, f);
        mark_tree(lvl, f, true);
        delta.push_back({f, true});
        return true;
      }
      if (lvl + 1 >= levels_.size()) throw std::logic_error("non-tree edge level exceeds bound");
      add_nontree(lvl + 1, f);
      info_[edge_key(f)].level = static_cast<std::uint32_t>(lvl + 1);
    }
  }
  return false;
}

bool LosslessDC::connected(VertexId u, VertexId v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) throw Error(ErrorCode::VertexOutOfRange, "vertex out of range");
  if (u == v) return true;
  const Level& L = levels_[0];
  return L.forest.same_tree(L.vertex_node[u], L.vertex_node[v]);
}

std::uint64_t LosslessDC::component_id(VertexId v) const {
  const Level& L = levels_[0];
  return static_cast<std::uint64_t>(L.forest.root(L.vertex_node.at(v)));
}

bool LosslessDC::contains(Edge e) const { return info_.count(edge_key(e)) != 0; }

std::vector<Edge> LosslessDC::incident_edges(VertexId v) const {
  std::vector<Edge> out;
  out.reserve(adjacency_.at(v).size());
  for (VertexId w : adjacency_[v]) out.emplace_back(v, w);
  return out;
}

bool LosslessDC::is_forest_edge(Edge e) const {
  const auto it = info_.find(edge_key(e));
  return it != info_.end() && it->second.tree;
}

std::vector<Edge> LosslessDC::forest_edges() const {
  std::vector<Edge> out;
  for (const auto& [key, info] : info_) {
    if (info.tree) out.push_back(edge_from_key(key));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int LosslessDC::edge_level(Edge e) const {
  const auto it = info_.find(edge_key(e));
  return it == info_.end() ? -1 : static_cast<int>(it->second.level);
}

std::size_t LosslessDC::num_components() const {
  return adjacency_.size() - levels_[0].arcs.size();
}

LosslessSpace LosslessDC::space() const {
  LosslessSpace s;
  s.edges = info_.size();
  for (const Level& L : levels_) {
    for (const auto& [x, set] : L.nontree) s.nontree_entries += set.size();
    s.forest_nodes += L.forest.live_nodes();
    s.arc_entries += L.arcs.size();
  }
  // Level 0 keeps a slot per vertex; higher levels only for allocated nodes.
  s.vertex_slots = adjacency_.size();
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    for (NodeId n : levels_[i].vertex_node) s.vertex_slots += n != Forest::kNull ? 1 : 0;
  }
  return s;
}

bool LosslessDC::audit() const {
  std::size_t tree_edges = 0;
  for (const auto& [key, info] : info_) {
    const Edge e = edge_from_key(key);
    if (info.level >= levels_.size()) return false;
    if (!adjacency_[e.u].count(e.v) || !adjacency_[e.v].count(e.u)) return false;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const Level& L = levels_[i];
      const bool has_arcs = L.arcs.count(key) != 0;
      if (has_arcs != (info.tree && i <= info.level)) return false;
      if (has_arcs) {
        const auto [a, b] = L.arcs.at(key);
        const std::uint32_t mark = L.forest.payload(a).own_tree + L.forest.payload(b).own_tree;
        if (mark != (i == info.level ? 1u : 0u)) return false;
      }
      const auto nt = L.nontree.find(e.u);
      const bool listed = nt != L.nontree.end() && nt->second.count(e.v);
      if (listed != (!info.tree && i == info.level)) return false;
    }
    if (!info.tree) {
      // Non-tree edges are covered by their own level's forest.
      const Level& L = levels_[info.level];
      if (!L.forest.same_tree(L.vertex_node[e.u], L.vertex_node[e.v])) return false;
    }
    tree_edges += info.tree ? 1 : 0;
  }
  std::size_t adjacency_total = 0;
  for (const auto& s : adjacency_) adjacency_total += s.size();
  if (adjacency_total != 2 * info_.size()) return false;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& L = levels_[i];
    const std::size_t cap = adjacency_.size() >> i;
    for (VertexId x = 0; x < adjacency_.size(); ++x) {
      const NodeId n = L.vertex_node[x];
      if (n == Forest::kNull) continue;
      if (L.forest.tree_vertices(n) > std::max<std::size_t>(cap, 1)) return false;
      const auto nt = L.nontree.find(x);
      const std::size_t count = nt == L.nontree.end() ? 0 : nt->second.size();
      if (L.forest.payload(n).own_nontree != count) return false;
    }
  }
  return levels_[0].arcs.size() == tree_edges;
}

}  // namespace hybridcc
