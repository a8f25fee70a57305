#include <numeric>
#include <unordered_map>

#include "hybridcc/harness.hpp"

namespace hybridcc::harness {

namespace {

std::vector<VertexId> canonical(std::uint64_t n, const std::vector<VertexId>& root) {
  std::vector<VertexId> first(n, static_cast<VertexId>(n));
  std::vector<VertexId> out(n);
  for (VertexId x = 0; x < n; ++x) {
    if (first[root[x]] == n) first[root[x]] = x;
    out[x] = first[root[x]];
  }
  return out;
}

// Union by size without path compression, so unions can be undone.
class RollbackDsu {
 public:
  explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }
  VertexId find(VertexId x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
  }
  std::size_t mark() const { return history_.size(); }
  void rollback(std::size_t m) {
    while (history_.size() > m) {
      const VertexId b = history_.back();
      history_.pop_back();
      size_[parent_[b]] -= size_[b];
      parent_[b] = b;
    }
  }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<VertexId> history_;
};

}  // namespace

std::vector<VertexId> union_find_labels(std::uint64_t num_vertices, const std::vector<Edge>& edges) {
  std::vector<VertexId> parent(num_vertices);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&parent](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : edges) parent[find(e.u)] = find(e.v);
  std::vector<VertexId> root(num_vertices);
  for (VertexId x = 0; x < num_vertices; ++x) root[x] = find(x);
  return canonical(num_vertices, root);
}

std::vector<VertexId> bfs_labels(std::uint64_t num_vertices, const std::vector<Edge>& edges) {
  std::vector<std::vector<VertexId>> adj(num_vertices);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  const auto unseen = static_cast<VertexId>(num_vertices);
  std::vector<VertexId> label(num_vertices, unseen);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < num_vertices; ++s) {
    if (label[s] != unseen) continue;
    label[s] = s;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : adj[queue[head]]) {
        if (label[w] == unseen) {
          label[w] = s;
          queue.push_back(w);
        }
      }
    }
  }
  return label;
}

std::vector<bool> offline_answers(const Stream& s) {
  std::vector<std::pair<VertexId, VertexId>> queries;
  // Alive edges map to the query index at which they appeared.
  std::unordered_map<std::uint64_t, std::size_t> open;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Edge>> spans;
  for (const StreamOp& op : s.ops) {
    switch (op.kind) {
      case OpKind::Insert:
        open[edge_key(Edge(op.u, op.v))] = queries.size();
        break;
      case OpKind::Delete: {
        const Edge e(op.u, op.v);
        auto it = open.find(edge_key(e));
        if (it == open.end()) throw Error(ErrorCode::MalformedStream, "delete of absent edge");
        if (it->second < queries.size()) spans.push_back({{it->second, queries.size()}, e});
        open.erase(it);
        break;
      }
      case OpKind::Query:
        queries.emplace_back(op.u, op.v);
        break;
      case OpKind::Checkpoint:
        break;
    }
  }
  const std::size_t q = queries.size();
  std::vector<bool> answers(q, false);
  if (q == 0) return answers;
  for (const auto& [key, start] : open) {
    if (start < q) spans.push_back({{start, q}, edge_from_key(key)});
  }

  std::size_t size = 1;
  while (size < q) size <<= 1;
  std::vector<std::vector<Edge>> node(2 * size);
  for (const auto& [range, e] : spans) {
    for (std::size_t lo = range.first + size, hi = range.second + size; lo < hi; lo >>= 1, hi >>= 1) {
      if (lo & 1) node[lo++].push_back(e);
      if (hi & 1) node[--hi].push_back(e);
    }
  }

  RollbackDsu dsu(s.num_vertices);
  // Iterative depth-first walk; each frame remembers the rollback mark.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{1, 0}};
  std::vector<std::size_t> marks(2 * size, 0);
  while (!stack.empty()) {
    auto [x, state] = stack.back();
    stack.pop_back();
    if (state == 0) {
      marks[x] = dsu.mark();
      for (const Edge& e : node[x]) dsu.unite(e.u, e.v);
      if (x >= size) {
        const std::size_t i = x - size;
        if (i < q) answers[i] = dsu.find(queries[i].first) == dsu.find(queries[i].second);
        dsu.rollback(marks[x]);
        continue;
      }
      stack.push_back({x, 1});
      stack.push_back({2 * x + 1, 0});
      stack.push_back({2 * x, 0});
    } else {
      dsu.rollback(marks[x]);
    }
  }
  return answers;
}

}  // namespace hybridcc::harness
