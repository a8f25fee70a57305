#pragma once

// Test-side reference: recompute connectivity of an explicit edge set from
// scratch with union-find.

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hybridcc/types.hpp"

namespace oracle {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

struct ShadowGraph {
  std::size_t n;
  std::set<hybridcc::Edge> edges;
  explicit ShadowGraph(std::size_t num_vertices) : n(num_vertices) {}

  Dsu components() const {
    Dsu d(n);
    for (const auto& e : edges) d.unite(e.u, e.v);
    return d;
  }
  std::size_t num_components() const {
    Dsu d = components();
    std::size_t c = 0;
    for (std::uint32_t x = 0; x < n; ++x) c += d.find(x) == x ? 1 : 0;
    return c;
  }
};

/// Canonical label per vertex: smallest vertex id in its class.
inline std::vector<std::uint32_t> canonical_labels(Dsu& d, std::size_t n) {
  std::vector<std::uint32_t> first(n, UINT32_MAX), out(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    const auto r = d.find(x);
    if (first[r] == UINT32_MAX) first[r] = x;
    out[x] = first[r];
  }
  return out;
}

}  // namespace oracle
