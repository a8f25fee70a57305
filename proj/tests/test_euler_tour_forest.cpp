#include <map>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "hybridcc/euler_tour_forest.hpp"

using namespace hybridcc;

namespace {

// Sum payload with separate own value.
struct SumPayload {
  long own = 0;
  long agg = 0;
  void detach(const SumPayload*, const SumPayload*) {}
  void attach(const SumPayload* l, const SumPayload* r) { agg = own + (l ? l->agg : 0) + (r ? r->agg : 0); }
};

// XOR payload that keeps only the subtree value.
struct XorPayload {
  std::uint64_t agg = 0;
  void fold(const XorPayload* l, const XorPayload* r) {
    if (l) agg ^= l->agg;
    if (r) agg ^= r->agg;
  }
  void detach(const XorPayload* l, const XorPayload* r) { fold(l, r); }
  void attach(const XorPayload* l, const XorPayload* r) { fold(l, r); }
};

struct NaiveForest {
  std::vector<std::set<int>> adj;
  explicit NaiveForest(int n) : adj(n) {}
  std::vector<int> component(int s) const {
    std::vector<int> seen(adj.size(), 0), out{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (int w : adj[out[i]]) {
        if (!seen[w]) {
          seen[w] = 1;
          out.push_back(w);
        }
      }
    }
    return out;
  }
};

}  // namespace

TEST_SUITE("euler_tour_forest") {
  TEST_CASE("link and cut a path") {
    EulerTourForest<SumPayload> f(3);
    std::vector<int> v;
    for (int i = 0; i < 3; ++i) v.push_back(f.make_node({1, 1}));
    const int a01 = f.make_node({}), a10 = f.make_node({});
    const int a12 = f.make_node({}), a21 = f.make_node({});
    f.link(v[0], v[1], a01, a10);
    f.link(v[1], v[2], a12, a21);
    CHECK(f.same_tree(v[0], v[2]));
    CHECK(f.tree_size(v[0]) == 7);
    CHECK(f.tree_vertices(v[2]) == 3);
    CHECK(f.aggregate(v[1]).agg == 3);
    f.cut(a01, a10);
    CHECK_FALSE(f.same_tree(v[0], v[1]));
    CHECK(f.same_tree(v[1], v[2]));
    CHECK(f.is_singleton(a01));
    CHECK(f.is_singleton(a10));
    CHECK(f.aggregate(v[2]).agg == 2);
    CHECK(f.aggregate(v[0]).agg == 1);
  }

  TEST_CASE("random link/cut against a naive forest") {
    std::mt19937_64 rng(99);
    const int n = 120;
    EulerTourForest<SumPayload> sum(1);
    EulerTourForest<XorPayload> xr(2);
    NaiveForest naive(n);
    std::vector<long> weight(n);
    std::vector<int> vs, vx;
    for (int i = 0; i < n; ++i) {
      weight[i] = static_cast<long>(rng() % 1000);
      vs.push_back(sum.make_node({weight[i], weight[i]}));
      vx.push_back(xr.make_node({static_cast<std::uint64_t>(weight[i])}));
    }
    std::map<std::pair<int, int>, std::array<int, 4>> arcs;  // u<v -> sum arcs, xor arcs
    for (int step = 0; step < 6000; ++step) {
      const int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u == v) continue;
      const auto key = std::minmax(u, v);
      if (auto it = arcs.find(key); it != arcs.end() && rng() % 2 == 0) {
        sum.cut(it->second[0], it->second[1]);
        xr.cut(it->second[2], it->second[3]);
        sum.free_node(it->second[0]);
        sum.free_node(it->second[1]);
        xr.free_node(it->second[2]);
        xr.free_node(it->second[3]);
        naive.adj[u].erase(v);
        naive.adj[v].erase(u);
        arcs.erase(it);
      } else if (!sum.same_tree(vs[u], vs[v])) {
        std::array<int, 4> a{sum.make_node({}), sum.make_node({}), xr.make_node({}), xr.make_node({})};
        sum.link(vs[u], vs[v], a[0], a[1]);
        xr.link(vx[u], vx[v], a[2], a[3]);
        naive.adj[u].insert(v);
        naive.adj[v].insert(u);
        arcs[key] = a;
      }
      if (rng() % 5 == 0) {
        const int x = static_cast<int>(rng() % n);
        const long d = static_cast<long>(rng() % 100);
        weight[x] += d;
        sum.modify_own(vs[x], [&](SumPayload& p) { p.own += d; });
        xr.apply_path(vx[x], [&](XorPayload& p) { p.agg ^= static_cast<std::uint64_t>(weight[x] - d) ^ weight[x]; });
      }
      if (step % 50 == 0) {
        for (int s = 0; s < n; ++s) {
          const auto comp = naive.component(s);
          REQUIRE(sum.tree_vertices(vs[s]) == comp.size());
          REQUIRE(xr.tree_vertices(vx[s]) == comp.size());
          long total = 0;
          std::uint64_t x = 0;
          for (int w : comp) {
            REQUIRE(sum.same_tree(vs[s], vs[w]));
            total += weight[w];
            x ^= static_cast<std::uint64_t>(weight[w]);
          }
          REQUIRE(sum.aggregate(vs[s]).agg == total);
          REQUIRE(xr.aggregate(vx[s]).agg == x);
          REQUIRE(sum.check_tree(vs[s]));
          REQUIRE(xr.check_tree(vx[s]));
        }
      }
    }
    CHECK(sum.live_nodes() == n + 2 * arcs.size());
  }

  TEST_CASE("reroot keeps membership and find_first locates marked nodes") {
    EulerTourForest<SumPayload> f(5);
    std::vector<int> v;
    for (int i = 0; i < 10; ++i) v.push_back(f.make_node({i == 7 ? 1 : 0, i == 7 ? 1 : 0}));
    for (int i = 1; i < 10; ++i) f.link(v[i - 1], v[i], f.make_node({}), f.make_node({}));
    for (int i = 0; i < 10; ++i) {
      f.reroot(v[i]);
      CHECK(f.position(v[i]) == 0);
      CHECK(f.tree_vertices(v[0]) == 10);
    }
    auto sub = [](const SumPayload& p) { return p.agg > 0; };
    auto own = [](const SumPayload& p) { return p.own > 0; };
    CHECK(f.find_first(v[0], sub, own) == v[7]);
    f.modify_own(v[7], [](SumPayload& p) { p.own = 0; });
    CHECK(f.find_first(v[0], sub, own) == EulerTourForest<SumPayload>::kNull);
  }
}
