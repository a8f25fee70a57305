#include <random>
#include <set>

#include "doctest.h"
#include "graph_oracle.hpp"
#include "hybridcc/hybrid.hpp"

using namespace hybridcc;

namespace {

std::vector<Edge> edges_of(const oracle::ShadowGraph& g) { return {g.edges.begin(), g.edges.end()}; }

struct Churn {
  std::mt19937_64 rng;
  std::size_t n;
  std::size_t core;
  oracle::ShadowGraph g;
  std::vector<Edge> present;

  Churn(std::uint64_t seed, std::size_t vertices, std::size_t core_size)
      : rng(seed), n(vertices), core(core_size), g(vertices) {}

  // Returns the edge and whether it is an insertion.
  std::pair<Edge, bool> next() {
    while (true) {
      if (!present.empty() && rng() % 5 < 2) {
        const std::size_t k = rng() % present.size();
        const Edge e = present[k];
        present[k] = present.back();
        present.pop_back();
        g.edges.erase(e);
        return {e, false};
      }
      const std::size_t span = rng() % 3 == 0 ? n : core;
      const Edge e(static_cast<VertexId>(rng() % span), static_cast<VertexId>(rng() % span));
      if (e.u == e.v || g.edges.count(e)) continue;
      g.edges.insert(e);
      present.push_back(e);
      return {e, true};
    }
  }
};

}  // namespace

TEST_SUITE("hybrid") {
  TEST_CASE("clique of delta+2 vertices promotes everyone") {
    const std::size_t delta = 8;
    HybridDC h({64, delta, 2, 0, 0, 5});
    oracle::ShadowGraph g(64);
    for (VertexId a = 0; a < delta + 2; ++a) {
      for (VertexId b = a + 1; b < delta + 2; ++b) {
        h.insert_edge({a, b});
        g.edges.insert(Edge(a, b));
      }
    }
    for (VertexId v = 0; v < delta + 2; ++v) CHECK(h.is_dense(v));
    CHECK(h.num_dense() == delta + 2);
    CHECK(h.sparse().num_edges() == delta + 1);  // only the mirrored spanning tree
    CHECK(h.dense().forest_edges().size() == delta + 1);
    const HybridAudit a = h.audit(edges_of(g), true);
    CHECK(a.ok());
  }

  TEST_CASE("deleting down to the demotion threshold rehomes edges") {
    const std::size_t delta = 8;
    HybridDC h({64, delta, 2, 0, 0, 6});
    oracle::ShadowGraph g(64);
    for (VertexId a = 0; a < 12; ++a) {
      for (VertexId b = a + 1; b < 12; ++b) {
        h.insert_edge({a, b});
        g.edges.insert(Edge(a, b));
      }
    }
    REQUIRE(h.is_dense(0));
    VertexId w = 11;
    while (h.degree(0) > h.delta_demote()) {
      h.delete_edge({0, w});
      g.edges.erase(Edge(0, w));
      --w;
    }
    CHECK_FALSE(h.is_dense(0));
    CHECK_FALSE(h.dense().is_active(0));
    CHECK(h.num_dense() == 11);
    for (VertexId u = 1; u <= w; ++u) CHECK(h.sparse().contains(Edge(0, u)));
    CHECK(h.audit(edges_of(g), true).ok());
    CHECK(h.connected(0, 5));
    CHECK(h.stats().hysteresis_violations == 0);
  }

  TEST_CASE("light round trip restores the lossless store") {
    HybridDC h({32, 0, 2, 0, 16, 1});
    h.insert_edge({1, 2});
    h.insert_edge({2, 3});
    const LosslessSpace before = h.sparse().space();
    const auto forest_before = h.sparse().forest_edges();
    h.insert_edge({4, 9});
    h.delete_edge({4, 9});
    CHECK(h.sparse().space().words() == before.words());
    CHECK(h.sparse().forest_edges() == forest_before);
    CHECK(h.connected(1, 3));
    CHECK(h.connected(7, 7));
    CHECK_FALSE(h.connected(1, 4));
  }

  TEST_CASE("light vertex reaches a heavy component through a mirrored forest edge") {
    const std::size_t delta = 6;
    HybridDC h({64, delta, 2, 0, 8, 2});
    for (VertexId a = 0; a < 9; ++a) {
      for (VertexId b = a + 1; b < 9; ++b) h.insert_edge({a, b});
    }
    h.insert_edge({40, 3});
    CHECK_FALSE(h.is_dense(40));
    CHECK(h.connected(40, 8));
    CHECK_FALSE(h.connected(40, 41));
  }

  TEST_CASE("errors") {
    HybridDC h({16, 0, 2, 0, 0, 1});
    h.insert_edge({1, 2});
    CHECK_THROWS_AS(h.insert_edge({1, 2}), Error);
    CHECK_THROWS_AS(h.delete_edge({1, 3}), Error);
    CHECK_THROWS_AS(h.insert_edge({4, 4}), Error);
    CHECK_THROWS_AS(h.insert_edge({4, 16}), Error);
    CHECK_THROWS_AS(HybridDC({16, 8, 1, 0, 0, 1}), Error);
  }

  TEST_CASE("buffer flushes at capacity and an empty flush is a no-op") {
    const std::size_t delta = 6;
    HybridDC h({64, delta, 2, 0, 4, 3});
    h.flush();
    CHECK(h.stats().flushes == 0);
    // Build a heavy clique, then add redundant edges inside it.
    std::vector<Edge> later;
    for (VertexId a = 0; a < 12; ++a) {
      for (VertexId b = a + 1; b < 12; ++b) {
        if ((a + b) % 5 == 0) {
          later.push_back(Edge(a, b));
        } else {
          h.insert_edge({a, b});
        }
      }
    }
    for (VertexId v = 0; v < 12; ++v) REQUIRE(h.is_dense(v));
    h.flush();
    const std::uint64_t flushes = h.stats().flushes;
    for (std::size_t i = 0; i < 4; ++i) h.insert_edge(later[i]);
    CHECK(h.stats().flushes == flushes + 1);
    CHECK(h.pending() == 0);
    h.insert_edge(later[4]);
    CHECK(h.pending() == 1);
  }

  TEST_CASE("buffered and unbuffered runs end in the same dense state") {
    HybridDC buffered({128, 10, 2, 0, 64, 9});
    HybridDC direct({128, 10, 2, 0, 0, 9});
    Churn c(31, 128, 30);
    for (int step = 0; step < 4000; ++step) {
      const auto [e, ins] = c.next();
      if (ins) {
        buffered.insert_edge(e);
        direct.insert_edge(e);
      } else {
        buffered.delete_edge(e);
        direct.delete_edge(e);
      }
    }
    buffered.flush();
    CHECK(buffered.dense().forest_edges() == direct.dense().forest_edges());
    CHECK(buffered.sparse().num_edges() == direct.sparse().num_edges());
    CHECK(buffered.audit(edges_of(c.g), false).ok());
    CHECK(direct.audit(edges_of(c.g), false).ok());
  }

  TEST_CASE("audited churn agrees with union-find") {
    for (std::size_t div : {2u, 8u}) {
      CAPTURE(div);
      HybridDC h({128, 12, div, 0, 32, 100 + div});
      Churn c(7 + div, 128, 36);
      std::size_t queries = 0;
      std::size_t mismatches = 0;
      auto check_step = [&](int step) {
        if (step % 7 == 0) {
          oracle::Dsu d = c.g.components();
          for (int q = 0; q < 8; ++q) {
            const auto x = static_cast<VertexId>(c.rng() % 128);
            const auto y = static_cast<VertexId>(c.rng() % 128);
            ++queries;
            mismatches += h.connected(x, y) != (d.find(x) == d.find(y));
          }
        }
        if (step % 250 == 0) {
          h.flush();
          const HybridAudit a = h.audit(edges_of(c.g), true);
          REQUIRE(a.partition);
          REQUIRE(a.mirror);
          REQUIRE(a.degrees);
          REQUIRE(a.dense_flags);
          REQUIRE(a.iblts);
          REQUIRE(a.dense.ok());
        }
      };
      int step = 0;
      for (; step < 5000; ++step) {
        const auto [e, ins] = c.next();
        if (ins) {
          h.insert_edge(e);
        } else {
          h.delete_edge(e);
        }
        check_step(step + 1);
      }
      // Drain so every heavy vertex falls through the demotion threshold.
      while (!c.present.empty()) {
        const Edge e = c.present.back();
        c.present.pop_back();
        c.g.edges.erase(e);
        h.delete_edge(e);
        check_step(++step);
      }
      h.flush();
      CHECK(h.audit({}, true).ok());
      CHECK(h.sparse().num_edges() == 0);
      MESSAGE("div=" << div << " promotions=" << h.stats().promotions << " demotions=" << h.stats().demotions
                     << " aborted=" << h.stats().aborted_demotions << " mismatches=" << mismatches);
      CHECK(h.stats().promotions > 0);
      CHECK(h.stats().demotions > 0);
      CHECK(h.stats().hysteresis_violations == 0);
      CHECK(mismatches == 0);
    }
  }
}
