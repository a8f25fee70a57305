#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "graph_oracle.hpp"
#include "hybridcc/lossless_dc.hpp"

using namespace hybridcc;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BadParams;
}

// Replays deltas onto an external forest mirror.
void replay(std::set<Edge>& mirror, const ForestDelta& delta) {
  for (const ForestEvent& ev : delta) {
    if (ev.added) {
      REQUIRE(mirror.insert(ev.edge).second);
    } else {
      REQUIRE(mirror.erase(ev.edge) == 1);
    }
  }
}

}  // namespace

TEST_SUITE("lossless_dc") {
  TEST_CASE("insert into empty graph adds a forest edge") {
    LosslessDC g(4);
    const ForestDelta d = g.insert_edge({0, 1});
    REQUIRE(d.size() == 1);
    CHECK(d[0] == ForestEvent{{0, 1}, true});
    CHECK(g.connected(0, 1));
    CHECK(g.contains({1, 0}));
    CHECK(g.is_forest_edge({0, 1}));
  }

  TEST_CASE("triangle deletions keep connectivity") {
    LosslessDC g(3);
    g.insert_edge({0, 1});
    g.insert_edge({1, 2});
    CHECK(g.insert_edge({0, 2}).empty());
    const ForestDelta d = g.delete_edge({0, 1});
    REQUIRE(d.size() == 2);
    CHECK(d[0] == ForestEvent{{0, 1}, false});
    CHECK(d[1] == ForestEvent{{0, 2}, true});
    CHECK(g.connected(0, 1));
    CHECK(g.connected(0, 2));
    CHECK(g.audit());
    // Deleting a non-forest edge changes nothing in the forest.
    g.insert_edge({0, 1});
    CHECK(g.delete_edge({0, 1}).empty());
  }

  TEST_CASE("basic queries") {
    LosslessDC g(6);
    CHECK(g.connected(3, 3));
    CHECK_FALSE(g.connected(3, 4));
    CHECK(g.incident_edges(5).empty());
    g.insert_edge({5, 1});
    g.insert_edge({5, 2});
    const auto inc = g.incident_edges(5);
    CHECK(inc == std::vector<Edge>{{1, 5}, {2, 5}});
    CHECK(g.degree(5) == 2);
  }

  TEST_CASE("errors") {
    LosslessDC g(5);
    g.insert_edge({1, 2});
    CHECK(code_of([&] { g.insert_edge({2, 1}); }) == ErrorCode::DuplicateEdge);
    CHECK(code_of([&] { g.delete_edge({0, 1}); }) == ErrorCode::MissingEdge);
    CHECK(code_of([&] { g.insert_edge({3, 3}); }) == ErrorCode::SelfLoop);
    CHECK(code_of([&] { g.insert_edge({3, 5}); }) == ErrorCode::VertexOutOfRange);
  }

  TEST_CASE("random churn against recomputed union-find") {
    std::mt19937_64 rng(4242);
    const std::size_t n = 2000;
    LosslessDC g(n, 7);
    oracle::ShadowGraph shadow(n);
    std::set<Edge> mirror;
    std::vector<Edge> present;
    for (int step = 1; step <= 100000; ++step) {
      // Bias towards a steady state of roughly 1.2 n edges.
      const bool do_delete = !present.empty() && (present.size() > 1.2 * n ? rng() % 3 != 0 : rng() % 3 == 0);
      if (do_delete) {
        const std::size_t i = rng() % present.size();
        const Edge e = present[i];
        present[i] = present.back();
        present.pop_back();
        replay(mirror, g.delete_edge(e));
        shadow.edges.erase(e);
      } else {
        // Mix local and global edges to create cycles at many scales.
        const auto u = static_cast<VertexId>(rng() % n);
        const auto v = static_cast<VertexId>(rng() % 4 == 0 ? rng() % n : (u + 1 + rng() % 20) % n);
        if (u == v || shadow.edges.count(Edge(u, v))) continue;
        replay(mirror, g.insert_edge({u, v}));
        shadow.edges.insert(Edge(u, v));
        present.emplace_back(u, v);
      }
      if (step % 100 == 0) {
        oracle::Dsu d = shadow.components();
        for (int q = 0; q < 50; ++q) {
          const auto a = static_cast<VertexId>(rng() % n), b = static_cast<VertexId>(rng() % n);
          REQUIRE(g.connected(a, b) == (d.find(a) == d.find(b)));
        }
        const std::size_t comps = shadow.num_components();
        REQUIRE(g.num_components() == comps);
        REQUIRE(mirror.size() == n - comps);
      }
      if (step % 10000 == 0) {
        REQUIRE(g.audit());
        const auto forest = g.forest_edges();
        REQUIRE(std::equal(forest.begin(), forest.end(), mirror.begin(), mirror.end()));
        for (const Edge& e : forest) REQUIRE(shadow.edges.count(e) == 1);
      }
    }
    CHECK(g.num_edges() == shadow.edges.size());
  }

  TEST_CASE("levels stay within the bound") {
    std::mt19937_64 rng(5);
    const std::size_t n = 256;
    LosslessDC g(n, 3);
    std::vector<Edge> present;
    std::set<Edge> seen;
    for (int step = 0; step < 40000; ++step) {
      if (!present.empty() && rng() % 2 == 0) {
        const std::size_t i = rng() % present.size();
        g.delete_edge(present[i]);
        seen.erase(present[i]);
        present[i] = present.back();
        present.pop_back();
      } else {
        const Edge e(static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n));
        if (e.u == e.v || seen.count(e)) continue;
        g.insert_edge(e);
        seen.insert(e);
        present.push_back(e);
      }
    }
    int max_level = 0;
    for (const Edge& e : present) max_level = std::max(max_level, g.edge_level(e));
    CHECK(max_level <= 8);
    CHECK(g.num_levels() == 9);
    CHECK(g.audit());
  }
}
