#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hybridcc/hash.hpp"
#include "hybridcc/iblt.hpp"

using namespace hybridcc;

namespace {

std::vector<VertexId> random_set(std::mt19937_64& rng, std::uint64_t V, std::size_t m) {
  std::set<VertexId> s;
  while (s.size() < m) s.insert(static_cast<VertexId>(rng() % V));
  return {s.begin(), s.end()};
}

std::size_t good_cells(const NeighborIblt& t, VertexId x) {
  std::size_t n = 0;
  for (auto tier : {t.tier1(), t.tier2()}) {
    for (const SketchBucket& c : tier) n += (c.alpha == x && !c.is_zero()) ? 1 : 0;
  }
  return n;
}

}  // namespace

TEST_SUITE("iblt") {
  TEST_CASE("sizing") {
    CHECK(NeighborIblt::tier1_size_for(40) == 52);
    CHECK(NeighborIblt::tier1_size_for(1) == 3);
    CHECK(NeighborIblt::tier1_size_for(0) == 3);
    CHECK(NeighborIblt::tier2_size_for(40, 1 << 13) == 13);
    CHECK(NeighborIblt::tier2_size_for(100, 1 << 13) == 20);
    NeighborIblt t({1 << 13, 40, 1});
    CHECK(t.tier1().size() == 52);
    CHECK(t.tier2().size() == 13);
  }

  TEST_CASE("locations are distinct") {
    NeighborIblt t({1000, 2, 9});  // 3 tier-1 cells, so every element hits all three
    for (VertexId x = 0; x < 1000; ++x) {
      auto loc = t.tier1_locations(x);
      std::sort(loc.begin(), loc.end());
      REQUIRE(std::adjacent_find(loc.begin(), loc.end()) == loc.end());
    }
  }

  TEST_CASE("insert then delete leaves the table zero") {
    NeighborIblt t({500, 20, 3});
    t.insert(17);
    CHECK(good_cells(t, 17) == NeighborIblt::kHashes + 1);
    t.erase(17);
    CHECK(t.empty());
  }

  TEST_CASE("matched interleavings cancel") {
    std::mt19937_64 rng(5);
    NeighborIblt t({2000, 30, 77});
    std::vector<VertexId> pending;
    for (int step = 0; step < 10000; ++step) {
      if (!pending.empty() && rng() % 2 == 0) {
        const std::size_t i = rng() % pending.size();
        t.erase(pending[i]);
        pending[i] = pending.back();
        pending.pop_back();
      } else {
        const auto x = static_cast<VertexId>(rng() % 2000);
        t.insert(x);
        pending.push_back(x);
      }
    }
    for (VertexId x : pending) t.erase(x);
    CHECK(t.empty());
  }

  TEST_CASE("recover small cases") {
    NeighborIblt t({100, 10, 1});
    auto r = t.recover();
    CHECK(r.ok());
    CHECK(r.elements.empty());
    t.insert(42);
    r = t.recover();
    CHECK(r.ok());
    CHECK(r.elements == std::vector<VertexId>{42});
    t.insert(0);
    r = t.recover();
    CHECK(r.elements == std::vector<VertexId>{0, 42});
  }

  TEST_CASE("recovery at size r matches the shadow set") {
    std::mt19937_64 rng(13);
    // delta = 25 * 20 = 500, r = delta / 8.
    const std::uint64_t V = 1 << 20;
    const std::size_t r = 62;
    int ok = 0;
    constexpr int kTrials = 2000;
    for (int t = 0; t < kTrials; ++t) {
      NeighborIblt table({V, r, rng()});
      const auto set = random_set(rng, V, r);
      for (VertexId x : set) table.insert(x);
      const auto before = table.serialize();
      const RecoverResult res = table.recover();
      REQUIRE(table.serialize() == before);
      if (res.ok()) {
        ++ok;
        REQUIRE(res.elements == set);
      }
    }
    CHECK(ok >= kTrials * 0.99);
  }

  TEST_CASE("overfull tables fail without mutation") {
    std::mt19937_64 rng(17);
    NeighborIblt table({1 << 13, 10, 5});
    for (VertexId x : random_set(rng, 1 << 13, 200)) table.insert(x);
    const auto before = table.serialize();
    const RecoverResult res = table.recover();
    CHECK_FALSE(res.ok());
    CHECK(res.elements.empty());
    CHECK(table.serialize() == before);
  }

  TEST_CASE("linearity") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
      const IbltConfig cfg{4096, 50, static_cast<std::uint64_t>(t)};
      NeighborIblt a(cfg), b(cfg), d(cfg);
      const auto X = random_set(rng, 4096, rng() % 60);
      const auto Y = random_set(rng, 4096, rng() % 60);
      std::set<VertexId> diff(X.begin(), X.end());
      for (VertexId y : Y) {
        if (!diff.erase(y)) diff.insert(y);
      }
      for (VertexId x : X) a.insert(x);
      for (VertexId y : Y) b.insert(y);
      for (VertexId z : diff) d.insert(z);
      a.merge_in(b);
      REQUIRE(a == d);
    }
    NeighborIblt a({4096, 50, 1}), b({4096, 50, 2});
    CHECK_THROWS_AS(a.merge_in(b), Error);
  }

  TEST_CASE("out of range element") {
    NeighborIblt t({10, 4, 1});
    CHECK_THROWS_AS(t.insert(10), Error);
  }
}
