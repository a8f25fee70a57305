#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hybridcc/hash.hpp"
#include "hybridcc/sketch.hpp"
#include "sketch_oracle.hpp"

using namespace hybridcc;

namespace {

std::set<std::uint64_t> random_support(std::mt19937_64& rng, std::uint64_t n, std::size_t m) {
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  std::set<std::uint64_t> s;
  while (s.size() < m) s.insert(pick(rng));
  return s;
}

// First coordinate whose depth in `col` equals `want`.
std::uint64_t coordinate_at_depth(const BalloonColumn& col, std::uint32_t want) {
  for (std::uint64_t j = 0; j < col.universe(); ++j) {
    if (col.place(j).depth == want) return j;
  }
  FAIL("no coordinate with requested depth");
  return 0;
}

}  // namespace

TEST_SUITE("sketch_core") {
  TEST_CASE("depth of a hash value") {
    CHECK(depth_of_hash(12, 8) == 2);
    CHECK(depth_of_hash(0b1011, 8) == 0);
    CHECK(depth_of_hash(0, 8) == 7);
    CHECK(depth_of_hash(1ULL << 9, 8) == 7);
    CHECK(depth_of_hash(1ULL << 6, 8) == 6);
    for (std::uint64_t h = 0; h < 5000; ++h) REQUIRE(depth_of_hash(h * 0x9e37, 20) == oracle::slow_depth(h * 0x9e37, 20));
  }

  TEST_CASE("random depth follows the geometric law") {
    const SketchSeed seed = derive_column_seed(99, 0);
    const std::uint32_t rho = depth_limit(1ULL << 40);
    constexpr int kTrials = 1000000;
    std::vector<int> at_least(12, 0);
    for (int j = 0; j < kTrials; ++j) {
      const std::uint32_t d = random_depth(seed, static_cast<std::uint64_t>(j) * 7919, rho);
      for (std::uint32_t i = 0; i <= std::min<std::uint32_t>(d, 11); ++i) ++at_least[i];
    }
    for (int i = 0; i <= 10; ++i) {
      const double p = std::ldexp(1.0, -i);
      const double sigma = std::sqrt(p * (1 - p) / kTrials);
      CHECK(std::abs(at_least[i] / double(kTrials) - p) <= 3 * sigma + 1e-12);
    }
  }

  TEST_CASE("bucket toggle and state") {
    const std::uint64_t cs = 0xabc;
    SketchBucket b;
    CHECK(bucket_state(b, cs, 32).state == BucketState::Empty);
    b = bucket_toggle(b, 5, cs, 32);
    CHECK(b.alpha == 5);
    CHECK(b.gamma == checksum(5, cs, 32));
    CHECK(bucket_state(b, cs, 32).state == BucketState::Good);
    CHECK(bucket_state(b, cs, 32).value == 5);
    b = bucket_toggle(b, 5, cs, 32);
    CHECK(b.is_zero());

    SketchBucket pair = bucket_toggle(bucket_toggle({}, 3, cs, 32), 9, cs, 32);
    CHECK(pair.alpha == 10);
    CHECK(bucket_state(pair, cs, 32).state == BucketState::Bad);

    // Coordinate 0 alone is still distinguishable from an empty bucket.
    SketchBucket zero = bucket_toggle({}, 0, cs, 32);
    CHECK(bucket_state(zero, cs, 32).state == BucketState::Good);
    CHECK(bucket_state(zero, cs, 32).value == 0);
  }

  TEST_CASE("two-member buckets read as Bad") {
    std::mt19937_64 rng(3);
    constexpr int kTrials = 100000;
    int good = 0;
    for (int t = 0; t < kTrials; ++t) {
      const std::uint64_t cs = rng();
      const std::uint64_t a = rng() & 0xffffffffULL, b = rng() & 0xffffffffULL;
      if (a == b) continue;
      const SketchBucket bk = bucket_toggle(bucket_toggle({}, a, cs, 32), b, cs, 32);
      if (bucket_state(bk, cs, 32).state != BucketState::Bad) ++good;
    }
    // 2^(-w+4) with w = 32 is far below one expected event in 1e5 trials.
    CHECK(good == 0);
  }

  TEST_CASE("column update shapes") {
    const std::uint64_t n = 1 << 16;
    BalloonColumn col(n, derive_column_seed(5, 1));
    CHECK(col.rho() == 24);
    CHECK(col.width() == 32);

    const std::uint64_t j0 = coordinate_at_depth(col, 0);
    BalloonColumn a = col;
    a.update(j0);
    CHECK(a.depth() == 1);
    CHECK(a.read(0).state == BucketState::Good);
    CHECK(a.read(0).value == j0);

    const std::uint64_t j3 = coordinate_at_depth(col, 3);
    BalloonColumn b = col;
    CHECK(b.update(j3) == 2);
    REQUIRE(b.depth() == 4);
    CHECK(b.read(0).state == BucketState::Good);
    CHECK(b.read(1).state == BucketState::Empty);
    CHECK(b.read(2).state == BucketState::Empty);
    CHECK(b.read(3).state == BucketState::Good);
    CHECK(b.read(3).value == j3);
    b.update(j3);
    CHECK(b.depth() == 0);
    CHECK(b.empty());
  }

  TEST_CASE("incremental updates match direct construction") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t n = 1 + rng() % (1ULL << 16);
      const SketchSeed seed = derive_column_seed(rng(), trial);
      BalloonColumn col(n, seed);
      std::set<std::uint64_t> support;
      const int steps = 1 + static_cast<int>(rng() % 300);
      for (int s = 0; s < steps; ++s) {
        std::uint64_t j;
        if (!support.empty() && rng() % 3 == 0) {
          auto it = support.begin();
          std::advance(it, rng() % support.size());
          j = *it;
          support.erase(it);
        } else {
          j = rng() % n;
          if (!support.insert(j).second) support.erase(j);
        }
        col.update(j);
        // Depth invariant.
        REQUIRE((col.empty() || !col.buckets().back().is_zero()));
        REQUIRE(col.depth() <= col.rho());
      }
      const auto expect = oracle::direct_column(support, n, seed);
      REQUIRE(col.depth() == expect.size());
      for (std::size_t i = 0; i < expect.size(); ++i) REQUIRE(col.buckets()[i] == expect[i]);
    }
  }

  TEST_CASE("merge examples") {
    const std::uint64_t n = 4096;
    const SketchSeed seed = derive_column_seed(1, 0);
    const BalloonColumn x = oracle::build({1, 2, 77, 400}, n, seed);
    CHECK(column_merge(x, x).empty());
    CHECK(column_merge(oracle::build({1, 2}, n, seed), oracle::build({2, 3}, n, seed)) ==
          oracle::build({1, 3}, n, seed));
    CHECK(column_merge(x, BalloonColumn(n, seed)) == x);

    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
      const auto X = random_support(rng, n, rng() % 200);
      const auto Y = random_support(rng, n, rng() % 200);
      const BalloonColumn merged = column_merge(oracle::build(X, n, seed), oracle::build(Y, n, seed));
      REQUIRE(merged == oracle::build(oracle::sym_diff(X, Y), n, seed));
    }
  }

  TEST_CASE("merge rejects different seeds") {
    BalloonColumn a(100, derive_column_seed(1, 0));
    BalloonColumn b(100, derive_column_seed(1, 1));
    BalloonColumn c(200, derive_column_seed(1, 0));
    b.update(4);
    CHECK_THROWS_AS(a.merge_in(b), Error);
    CHECK_THROWS_AS(a.merge_in(c), Error);
    try {
      a.merge_in(b);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SeedMismatch);
    }
  }

  TEST_CASE("sample") {
    const std::uint64_t n = 1 << 20;
    BalloonColumn col(n, derive_column_seed(8, 8));
    CHECK(col.sample().status == SampleStatus::Empty);
    col.update(5);
    CHECK(col.sample() == SampleResult{SampleStatus::Good, 5});

    // Soundness: a Good sample is always a member.
    std::mt19937_64 rng(19);
    int good = 0;
    for (int t = 0; t < 3000; ++t) {
      const auto S = random_support(rng, n, 1 + rng() % 600);
      const BalloonColumn c = oracle::build(S, n, derive_column_seed(rng(), t));
      const SampleResult r = c.sample();
      REQUIRE(r.status != SampleStatus::Empty);
      if (r.status == SampleStatus::Good) {
        ++good;
        REQUIRE(S.count(r.coordinate) == 1);
      }
    }
    CHECK(good > 3000 * 0.6);
  }

  TEST_CASE("wide universes use 64-bit accumulators") {
    const std::uint64_t n = 1ULL << 40;
    BalloonColumn col(n, derive_column_seed(4, 4));
    CHECK(col.width() == 41);
    CHECK(col.rho() == 48);
    const std::uint64_t j = (1ULL << 39) + 12345;
    col.update(j);
    CHECK(col.sample() == SampleResult{SampleStatus::Good, j});
    const auto bytes = col.serialize();
    CHECK(BalloonColumn::deserialize(bytes) == col);
  }

  TEST_CASE("serialization and determinism") {
    std::mt19937_64 rng(23);
    const auto S = random_support(rng, 1 << 16, 300);
    const SketchSeed seed = derive_column_seed(77, 3);
    const BalloonColumn a = oracle::build(S, 1 << 16, seed);
    const BalloonColumn b = oracle::build(S, 1 << 16, seed);
    const auto bytes = a.serialize();
    CHECK(bytes == b.serialize());
    CHECK(bytes.size() == 28 + 8 * a.depth());
    CHECK(BalloonColumn::deserialize(bytes) == a);
    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.end() - 1);
    CHECK_THROWS_AS(BalloonColumn::deserialize(truncated), Error);
  }

  TEST_CASE("matrix basics") {
    const std::uint64_t n = 1 << 12;
    SketchMatrix one(n, 1, 42);
    BalloonColumn col(n, one.column(0).seed());
    for (std::uint64_t j : {3, 99, 1000, 3}) {
      one.update(j);
      col.update(j);
    }
    CHECK(one.column(0) == col);

    SketchMatrix m(n, 32, 42);
    for (std::size_t i = 0; i < m.num_columns(); ++i) {
      for (std::size_t k = i + 1; k < m.num_columns(); ++k) REQUIRE(m.column(i).seed() != m.column(k).seed());
    }
    for (const SampleResult& r : m.sample_all()) CHECK(r.status == SampleStatus::Empty);
    m.update(7);
    for (const SampleResult& r : m.sample_all()) CHECK(r == SampleResult{SampleStatus::Good, 7});
    m.update(7);
    CHECK(m.empty());
    CHECK(m.total_buckets() == 0);

    SketchMatrix other(n, 32, 43);
    CHECK_THROWS_AS(m.merge_in(other), Error);
    SketchMatrix shorter(n, 31, 42);
    CHECK_THROWS_AS(m.merge_in(shorter), Error);
  }

  TEST_CASE("matrix linearity") {
    const std::uint64_t n = 1 << 14;
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
      const auto X = random_support(rng, n, rng() % 300);
      const auto Y = random_support(rng, n, rng() % 300);
      SketchMatrix a(n, 8, t), b(n, 8, t), d(n, 8, t);
      for (auto j : X) a.update(j);
      for (auto j : Y) b.update(j);
      for (auto j : oracle::sym_diff(X, Y)) d.update(j);
      a.merge_in(b);
      REQUIRE(a == d);
      REQUIRE(a.serialize() == d.serialize());
    }
  }
}
