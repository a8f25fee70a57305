#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hybridcc/types.hpp"

namespace hybridcc {

/// Seeds for the position hash (bucket depth) and the checksum hash of one
/// sketch column.
struct SketchSeed {
  std::uint64_t column_seed = 0;
  std::uint64_t checksum_seed = 0;

  friend bool operator==(const SketchSeed&, const SketchSeed&) = default;
};

/// Seeds of column `index` in a matrix built from `master_seed`.
SketchSeed derive_column_seed(std::uint64_t master_seed, std::uint64_t index);

/// Width in bits of alpha and gamma for a universe of size n: bit-width of n,
/// never below 32.
std::uint32_t checksum_width(std::uint64_t universe);

/// Maximum bucket count of a column over a universe of size n.
std::uint32_t depth_limit(std::uint64_t universe);

/// Checksum hash gamma(j), truncated to `width` bits. Never zero, so that a
/// bucket holding only coordinate 0 is distinguishable from an empty one.
std::uint64_t checksum(std::uint64_t coordinate, std::uint64_t checksum_seed, std::uint32_t width);

/// Trailing zero count of a hash value read as a rho-bit integer, capped at
/// rho - 1.
std::uint32_t depth_of_hash(std::uint64_t h, std::uint32_t rho);

/// depth_of_hash applied to the column's position hash h(j).
std::uint32_t random_depth(const SketchSeed& seed, std::uint64_t coordinate, std::uint32_t rho);

/// 1-sparse recovery cell over F2.
struct SketchBucket {
  std::uint64_t alpha = 0;
  std::uint64_t gamma = 0;

  bool is_zero() const { return alpha == 0 && gamma == 0; }
  void toggle(std::uint64_t coordinate, std::uint64_t coordinate_checksum) {
    alpha ^= coordinate;
    gamma ^= coordinate_checksum;
  }
  void xor_in(const SketchBucket& o) {
    alpha ^= o.alpha;
    gamma ^= o.gamma;
  }

  friend bool operator==(const SketchBucket&, const SketchBucket&) = default;
};

enum class BucketState { Empty, Good, Bad };

struct BucketReading {
  BucketState state = BucketState::Empty;
  std::uint64_t value = 0;  // meaningful only when Good
};

SketchBucket bucket_toggle(SketchBucket b, std::uint64_t coordinate, std::uint64_t checksum_seed,
                           std::uint32_t width);
BucketReading bucket_state(const SketchBucket& b, std::uint64_t checksum_seed, std::uint32_t width);

enum class SampleStatus { Empty, Good, Fail };

struct SampleResult {
  SampleStatus status = SampleStatus::Empty;
  std::uint64_t coordinate = 0;

  friend bool operator==(const SampleResult&, const SampleResult&) = default;
};

/// BalloonSketch column: a geometric l0-sampling column whose bucket storage
/// always has exactly `depth` buckets, where depth is one past the deepest
/// non-empty bucket.
class BalloonColumn {
 public:
  /// Hash results for one coordinate, reusable across columns sharing a seed.
  struct Placement {
    std::uint64_t coordinate = 0;
    std::uint64_t checksum = 0;
    std::uint32_t depth = 0;
  };

  BalloonColumn() = default;
  BalloonColumn(std::uint64_t universe, SketchSeed seed);

  Placement place(std::uint64_t coordinate) const;

  /// Toggles one coordinate. Returns the number of bucket slots touched,
  /// including reallocation copies.
  std::size_t update(std::uint64_t coordinate) { return apply(place(coordinate)); }
  std::size_t apply(const Placement& p);

  /// Bucket-wise XOR of `other` into this column. Throws SeedMismatch when
  /// the columns do not share seed and universe.
  void merge_in(const BalloonColumn& other);

  /// XOR without seed checks or trimming, for callers that fold many
  /// columns of one family and call shrink_to_depth() afterwards.
  void xor_unchecked(const BalloonColumn& other);
  void shrink_to_depth();

  SampleResult sample() const;
  BucketReading read(std::size_t index) const;

  std::span<const SketchBucket> buckets() const { return buckets_; }
  std::size_t depth() const { return buckets_.size(); }
  bool empty() const { return buckets_.empty(); }
  void clear() { std::vector<SketchBucket>().swap(buckets_); }

  std::uint64_t universe() const { return universe_; }
  const SketchSeed& seed() const { return seed_; }
  std::uint32_t rho() const { return rho_; }
  std::uint32_t width() const { return width_; }

  /// Little-endian: universe, column seed, checksum seed (u64 each), bucket
  /// count (u32), then alpha/gamma pairs at 4 bytes each when width is 32
  /// and 8 bytes otherwise.
  std::vector<std::uint8_t> serialize() const;
  static BalloonColumn deserialize(std::span<const std::uint8_t> bytes);

  friend bool operator==(const BalloonColumn& a, const BalloonColumn& b) {
    return a.universe_ == b.universe_ && a.seed_ == b.seed_ && a.buckets_ == b.buckets_;
  }

 private:
  void reallocate(std::size_t length);
  void trim();

  std::uint64_t universe_ = 0;
  SketchSeed seed_{};
  std::uint32_t rho_ = 0;
  std::uint32_t width_ = 32;
  std::vector<SketchBucket> buckets_;
};

BalloonColumn column_merge(const BalloonColumn& a, const BalloonColumn& b);

/// L independently seeded BalloonColumns over the same vector.
class SketchMatrix {
 public:
  SketchMatrix() = default;
  SketchMatrix(std::uint64_t universe, std::size_t num_columns, std::uint64_t master_seed);

  std::size_t update(std::uint64_t coordinate);
  void merge_in(const SketchMatrix& other);

  std::vector<SampleResult> sample_all() const;
  SampleResult sample_column(std::size_t index) const { return columns_.at(index).sample(); }

  std::size_t num_columns() const { return columns_.size(); }
  const BalloonColumn& column(std::size_t index) const { return columns_.at(index); }
  std::size_t total_buckets() const;
  bool empty() const;

  std::vector<std::uint8_t> serialize() const;

  friend bool operator==(const SketchMatrix&, const SketchMatrix&) = default;

 private:
  std::vector<BalloonColumn> columns_;
};

}  // namespace hybridcc
