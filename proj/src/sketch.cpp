#include "hybridcc/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "hybridcc/hash.hpp"

namespace hybridcc {

namespace {

constexpr std::uint64_t kChecksumSalt = 0x5bd1e9955bd1e995ULL;
constexpr std::uint32_t kDepthHeadroom = 8;

std::uint64_t width_mask(std::uint32_t width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <typename T>
T get(std::span<const std::uint8_t> in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw Error(ErrorCode::MalformedStream, "truncated column bytes");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(in[pos + i]) << (8 * i);
  pos += sizeof(T);
  return value;
}

}  // namespace

SketchSeed derive_column_seed(std::uint64_t master_seed, std::uint64_t index) {
  return SketchSeed{hash64(index, master_seed), hash64(index, master_seed ^ kChecksumSalt)};
}

std::uint32_t checksum_width(std::uint64_t universe) {
  return std::max<std::uint32_t>(32, static_cast<std::uint32_t>(std::bit_width(universe)));
}

std::uint32_t depth_limit(std::uint64_t universe) { return ceil_log2(universe) + kDepthHeadroom; }

std::uint64_t checksum(std::uint64_t coordinate, std::uint64_t checksum_seed, std::uint32_t width) {
  const std::uint64_t g = hash64(coordinate, checksum_seed) & width_mask(width);
  return g == 0 ? 1 : g;
}

std::uint32_t depth_of_hash(std::uint64_t h, std::uint32_t rho) {
  h &= width_mask(rho);
  if (h == 0) return rho - 1;
  return std::min<std::uint32_t>(static_cast<std::uint32_t>(std::countr_zero(h)), rho - 1);
}

std::uint32_t random_depth(const SketchSeed& seed, std::uint64_t coordinate, std::uint32_t rho) {
  return depth_of_hash(hash64(coordinate, seed.column_seed), rho);
}

SketchBucket bucket_toggle(SketchBucket b, std::uint64_t coordinate, std::uint64_t checksum_seed,
                           std::uint32_t width) {
  b.toggle(coordinate, checksum(coordinate, checksum_seed, width));
  return b;
}

BucketReading bucket_state(const SketchBucket& b, std::uint64_t checksum_seed, std::uint32_t width) {
  if (b.is_zero()) return {BucketState::Empty, 0};
  if (b.gamma == checksum(b.alpha, checksum_seed, width)) return {BucketState::Good, b.alpha};
  return {BucketState::Bad, 0};
}

// ---------------------------------------------------------------------------
// BalloonColumn

BalloonColumn::BalloonColumn(std::uint64_t universe, SketchSeed seed)
    : universe_(universe), seed_(seed), rho_(depth_limit(universe)), width_(checksum_width(universe)) {}

BalloonColumn::Placement BalloonColumn::place(std::uint64_t coordinate) const {
  return Placement{coordinate, checksum(coordinate, seed_.checksum_seed, width_),
                   random_depth(seed_, coordinate, rho_)};
}

void BalloonColumn::reallocate(std::size_t length) {
  if (length == 0) {
    clear();
    return;
  }
  std::vector<SketchBucket> next(length);
  std::copy_n(buckets_.begin(), std::min(length, buckets_.size()), next.begin());
  buckets_.swap(next);
}

void BalloonColumn::trim() {
  std::size_t keep = buckets_.size();
  while (keep > 0 && buckets_[keep - 1].is_zero()) --keep;
  if (keep != buckets_.size()) reallocate(keep);
}

std::size_t BalloonColumn::apply(const Placement& p) {
  std::size_t touched = 0;
  const std::size_t i = p.depth;
  if (i >= buckets_.size()) {
    touched += buckets_.size();
    reallocate(i + 1);
  }
  buckets_[i].toggle(p.coordinate, p.checksum);
  ++touched;
  if (i != 0) {
    buckets_[0].toggle(p.coordinate, p.checksum);
    ++touched;
  }
  if (i + 1 == buckets_.size() && buckets_[i].is_zero()) {
    std::size_t keep = i;
    while (keep > 0 && buckets_[keep - 1].is_zero()) --keep;
    touched += keep;
    reallocate(keep);
  }
  return touched;
}

void BalloonColumn::merge_in(const BalloonColumn& other) {
  if (other.seed_ != seed_ || other.universe_ != universe_) {
    throw Error(ErrorCode::SeedMismatch, "merging columns with different seeds or universes");
  }
  if (other.buckets_.empty()) return;
  if (other.buckets_.size() > buckets_.size()) reallocate(other.buckets_.size());
  for (std::size_t i = 0; i < other.buckets_.size(); ++i) buckets_[i].xor_in(other.buckets_[i]);
  trim();
}

void BalloonColumn::xor_unchecked(const BalloonColumn& other) {
  if (other.buckets_.size() > buckets_.size()) buckets_.resize(other.buckets_.size());
  for (std::size_t i = 0; i < other.buckets_.size(); ++i) buckets_[i].xor_in(other.buckets_[i]);
}

void BalloonColumn::shrink_to_depth() {
  std::size_t keep = buckets_.size();
  while (keep > 0 && buckets_[keep - 1].is_zero()) --keep;
  buckets_.resize(keep);
}

BucketReading BalloonColumn::read(std::size_t index) const {
  BucketReading r = bucket_state(buckets_.at(index), seed_.checksum_seed, width_);
  if (r.state == BucketState::Good && r.value >= universe_) r.state = BucketState::Bad;
  return r;
}

SampleResult BalloonColumn::sample() const {
  if (buckets_.empty()) return {SampleStatus::Empty, 0};
  for (std::size_t i = buckets_.size(); i-- > 0;) {
    const BucketReading r = read(i);
    if (r.state == BucketState::Good) return {SampleStatus::Good, r.value};
  }
  return {SampleStatus::Fail, 0};
}

std::vector<std::uint8_t> BalloonColumn::serialize() const {
  std::vector<std::uint8_t> out;
  const bool narrow = width_ <= 32;
  out.reserve(28 + buckets_.size() * (narrow ? 8 : 16));
  put<std::uint64_t>(out, universe_);
  put<std::uint64_t>(out, seed_.column_seed);
  put<std::uint64_t>(out, seed_.checksum_seed);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(buckets_.size()));
  for (const SketchBucket& b : buckets_) {
    if (narrow) {
      put<std::uint32_t>(out, static_cast<std::uint32_t>(b.alpha));
      put<std::uint32_t>(out, static_cast<std::uint32_t>(b.gamma));
    } else {
      put<std::uint64_t>(out, b.alpha);
      put<std::uint64_t>(out, b.gamma);
    }
  }
  return out;
}

BalloonColumn BalloonColumn::deserialize(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  const auto universe = get<std::uint64_t>(bytes, pos);
  SketchSeed seed;
  seed.column_seed = get<std::uint64_t>(bytes, pos);
  seed.checksum_seed = get<std::uint64_t>(bytes, pos);
  BalloonColumn col(universe, seed);
  const auto length = get<std::uint32_t>(bytes, pos);
  if (length > col.rho_) throw Error(ErrorCode::MalformedStream, "column longer than its depth limit");
  col.buckets_.resize(length);
  const bool narrow = col.width_ <= 32;
  for (SketchBucket& b : col.buckets_) {
    b.alpha = narrow ? get<std::uint32_t>(bytes, pos) : get<std::uint64_t>(bytes, pos);
    b.gamma = narrow ? get<std::uint32_t>(bytes, pos) : get<std::uint64_t>(bytes, pos);
  }
  if (length > 0 && col.buckets_.back().is_zero()) {
    throw Error(ErrorCode::MalformedStream, "column bytes violate the depth invariant");
  }
  return col;
}

BalloonColumn column_merge(const BalloonColumn& a, const BalloonColumn& b) {
  BalloonColumn out = a;
  out.merge_in(b);
  return out;
}

// ---------------------------------------------------------------------------
// SketchMatrix

SketchMatrix::SketchMatrix(std::uint64_t universe, std::size_t num_columns, std::uint64_t master_seed) {
  columns_.reserve(num_columns);
  std::vector<std::uint64_t> used;
  std::uint64_t index = 0;
  while (columns_.size() < num_columns) {
    const SketchSeed seed = derive_column_seed(master_seed, index++);
    if (std::find(used.begin(), used.end(), seed.column_seed) != used.end()) continue;
    used.push_back(seed.column_seed);
    columns_.emplace_back(universe, seed);
  }
}

std::size_t SketchMatrix::update(std::uint64_t coordinate) {
  std::size_t touched = 0;
  for (BalloonColumn& c : columns_) touched += c.update(coordinate);
  return touched;
}

void SketchMatrix::merge_in(const SketchMatrix& other) {
  if (other.columns_.size() != columns_.size()) {
    throw Error(ErrorCode::SeedMismatch, "merging matrices with different column counts");
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) columns_[i].merge_in(other.columns_[i]);
}

std::vector<SampleResult> SketchMatrix::sample_all() const {
  std::vector<SampleResult> out;
  out.reserve(columns_.size());
  for (const BalloonColumn& c : columns_) out.push_back(c.sample());
  return out;
}

std::size_t SketchMatrix::total_buckets() const {
  std::size_t total = 0;
  for (const BalloonColumn& c : columns_) total += c.depth();
  return total;
}

bool SketchMatrix::empty() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const BalloonColumn& c) { return c.empty(); });
}

std::vector<std::uint8_t> SketchMatrix::serialize() const {
  std::vector<std::uint8_t> out;
  put<std::uint32_t>(out, static_cast<std::uint32_t>(columns_.size()));
  for (const BalloonColumn& c : columns_) {
    const auto bytes = c.serialize();
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

}  // namespace hybridcc
