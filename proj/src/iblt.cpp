#include "hybridcc/iblt.hpp"

#include <algorithm>
#include <cmath>

#include "hybridcc/hash.hpp"

namespace hybridcc {

namespace {

constexpr std::uint32_t kCellWidth = 32;

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::size_t NeighborIblt::tier1_size_for(std::size_t r) {
  const auto cells = static_cast<std::size_t>(std::ceil(1.3 * static_cast<double>(r)));
  return std::max(cells, kHashes);
}

std::size_t NeighborIblt::tier2_size_for(std::size_t r, std::uint64_t num_vertices) {
  const auto by_r = static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(r)));
  return std::max<std::size_t>({by_r, ceil_log2(num_vertices), 1});
}

NeighborIblt::NeighborIblt(const IbltConfig& config)
    : config_(config),
      checksum_seed_(hash64(config.seed, 0x1b873593)),
      tier2_seed_(hash64(config.seed, 0xcc9e2d51)),
      tier1_(tier1_size_for(config.recovery_size)),
      tier2_(tier2_size_for(config.recovery_size, config.num_vertices)) {
  if (config.num_vertices > (1ULL << 32)) throw Error(ErrorCode::BadParams, "IBLT vertex range exceeds 32 bits");
}

std::uint64_t NeighborIblt::cell_checksum(std::uint64_t x) const {
  return checksum(x, checksum_seed_, kCellWidth);
}

std::array<std::size_t, NeighborIblt::kHashes> NeighborIblt::tier1_locations(VertexId x) const {
  std::array<std::size_t, kHashes> loc{};
  std::size_t found = 0;
  for (std::uint64_t round = 0; found < kHashes; ++round) {
    const std::size_t idx = hash64(x, config_.seed + round) % tier1_.size();
    if (std::find(loc.begin(), loc.begin() + found, idx) == loc.begin() + found) loc[found++] = idx;
  }
  return loc;
}

std::size_t NeighborIblt::tier2_location(VertexId x) const { return hash64(x, tier2_seed_) % tier2_.size(); }

void NeighborIblt::toggle_into(std::vector<SketchBucket>& t1, std::vector<SketchBucket>& t2, VertexId x) const {
  const std::uint64_t g = cell_checksum(x);
  for (std::size_t idx : tier1_locations(x)) t1[idx].toggle(x, g);
  t2[tier2_location(x)].toggle(x, g);
}

void NeighborIblt::toggle(VertexId x) {
  if (x >= config_.num_vertices) throw Error(ErrorCode::VertexOutOfRange, "IBLT element out of range");
  toggle_into(tier1_, tier2_, x);
}

bool NeighborIblt::pure_tier1(const std::vector<SketchBucket>& cells, std::size_t index) const {
  const SketchBucket& c = cells[index];
  if (c.is_zero() || c.alpha >= config_.num_vertices || c.gamma != cell_checksum(c.alpha)) return false;
  const auto loc = tier1_locations(static_cast<VertexId>(c.alpha));
  return std::find(loc.begin(), loc.end(), index) != loc.end();
}

bool NeighborIblt::pure_tier2(const std::vector<SketchBucket>& cells, std::size_t index) const {
  const SketchBucket& c = cells[index];
  if (c.is_zero() || c.alpha >= config_.num_vertices || c.gamma != cell_checksum(c.alpha)) return false;
  return tier2_location(static_cast<VertexId>(c.alpha)) == index;
}

RecoverResult NeighborIblt::recover() const {
  std::vector<SketchBucket> t1 = tier1_;
  std::vector<SketchBucket> t2 = tier2_;
  std::vector<VertexId> out;
  // Every peel removes one element, so a consistent table needs at most
  // (cells) peels; beyond that the checksums must have lied.
  const std::size_t budget = 4 * (t1.size() + t2.size()) + 16;
  while (out.size() <= budget) {
    bool peeled = false;
    for (std::size_t i = 0; i < t1.size() && !peeled; ++i) {
      if (pure_tier1(t1, i)) {
        const auto x = static_cast<VertexId>(t1[i].alpha);
        out.push_back(x);
        toggle_into(t1, t2, x);
        peeled = true;
      }
    }
    for (std::size_t i = 0; i < t2.size() && !peeled; ++i) {
      if (pure_tier2(t2, i)) {
        const auto x = static_cast<VertexId>(t2[i].alpha);
        out.push_back(x);
        toggle_into(t1, t2, x);
        peeled = true;
      }
    }
    if (!peeled) break;
  }
  const auto zero = [](const SketchBucket& c) { return c.is_zero(); };
  if (!std::all_of(t1.begin(), t1.end(), zero) || !std::all_of(t2.begin(), t2.end(), zero)) {
    return {RecoverStatus::RecoveryFailed, {}};
  }
  // A value peeled twice cancels; anything left with odd count is a member.
  std::sort(out.begin(), out.end());
  std::vector<VertexId> members;
  for (std::size_t i = 0; i < out.size();) {
    std::size_t j = i;
    while (j < out.size() && out[j] == out[i]) ++j;
    if ((j - i) % 2 == 1) members.push_back(out[i]);
    i = j;
  }
  return {RecoverStatus::Recovered, std::move(members)};
}

void NeighborIblt::merge_in(const NeighborIblt& other) {
  if (other.config_.seed != config_.seed || other.config_.num_vertices != config_.num_vertices ||
      other.tier1_.size() != tier1_.size() || other.tier2_.size() != tier2_.size()) {
    throw Error(ErrorCode::SeedMismatch, "merging IBLTs with different configurations");
  }
  for (std::size_t i = 0; i < tier1_.size(); ++i) tier1_[i].xor_in(other.tier1_[i]);
  for (std::size_t i = 0; i < tier2_.size(); ++i) tier2_[i].xor_in(other.tier2_[i]);
}

bool NeighborIblt::empty() const {
  const auto zero = [](const SketchBucket& c) { return c.is_zero(); };
  return std::all_of(tier1_.begin(), tier1_.end(), zero) && std::all_of(tier2_.begin(), tier2_.end(), zero);
}

std::vector<std::uint8_t> NeighborIblt::serialize() const {
  std::vector<std::uint8_t> out;
  put64(out, config_.num_vertices);
  put64(out, config_.recovery_size);
  put64(out, config_.seed);
  put32(out, static_cast<std::uint32_t>(tier1_.size()));
  put32(out, static_cast<std::uint32_t>(tier2_.size()));
  for (const auto* tier : {&tier1_, &tier2_}) {
    for (const SketchBucket& c : *tier) {
      put32(out, static_cast<std::uint32_t>(c.alpha));
      put32(out, static_cast<std::uint32_t>(c.gamma));
    }
  }
  return out;
}

bool operator==(const NeighborIblt& a, const NeighborIblt& b) {
  return a.config_.num_vertices == b.config_.num_vertices && a.config_.recovery_size == b.config_.recovery_size &&
         a.config_.seed == b.config_.seed && a.tier1_ == b.tier1_ && a.tier2_ == b.tier2_;
}

}  // namespace hybridcc
