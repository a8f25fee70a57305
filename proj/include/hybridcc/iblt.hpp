#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hybridcc/sketch.hpp"
#include "hybridcc/types.hpp"

namespace hybridcc {

struct IbltConfig {
  std::uint64_t num_vertices = 0;
  std::size_t recovery_size = 0;  // r
  std::uint64_t seed = 0;
};

enum class RecoverStatus { Recovered, RecoveryFailed };

struct RecoverResult {
  RecoverStatus status = RecoverStatus::RecoveryFailed;
  std::vector<VertexId> elements;  // sorted; empty on failure

  bool ok() const { return status == RecoverStatus::Recovered; }
};

/// Two-tier invertible Bloom lookup table over vertex ids. Each element is
/// XORed into kHashes distinct tier-1 cells and one tier-2 cell.
class NeighborIblt {
 public:
  static constexpr std::size_t kHashes = 3;

  NeighborIblt() = default;
  explicit NeighborIblt(const IbltConfig& config);

  static std::size_t tier1_size_for(std::size_t r);
  static std::size_t tier2_size_for(std::size_t r, std::uint64_t num_vertices);

  /// Insert and delete are the same XOR toggle.
  void toggle(VertexId x);
  void insert(VertexId x) { toggle(x); }
  void erase(VertexId x) { toggle(x); }

  /// Peels a scratch copy; the table itself is never modified.
  RecoverResult recover() const;

  void merge_in(const NeighborIblt& other);
  bool empty() const;

  const IbltConfig& config() const { return config_; }
  std::span<const SketchBucket> tier1() const { return tier1_; }
  std::span<const SketchBucket> tier2() const { return tier2_; }
  std::size_t num_cells() const { return tier1_.size() + tier2_.size(); }

  /// Distinct tier-1 cell indices of x, in the order they were drawn.
  std::array<std::size_t, kHashes> tier1_locations(VertexId x) const;
  std::size_t tier2_location(VertexId x) const;

  /// Little-endian header (V, r, seed as u64; tier sizes as u32) followed by
  /// u32 alpha/gamma pairs of tier 1 then tier 2.
  std::vector<std::uint8_t> serialize() const;

  friend bool operator==(const NeighborIblt&, const NeighborIblt&);

 private:
  std::uint64_t cell_checksum(std::uint64_t x) const;
  bool pure_tier1(const std::vector<SketchBucket>& cells, std::size_t index) const;
  bool pure_tier2(const std::vector<SketchBucket>& cells, std::size_t index) const;
  void toggle_into(std::vector<SketchBucket>& t1, std::vector<SketchBucket>& t2, VertexId x) const;

  IbltConfig config_{};
  std::uint64_t checksum_seed_ = 0;
  std::uint64_t tier2_seed_ = 0;
  std::vector<SketchBucket> tier1_;
  std::vector<SketchBucket> tier2_;
};

}  // namespace hybridcc
