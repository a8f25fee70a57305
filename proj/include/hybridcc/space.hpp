#pragma once

// Analytic space model in 32-bit words. Every structure reports record counts
// and the harness multiplies by these costs, so measurements do not depend on
// allocator behaviour.

#include <cstddef>
#include <cstdint>

namespace hybridcc::words {

/// One alpha/gamma pair of `width` bits each.
inline constexpr std::size_t bucket(std::uint32_t width) { return 2 * ((width + 31) / 32); }

inline constexpr std::size_t kColumnHeader = 2;     // bucket pointer + length
inline constexpr std::size_t kNeighborEntry = 1;    // one vertex id in an adjacency set
inline constexpr std::size_t kEdgeRecord = 1;       // lossless per-edge level and tree flag
inline constexpr std::size_t kTreapNode = 5;        // left, right, parent, priority, size
inline constexpr std::size_t kCountPayload = 3;     // own non-tree count, two subtree counts
inline constexpr std::size_t kArcMapEntry = 4;      // edge key plus two arc node ids
inline constexpr std::size_t kDirectoryEntry = 1;   // vertex -> node id
inline constexpr std::size_t kLinkCutNode = 6;      // two children, parent, flip, weight, path max
inline constexpr std::size_t kIbltHeader = 1;
inline constexpr std::size_t kDegree = 1;
inline constexpr std::size_t kMapEntry = 2;         // hash-map slot for a per-vertex handle
inline constexpr std::size_t kPendingUpdate = 2;    // buffered edge key plus direction

}  // namespace hybridcc::words
