#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hybridcc {

using VertexId = std::uint32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Packs a canonical edge into a single 64-bit map key.
inline std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

inline Edge edge_from_key(std::uint64_t key) {
  return Edge(static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu));
}

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept { return std::hash<std::uint64_t>{}(edge_key(e)); }
};

/// One spanning-forest change reported by a dynamic connectivity engine.
struct ForestEvent {
  Edge edge;
  bool added = false;

  friend bool operator==(const ForestEvent&, const ForestEvent&) = default;
};

using ForestDelta = std::vector<ForestEvent>;

/// Collapses add/remove pairs of the same edge, keeping first-occurrence order.
ForestDelta net_forest_delta(const ForestDelta& events);

enum class ErrorCode {
  SeedMismatch,
  SelfLoop,
  VertexOutOfRange,
  DuplicateEdge,
  MissingEdge,
  NonZeroDegree,
  InactiveVertex,
  DuplicateVertex,
  NotForestEdge,
  MalformedUpdate,
  MalformedStream,
  BadParams,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hybridcc
