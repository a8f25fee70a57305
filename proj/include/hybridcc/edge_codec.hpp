#pragma once

#include <cstdint>

#include "hybridcc/types.hpp"

namespace hybridcc {

/// Size of the characteristic-vector universe over V vertices: C(V, 2).
inline std::uint64_t edge_universe(std::uint64_t num_vertices) {
  return num_vertices < 2 ? 1 : num_vertices * (num_vertices - 1) / 2;
}

/// Lexicographic rank of the pair (min(u,v), max(u,v)) among all pairs of
/// [0, V). Throws SelfLoop when u == v and VertexOutOfRange when either
/// endpoint is >= V.
std::uint64_t encode_edge(VertexId u, VertexId v, std::uint64_t num_vertices);

/// Exact inverse of encode_edge. Throws VertexOutOfRange when id is outside
/// the universe.
Edge decode_edge(std::uint64_t id, std::uint64_t num_vertices);

}  // namespace hybridcc
