#include "hybridcc/edge_codec.hpp"

#include <cmath>
#include <string>

namespace hybridcc {

namespace {

// First id of row u: number of pairs (a, b) with a < u.
std::uint64_t row_start(std::uint64_t u, std::uint64_t n) { return u * (2 * n - u - 1) / 2; }

}  // namespace

std::uint64_t encode_edge(VertexId u, VertexId v, std::uint64_t num_vertices) {
  if (u == v) throw Error(ErrorCode::SelfLoop, "self loop on vertex " + std::to_string(u));
  if (u >= num_vertices || v >= num_vertices) {
    throw Error(ErrorCode::VertexOutOfRange, "edge endpoint out of range");
  }
  if (u > v) std::swap(u, v);
  return row_start(u, num_vertices) + (v - u - 1);
}

Edge decode_edge(std::uint64_t id, std::uint64_t num_vertices) {
  if (num_vertices < 2 || id >= edge_universe(num_vertices)) {
    throw Error(ErrorCode::VertexOutOfRange, "coordinate outside edge universe");
  }
  // Solve row_start(u) <= id for the largest u, then correct rounding.
  const long double n = static_cast<long double>(num_vertices);
  const long double b = 2 * n - 1;
  long double guess = (b - std::sqrt(b * b - 8.0L * static_cast<long double>(id))) / 2;
  std::uint64_t u = guess <= 0 ? 0 : static_cast<std::uint64_t>(guess);
  if (u > num_vertices - 2) u = num_vertices - 2;
  while (u > 0 && row_start(u, num_vertices) > id) --u;
  while (u + 1 < num_vertices - 1 && row_start(u + 1, num_vertices) <= id) ++u;
  const std::uint64_t v = id - row_start(u, num_vertices) + u + 1;
  return Edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
}

}  // namespace hybridcc
