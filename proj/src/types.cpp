#include "hybridcc/types.hpp"

#include <unordered_map>

namespace hybridcc {

ForestDelta net_forest_delta(const ForestDelta& events) {
  // Per edge the events alternate add/remove, so an even count nets to zero
  // and an odd count nets to the last event.
  std::unordered_map<Edge, std::pair<std::size_t, std::size_t>, EdgeHash> seen;  // first index, count
  std::vector<ForestEvent> last;
  for (const ForestEvent& ev : events) {
    auto [it, fresh] = seen.try_emplace(ev.edge, last.size(), 0);
    if (fresh) last.push_back(ev);
    last[it->second.first] = ev;
    ++it->second.second;
  }
  ForestDelta out;
  for (const ForestEvent& ev : last) {
    if (seen[ev.edge].second % 2 == 1) out.push_back(ev);
  }
  return out;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SeedMismatch: return "SeedMismatch";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::NonZeroDegree: return "NonZeroDegree";
    case ErrorCode::InactiveVertex: return "InactiveVertex";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NotForestEdge: return "NotForestEdge";
    case ErrorCode::MalformedUpdate: return "MalformedUpdate";
    case ErrorCode::MalformedStream: return "MalformedStream";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

}  // namespace hybridcc
