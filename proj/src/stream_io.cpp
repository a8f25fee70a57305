#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "hybridcc/harness.hpp"

namespace hybridcc::harness {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::MalformedStream, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

Stream read_stream(std::istream& in) {
  Stream s;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "V" || !(ls >> s.num_vertices)) bad_line(lineno, "expected header 'V <count>'");
      header = true;
    } else if (tag == "c") {
      s.ops.push_back({OpKind::Checkpoint, 0, 0});
    } else if (tag == "i" || tag == "d" || tag == "q") {
      std::int64_t u = -1;
      std::int64_t v = -1;
      if (!(ls >> u >> v)) bad_line(lineno, "expected two vertex ids");
      if (u < 0 || v < 0 || static_cast<std::uint64_t>(u) >= s.num_vertices ||
          static_cast<std::uint64_t>(v) >= s.num_vertices) {
        bad_line(lineno, "vertex id out of range");
      }
      if (tag != "q" && u == v) bad_line(lineno, "self loop");
      s.ops.push_back({static_cast<OpKind>(tag[0]), static_cast<VertexId>(u), static_cast<VertexId>(v)});
    } else {
      bad_line(lineno, "unknown op '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) bad_line(lineno, "trailing tokens");
  }
  if (!header) bad_line(lineno, "missing header");
  return s;
}

void write_stream(std::ostream& out, const Stream& s) {
  out << "V " << s.num_vertices << '\n';
  for (const StreamOp& op : s.ops) {
    if (op.kind == OpKind::Checkpoint) {
      out << "c\n";
    } else {
      out << static_cast<char>(op.kind) << ' ' << op.u << ' ' << op.v << '\n';
    }
  }
}

std::string well_formedness_error(const Stream& s) {
  std::unordered_set<std::uint64_t> present;
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    const StreamOp& op = s.ops[i];
    if (op.kind == OpKind::Checkpoint) continue;
    if (op.u >= s.num_vertices || op.v >= s.num_vertices) return "op " + std::to_string(i) + ": id out of range";
    if (op.kind == OpKind::Query) continue;
    if (op.u == op.v) return "op " + std::to_string(i) + ": self loop";
    const std::uint64_t key = edge_key(Edge(op.u, op.v));
    if (op.kind == OpKind::Insert && !present.insert(key).second) {
      return "op " + std::to_string(i) + ": duplicate insert";
    }
    if (op.kind == OpKind::Delete && present.erase(key) == 0) {
      return "op " + std::to_string(i) + ": delete of absent edge";
    }
  }
  return {};
}

}  // namespace hybridcc::harness
