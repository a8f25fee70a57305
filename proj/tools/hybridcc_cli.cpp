#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hybridcc/edge_codec.hpp"
#include "hybridcc/harness.hpp"

using namespace hybridcc;
using namespace hybridcc::harness;

int main(int argc, char** argv) {
  CLI::App app{"Replay or generate edge streams against a dynamic connectivity engine"};

  std::string input;
  std::string mode_text = "hybrid";
  std::string generate;
  std::uint64_t v = 0;
  std::uint64_t edges = 0;
  double p = 0.0;
  std::size_t core_size = 0;
  double core_p = 0.0;
  std::size_t updates = 0;
  RunConfig config;
  std::size_t checkpoint_every = 1000;
  std::size_t query_every = 10;
  std::string metrics_out;
  bool fail_on_mismatch = false;
  std::uint64_t mismatch_budget = 0;
  std::string output;
  bool no_timing = false;

  app.add_option("--input", input, "stream file ('-' for stdin)");
  auto* mode_opt = app.add_option("--mode", mode_text, "hybrid, lossless, sketch or streaming");
  app.add_option("--generate", generate, "gnp, planted_core, insert_then_delete or churn")
      ->check(CLI::IsMember({"gnp", "planted_core", "insert_then_delete", "churn"}));
  app.add_option("--v", v, "vertex count for generated streams");
  app.add_option("--edges", edges, "expected edge count; sets p = edges / C(V, 2)");
  app.add_option("--p", p, "edge probability (periphery for planted_core)");
  app.add_option("--core-size", core_size, "planted or churn core size");
  app.add_option("--core-p", core_p, "edge probability inside the core");
  app.add_option("--updates", updates, "update count for churn streams");
  app.add_option("--delta-mult", config.delta_mult, "density threshold is this times ceil(log2 V)")->capture_default_str();
  app.add_option("--demote-div", config.demote_div, "demote at degree <= delta / this")->capture_default_str();
  app.add_option("--tiers", config.tiers, "sketch tiers (0 = ceil(log2 V))");
  app.add_option("--columns", config.columns, "sketch columns per vertex in streaming mode (0 = ceil(log2 V))");
  app.add_option("--buffer", config.buffer, "pending dense updates in hybrid mode")->capture_default_str();
  app.add_option("--seed", config.seed, "seed for generation and hashing")->capture_default_str();
  app.add_option("--checkpoint-every", checkpoint_every, "updates between checkpoints in generated streams")
      ->capture_default_str();
  app.add_option("--query-every", query_every, "updates between queries in generated streams")->capture_default_str();
  app.add_option("--metrics-out", metrics_out, "CSV destination");
  app.add_flag("--fail-on-mismatch", fail_on_mismatch, "exit 3 when oracle mismatches exceed the budget");
  app.add_option("--mismatch-budget", mismatch_budget, "mismatches tolerated by --fail-on-mismatch")
      ->capture_default_str();
  app.add_option("--output", output, "write the generated stream here");
  app.add_option("--audit-every", config.audit_every, "structural audits every this many updates");
  app.add_flag("--deep-audit", config.deep_audit, "recompute sketch aggregates during audits");
  app.add_flag("--no-timing", no_timing, "write zero throughput and latency for byte-stable CSV");
  CLI11_PARSE(app, argc, argv);
  config.timing = !no_timing;

  try {
    if (input.empty() == generate.empty()) throw Error(ErrorCode::BadParams, "give exactly one of --input, --generate");
    Stream stream;
    if (!input.empty()) {
      if (input == "-") {
        stream = read_stream(std::cin);
      } else {
        std::ifstream in(input);
        if (!in) throw Error(ErrorCode::BadParams, "cannot open " + input);
        stream = read_stream(in);
      }
    } else {
      if (v < 2) throw Error(ErrorCode::BadParams, "--v must be at least 2");
      if (edges) p = static_cast<double>(edges) / static_cast<double>(edge_universe(v));
      const StreamShape shape{query_every, checkpoint_every};
      if (generate == "churn") {
        stream = churn_stream({v, updates, core_size, core_size ? 0.7 : 0.0, 0.35, updates / 4}, shape, config.seed);
      } else {
        const auto set = core_size ? planted_core_edges(v, p, core_size, core_p, config.seed)
                                   : gnp_edges(v, p, config.seed);
        stream = generate == "insert_then_delete" ? insert_then_delete(v, set, shape, config.seed)
                                                  : insert_stream(v, set, shape, config.seed);
      }
      if (!output.empty()) {
        std::ofstream out(output);
        write_stream(out, stream);
        if (mode_opt->count() == 0) return 0;
      }
    }

    const Mode mode = parse_mode(mode_text);
    const RunResult r = run(mode, stream, config);
    for (bool a : r.answers) std::puts(a ? "true" : "false");
    if (!metrics_out.empty()) {
      std::ofstream out(metrics_out);
      write_metrics(out, r.rows);
    }
    const std::uint64_t mismatches = r.query_mismatches + r.checkpoint_failures;
    std::fprintf(stderr, "%s: %zu queries, %llu mismatches, %llu failed checkpoints, %zu words\n", mode_name(mode),
                 r.answers.size(), static_cast<unsigned long long>(r.query_mismatches),
                 static_cast<unsigned long long>(r.checkpoint_failures), r.final_words);
    if (fail_on_mismatch && mismatches > mismatch_budget) return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
