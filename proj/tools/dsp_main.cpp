#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dsp/harness.hpp"

namespace {

using dsp::harness::RunConfig;
using dsp::harness::VariantKind;

void add_engine_flags(CLI::App* cmd, RunConfig& cfg, std::string& variant, std::string& two,
                      std::string& exact) {
  cmd->add_option("--variant", variant, "exact-dir|approx-dir|approx-undir|unweighted")
      ->required();
  cmd->add_option("--epsilon", cfg.epsilon, "accuracy parameter (0 for exact-dir)");
  cmd->add_option("--hop-exp", cfg.hop_exp, "hop exponent a in (0,1)")->default_val(0.5);
  cmd->add_option("--chs", cfg.c_hs, "hitting-set constant")->default_val(2.0);
  cmd->add_option("--seed", cfg.seed, "rng seed")->default_val(1);
  cmd->add_flag_callback("--no-resample", [&cfg] { cfg.resample = false; },
                         "keep the sampled hub set fixed across updates");
  cmd->add_flag("--json", cfg.json, "one JSON object per report line");
  cmd->add_option("--two-approx", two, "pow2|exact (filter oracle)")->default_val("pow2");
  cmd->add_option("--exact-oracle", exact, "truncated-dijkstra|minplus")
      ->default_val("truncated-dijkstra");
  cmd->add_option("--tree-blocks", cfg.tree_blocks, "block count for tree queries (0: sqrt n)");
}

bool finish_config(RunConfig& cfg, const std::string& variant, const std::string& two,
                   const std::string& exact) {
  if (variant == "exact-dir")
    cfg.variant = VariantKind::exact_dir;
  else if (variant == "approx-dir")
    cfg.variant = VariantKind::approx_dir;
  else if (variant == "approx-undir")
    cfg.variant = VariantKind::approx_undir;
  else if (variant == "unweighted")
    cfg.variant = VariantKind::unweighted;
  else {
    std::cerr << "unknown variant '" << variant << "'\n";
    return false;
  }
  if (two == "pow2")
    cfg.two_approx = dsp::TwoApproxKind::pow2;
  else if (two == "exact")
    cfg.two_approx = dsp::TwoApproxKind::exact;
  else {
    std::cerr << "unknown two-approx kind '" << two << "'\n";
    return false;
  }
  if (exact == "truncated-dijkstra")
    cfg.exact_kind = dsp::ExactKind::truncated_dijkstra;
  else if (exact == "minplus")
    cfg.exact_kind = dsp::ExactKind::minplus;
  else {
    std::cerr << "unknown exact oracle kind '" << exact << "'\n";
    return false;
  }
  if (const char* lim = std::getenv("DSP_DENSE_LIMIT"))
    cfg.dense_limit = static_cast<std::uint32_t>(std::strtoul(lim, nullptr, 10));
  return true;
}

dsp::DynamicGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return dsp::load_graph(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fully dynamic shortest-path engine"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string graph_file, trace_file, report_file;
  std::string variant = "exact-dir", two = "pow2", exact = "truncated-dijkstra";
  std::string strategy_name = "random";
  std::uint32_t rounds = 0;

  CLI::App* run = app.add_subcommand("run", "execute a trace against an engine");
  run->add_option("--graph", graph_file, "graph file")->required();
  run->add_option("--trace", trace_file, "trace file")->required();
  add_engine_flags(run, cfg, variant, two, exact);

  CLI::App* adv = app.add_subcommand("adversary", "adaptive update/query duel");
  adv->add_option("--graph", graph_file, "graph file")->required();
  adv->add_option("--rounds", rounds, "update/query rounds")->required();
  adv->add_option("--strategy", strategy_name, "random|path-median-delete|path-endpoint-reweight")
      ->default_val("random");
  add_engine_flags(adv, cfg, variant, two, exact);

  CLI::App* stats = app.add_subcommand("stats", "check count-bound ledger of a report");
  stats->add_option("--report", report_file, "report file from a previous run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto started = std::chrono::steady_clock::now();
    bool pass = true;
    if (run->parsed() || adv->parsed()) {
      if (!finish_config(cfg, variant, two, exact)) return 2;
      dsp::DynamicGraph g = load_graph_file(graph_file);
      dsp::harness::RunResult result;
      if (run->parsed()) {
        std::ifstream in(trace_file);
        if (!in) throw std::runtime_error("cannot open trace file '" + trace_file + "'");
        const auto commands = dsp::harness::load_trace(in);
        result = dsp::harness::run_trace(std::move(g), commands, cfg);
      } else {
        const auto strategy = dsp::harness::parse_strategy(strategy_name);
        if (!strategy) throw std::runtime_error("unknown strategy '" + strategy_name + "'");
        result = dsp::harness::adversary_run(std::move(g), cfg, rounds, *strategy);
      }
      std::cout << result.report;
      pass = result.pass;
    } else {
      std::ifstream in(report_file);
      if (!in) throw std::runtime_error("cannot open report file '" + report_file + "'");
      const auto result = dsp::harness::stats_check(in);
      std::cout << result.text;
      pass = result.pass;
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    std::cerr << "elapsed_seconds=" << elapsed.count() << '\n';
    return pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
