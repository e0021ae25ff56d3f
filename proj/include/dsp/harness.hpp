#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsp/engine.hpp"
#include "dsp/unweighted.hpp"

namespace dsp::harness {

enum class VariantKind { exact_dir, approx_dir, approx_undir, unweighted };

struct RunConfig {
  VariantKind variant = VariantKind::exact_dir;
  double epsilon = 0.0;
  double hop_exp = 0.5;
  double c_hs = 2.0;
  std::uint64_t seed = 1;
  bool resample = true;
  bool json = false;
  TwoApproxKind two_approx = TwoApproxKind::pow2;
  ExactKind exact_kind = ExactKind::truncated_dijkstra;
  std::uint32_t dense_limit = 2048;
  std::uint32_t tree_blocks = 0;  // 0: ceil(sqrt(n))
};

struct TraceCommand {
  enum class Kind { set_weight, delete_edge, query_path, query_tree };
  Kind kind = Kind::query_path;
  Vertex u = 0, v = 0;
  double w = 0.0;
};

/// Line format: "U u v w", "D u v", "QP s t", "QT s". Blank lines and lines
/// starting with '#' are skipped. Errors carry line numbers.
std::vector<TraceCommand> load_trace(std::istream& in);

struct QueryOutcome {
  Vertex s = 0, t = 0;
  double reported = kInfLen;
  double verified = kInfLen;
  bool valid = true;
  bool exact = false;
  double ratio = 1.0;
  std::size_t hubs = 0;
  std::size_t sum_plausible = 0;
  int cat_gap = 0;
  std::size_t touch_class = 0;
  std::size_t touch_iter = 0;
  std::uint64_t oracle_calls = 0;
  bool hs_miss = false;
  bool verify_pass = true;
};

struct RunResult {
  std::string report;  // deterministic; byte-identical on replay
  bool pass = true;
  std::size_t commands = 0, updates = 0, queries = 0, errors = 0;
  std::size_t exact_queries = 0;
  double max_finite_ratio = 1.0;
  std::vector<QueryOutcome> outcomes;
};

/// Executes the trace against the selected variant, verifying every query
/// against a fresh ground-truth run on the current graph. Per-command engine
/// errors are recorded and the run continues.
RunResult run_trace(DynamicGraph g, const std::vector<TraceCommand>& commands,
                    const RunConfig& cfg);

enum class Strategy { random_update, path_median_delete, path_endpoint_reweight };
std::optional<Strategy> parse_strategy(const std::string& name);

/// Fixed (s, t) = diameter pair of the initial graph; one verified query,
/// then `rounds` iterations of a strategy-chosen update (allowed to inspect
/// the previously returned path) followed by another verified query.
RunResult adversary_run(DynamicGraph g, const RunConfig& cfg, std::uint32_t rounds,
                        Strategy strategy);

struct StatsResult {
  std::string text;
  bool pass = true;
};

/// Re-derives the count-bound ledger from a report stream (either output
/// format): total plausible-set size per query, same-category multiplicity,
/// and the undirected touch bounds, each listed with its observed maximum.
StatsResult stats_check(std::istream& report);

/// Pair with the largest finite distance (ties toward smaller ids).
std::pair<Vertex, Vertex> diameter_pair(const DynamicGraph& g);

/// True when consecutive hub hits along the path leave a gap of more than
/// hop_bound hops, i.e. the sampled set missed this path.
bool hitting_gap_witness(const std::vector<Vertex>& path, const std::vector<Vertex>& hubs,
                         std::uint32_t n, std::int64_t hop_bound);

}  // namespace dsp::harness
