#pragma once

#include "wtap/core.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wtap {

/// Random parent among lower ids; every non-tree pair becomes a link with
/// probability `density`; integer costs uniform in [cost_min, cost_max]; a
/// fallback parent link at cost_max for every uncovered edge; shadow-completed.
Instance gen_random_instance(int n, const Rational& density, int cost_min, int cost_max, std::uint64_t seed);

/// `wtap n m`, then `edge p c` lines, then `link u v p/q` lines. Blank lines
/// and `#` comments are skipped.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

/// Same tree and same (u, v, cost) link list in order.
bool same_structure(const Instance& a, const Instance& b);

/// Links whose endpoints are in ancestor relation.
Instance uplink_restriction(const Instance& inst);

inline const std::vector<std::string> kBenchAlgorithms = {"exact", "dp", "split2", "oddcut", "structured15", "full149"};

struct BenchConfig {
  std::uint64_t seed = 1;
  int trials = 10;
  int n_min = 4;
  int n_max = 6;
  Rational link_density{3, 10};
  int cost_min = 1;
  int cost_max = 10;
  std::vector<std::string> algorithms = kBenchAlgorithms;
  Rational gamma{3, 20};
  Rational p{25, 53};
  Rational delta{1, 4};
  int rho_prime = 0;  // 0: largest |L_e| after fixings
  int beta = 1;
  int rho = 2;
  int strong_max_n = 0;  // strong LP on trials with n <= this
  int repetitions = 1;   // runs per randomized algorithm and trial
  bool record_runtime = false;
};

/// Flat `key = value` lines; `#` starts a comment. Throws InvalidConfig.
BenchConfig parse_bench_config(std::string_view text);
/// `value` (the WTAP_SEED variable) replaces the seed when set.
void apply_seed_override(BenchConfig& cfg, const char* value);
void validate_config(const BenchConfig& cfg);

struct AlgorithmReport {
  std::string name;
  Rational cost;                 // mean over repetitions for randomized algorithms
  std::optional<Rational> multiset_cost;
  std::optional<Rational> bound; // exact per-trial bound, when one applies
  std::optional<Rational> lp;    // reference LP value for the ratio
  bool feasible = true;
  bool bound_ok = true;
  std::vector<std::uint64_t> seeds;
  double runtime_ms = 0;
  std::string error;             // non-empty when the algorithm failed
};

struct TrialReport {
  int instance_id = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  std::optional<Rational> opt;
  std::optional<Rational> cut;
  std::optional<Rational> oddcut;
  std::optional<Rational> strong;
  std::optional<Rational> z_cost;
  std::vector<AlgorithmReport> algorithms;
  std::vector<std::string> violations;
  std::vector<std::string> errors;
};

TrialReport run_trial(const BenchConfig& cfg, int trial);

std::string report_to_json(const TrialReport& report, bool with_runtime);
TrialReport report_from_json(std::string_view line);

struct AlgorithmSummary {
  std::string name;
  int runs = 0;
  int infeasible = 0;
  int bound_violations = 0;
  int errors = 0;
  std::optional<Rational> mean_ratio_opt;
  std::optional<Rational> mean_ratio_lp;
  double ci95_ratio_opt = 0;  // half-width of the normal interval
};

struct BenchSummary {
  int trials = 0;
  int violations = 0;
  int errors = 0;
  std::vector<AlgorithmSummary> algorithms;

  bool operator==(const BenchSummary&) const;
};

BenchSummary summarize(const std::vector<TrialReport>& reports, const std::vector<std::string>& algorithms);
void print_summary(std::ostream& os, const BenchSummary& summary);

struct BenchResult {
  std::vector<TrialReport> reports;
  BenchSummary summary;
};

/// One JSON line per trial to `jsonl`, in trial order.
BenchResult run_benchmark(const BenchConfig& cfg, std::ostream& jsonl);

}  // namespace wtap
