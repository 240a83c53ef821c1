#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rig/ham.hpp"

namespace rig {

enum class ExperimentKind {
  min_degree,
  joint_failure,
  degree1_poisson,
  complexity,
  property_prevalence,
  end_sets,
  deletable_rate,
};

const char* kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::min_degree;
  std::vector<std::uint32_t> ns;  // sweep over n (complexity uses several)
  std::string m_rule = "n";       // "n" | "nlnn" | "n^X" | integer literal
  double c = 0.0;
  std::optional<double> p_override;  // default: p from solve_p(n, m, c)
  std::uint32_t trials = 100;
  std::uint64_t master_seed = 1;
  double lambda = 1.0;      // deletable_rate
  double eps_regime = 0.1;  // solve_p regime split
  bool dedup = true;        // harness default; recorded in the summary
  std::uint64_t max_queue = 10'000'000;
  std::uint64_t property_samples = 1000;  // property_prevalence sampled checks
  int threads = 0;                        // 0: RIG_THREADS env, else all cores
};

enum class TrialHam { na, success, failure, overflow };

// One per-trial record; reproducible from (config, trial index).
struct TrialReport {
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double p = 0.0;
  std::uint32_t min_degree = 0;
  std::uint32_t degree1_count = 0;
  TrialHam ham = TrialHam::na;
  std::uint32_t fail_stage = 0;  // valid when ham == failure
  HamCounters counters;          // valid when ham != na
  std::optional<std::uint32_t> end_size;
  std::optional<std::uint32_t> end_min_x_size;
  std::optional<bool> deletable;
  bool end_capped = false;  // END computation hit its cap (not in the CSV)
  // property_prevalence verdicts: P0 P1 P2 P3 P4 P5 VR
  // -1 absent, 0 violated, 1 verified, 2 no violation found
  std::array<int, 7> prop_verdicts{-1, -1, -1, -1, -1, -1, -1};
};

struct ExperimentResult {
  std::vector<TrialReport> records;
  std::string csv;
  nlohmann::ordered_json summary;
};

// Runs trials on OpenMP workers with per-trial streams split from the master
// seed; records are identical for any worker count.
ExperimentResult run_trials(const ExperimentConfig& config);

// Deterministic aggregation of per-trial records.  Raises ParameterError on
// empty input.
std::string records_csv(const std::vector<TrialReport>& records);
nlohmann::ordered_json summarize(const std::vector<TrialReport>& records,
                                 const ExperimentConfig& config);

// Writes records.csv and summary.json under out_dir (created if needed).
void write_experiment(const ExperimentResult& result, const std::string& out_dir);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959964);

// Least-squares slope of ln(y) against ln(x); nullopt when fewer than two
// usable points.
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points);

std::uint32_t resolve_m_rule(const std::string& rule, std::uint32_t n);

// RIG_THREADS caps the worker count; absent means one worker per core.
int worker_count(int requested);

}  // namespace rig
