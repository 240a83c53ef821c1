// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rig/bipartite.hpp"
#include "rig/errors.hpp"
#include "rig/experiments.hpp"
#include "rig/graph.hpp"
#include "rig/ham.hpp"
#include "rig/oracle.hpp"
#include "rig/params.hpp"
#include "rig/properties.hpp"
#include "rig/rng.hpp"
#include "rig/sparsify.hpp"
#include "rig/thresholds.hpp"

using namespace rig;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Seq = std::vector<std::uint32_t>;

// ---------------------------------------------------------------- 1
Outcome edge_construction_equivalence() {
  Rng rng(1001);
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(20));
    const auto m = static_cast<std::uint32_t>(1 + rng.below(20));
    const double p = 0.05 * static_cast<double>(1 + (it % 19));  // 0.05 .. 0.95
    auto b = std::make_shared<const BipartiteIncidence>(
        sample_bipartite(n, m, p, rng.u64()));
    if (intersection_of(b).edges() != oracle::edges_bruteforce(*b)) ++bad;
  }
  return {bad == 0, "mismatches " + std::to_string(bad) + "/500"};
}

// ---------------------------------------------------------------- 2
Outcome rotate_property_suite() {
  Rng rng(1002);
  int bad = 0;
  for (int it = 0; it < 10'000; ++it) {
    const auto k = static_cast<std::uint32_t>(4 + rng.below(47));
    Seq seq(k);
    for (std::uint32_t i = 0; i < k; ++i) seq[i] = i;
    for (std::uint32_t i = k; i-- > 1;) std::swap(seq[i], seq[rng.below(i + 1)]);
    const auto j = static_cast<std::size_t>(1 + rng.below(k - 3));
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i + 1 < k; ++i) edges.emplace_back(seq[i], seq[i + 1]);
    edges.emplace_back(seq.back(), seq[j]);
    const IntersectionGraph g = IntersectionGraph::from_adjacency(k, edges);

    const PathState rotated = rotate(g, PathState{seq, 0}, {seq.back(), seq[j]});

    Seq expect(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(j + 1));
    expect.insert(expect.end(), seq.rbegin(),
                  seq.rend() - static_cast<std::ptrdiff_t>(j + 1));

    Seq sorted_in(seq), sorted_out(rotated.seq);
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());

    const bool ok = rotated.seq == expect && rotated.seq.size() == seq.size() &&
                    sorted_in == sorted_out &&
                    std::equal(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(j + 1),
                               rotated.seq.begin());
    if (!ok) ++bad;
  }
  return {bad == 0, "mismatches " + std::to_string(bad) + "/10000"};
}

// ---------------------------------------------------------------- 3
Outcome ham_soundness() {
  Rng rng(1003);
  int bad = 0, successes = 0, oracle_checked = 0;
  for (int it = 0; it < 10'000; ++it) {
    const auto n = static_cast<std::uint32_t>(3 + rng.below(58));
    const auto m = static_cast<std::uint32_t>(1 + rng.below(n));
    double p;
    if (it % 10 < 7) {
      const double c = 0.5 + 2.5 * rng.canonical();
      p = std::min(0.95, c / std::sqrt(static_cast<double>(n) * m));
    } else {
      p = 0.01 + 0.29 * rng.canonical();
    }
    const IntersectionGraph g = intersection_of(sample_bipartite(n, m, p, rng.u64()));
    const double d = std::max(2.0, static_cast<double>(n) * m * p * p);
    HamOptions opt;
    opt.max_queue = 50'000;
    const HamOutcome out = run_ham(g, d, opt);
    if (out.result != HamResult::cycle) continue;
    ++successes;
    if (!validate_cycle(g, out.cycle)) ++bad;
    if (n <= 20) {
      ++oracle_checked;
      if (!oracle::is_hamiltonian_bruteforce(g).hamiltonian) ++bad;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d successes, %d oracle-confirmed, %d violations",
                successes, oracle_checked, bad);
  return {bad == 0 && successes > 1000 && oracle_checked > 200, buf};
}

// shared runs for criteria 4 and 6
const ExperimentResult& min_degree_law_runs() {
  static const ExperimentResult result = [] {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::min_degree;
    cfg.ns = {3000};
    cfg.m_rule = "n";
    cfg.c = 0.0;
    cfg.trials = 2000;
    cfg.master_seed = 20260101;
    return run_trials(cfg);
  }();
  return result;
}

// ---------------------------------------------------------------- 4
Outcome min_degree_limit_law() {
  const auto& summary = min_degree_law_runs().summary;
  const double frac = summary["sweep"][0]["min_degree"]["fraction_ge2"];
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "Pr[min degree >= 2] = %.4f, band [0.318, 0.418], target e^-1 = %.4f",
                frac, std::exp(-1.0));
  return {frac >= 0.318 && frac <= 0.418, buf};
}

// ---------------------------------------------------------------- 5
Outcome joint_failure_vanishes() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::joint_failure;
  cfg.ns = {1000};
  cfg.m_rule = "n";
  cfg.c = 2.0;
  cfg.trials = 500;
  cfg.master_seed = 20260105;
  cfg.max_queue = 500'000;
  const ExperimentResult result = run_trials(cfg);
  const auto& ham = result.summary["sweep"][0]["ham"];
  const double success_rate = ham["success_rate_given_ge2"];
  const double joint_rate = ham["joint_failure_rate"];
  const std::uint64_t overflow = ham["overflow"];
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "success given min-deg>=2: %.4f (need >= 0.95); joint rate %.4f "
                "(need <= 0.05); overflows %llu",
                success_rate, joint_rate, static_cast<unsigned long long>(overflow));
  return {success_rate >= 0.95 && joint_rate <= 0.05, buf};
}

// ---------------------------------------------------------------- 6
Outcome poisson_degree1() {
  const auto& records = min_degree_law_runs().records;
  double sum = 0.0;
  for (const TrialReport& r : records) sum += r.degree1_count;
  const double mean = sum / static_cast<double>(records.size());
  double var = 0.0;
  for (const TrialReport& r : records) {
    const double d = r.degree1_count - mean;
    var += d * d;
  }
  var /= static_cast<double>(records.size() - 1);
  const double ratio = mean > 0.0 ? var / mean : 0.0;

  // context: the isolated-vertex count at the same parameters
  double iso_sum = 0.0;
  const int iso_trials = 300;
  for (int t = 0; t < iso_trials; ++t) {
    const TrialReport& r = records[t];
    const IntersectionGraph g = intersection_of(sample_bipartite(r.n, r.m, r.p, r.seed));
    iso_sum += g.count_degree(0);
  }
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "degree-1 mean %.4f (need [0.75, 1.35]), var/mean %.4f (need "
                "[0.7, 1.4]); for reference, isolated-vertex mean %.4f over %d trials",
                mean, ratio, iso_sum / iso_trials, iso_trials);
  const bool pass = mean >= 0.75 && mean <= 1.35 && ratio >= 0.7 && ratio <= 1.4;
  return {pass, buf};
}

// ---------------------------------------------------------------- 7
Outcome complexity_scaling() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::complexity;
  cfg.ns = {200, 400, 800, 1600};
  cfg.m_rule = "n";
  cfg.c = 2.0;
  cfg.trials = 50;
  cfg.master_seed = 20260107;
  cfg.max_queue = 500'000;
  const ExperimentResult result = run_trials(cfg);
  const auto& slope_json = result.summary["rotations_loglog_slope"];
  if (slope_json.is_null()) return {false, "slope undefined"};
  const double slope = slope_json;
  std::string detail = "log-log slope of mean rotations " + std::to_string(slope) +
                       " (need <= 3.5); means:";
  for (const auto& point : result.summary["sweep"])
    detail += " n=" + point["n"].dump() + ":" +
              std::to_string(static_cast<double>(point["ham"]["mean_rotations"]));
  return {slope <= 3.5, detail};
}

// ---------------------------------------------------------------- 8
namespace naive {

std::uint32_t neighbourhood(const IntersectionGraph& g, const Seq& s) {
  std::set<std::uint32_t> nb;
  for (std::uint32_t v : s)
    for (std::uint32_t u : g.neighbours(v)) nb.insert(u);
  for (std::uint32_t v : s) nb.erase(v);
  return static_cast<std::uint32_t>(nb.size());
}

bool p3_holds(const IntersectionGraph& g, const Partition& part, const ModelParams& params,
              double b1) {
  const auto s_max = static_cast<std::uint64_t>(std::min(
      std::floor(params.n / params.d1), static_cast<double>(part.large.size())));
  if (s_max < 1) return true;
  bool ok = true;
  Seq subset;
  std::function<void(std::size_t)> recurse = [&](std::size_t from) {
    if (!ok) return;
    if (!subset.empty()) {
      if (static_cast<double>(neighbourhood(g, subset)) <
          b1 * params.d1 * static_cast<double>(subset.size()))
        ok = false;
    }
    if (subset.size() == s_max) return;
    for (std::size_t i = from; i < part.large.size(); ++i) {
      subset.push_back(part.large[i]);
      recurse(i + 1);
      subset.pop_back();
    }
  };
  recurse(0);
  return ok;
}

bool vr_holds(const BipartiteIncidence& b, const ModelParams& params) {
  const auto r_max = static_cast<std::uint64_t>(
      std::min(static_cast<double>(b.m), std::floor(1.0 / params.p)));
  bool ok = true;
  Seq set;
  std::function<void(std::uint32_t)> recurse = [&](std::uint32_t from) {
    if (!ok) return;
    if (!set.empty()) {
      std::set<std::uint32_t> vs;
      for (std::uint32_t w : set)
        for (std::uint32_t v : b.chosen_by[w]) vs.insert(v);
      if (static_cast<double>(vs.size()) <
          params.n * params.p * static_cast<double>(set.size()) / 2.0 + 1.0)
        ok = false;
    }
    if (set.size() == r_max) return;
    for (std::uint32_t w = from; w < b.m; ++w) {
      set.push_back(w);
      recurse(w + 1);
      set.pop_back();
    }
  };
  recurse(0);
  return ok;
}

std::vector<std::vector<int>> distances(const IntersectionGraph& g) {
  const int n = static_cast<int>(g.size());
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (int v = 0; v < n; ++v)
    for (std::uint32_t u : g.neighbours(static_cast<std::uint32_t>(v))) d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace naive

Outcome property_oracle_equivalence() {
  Rng rng(1008);
  int bad = 0;
  for (int it = 0; it < 200; ++it) {
    const auto n = static_cast<std::uint32_t>(4 + rng.below(11));  // <= 14
    const auto m = static_cast<std::uint32_t>(2 + rng.below(13));
    const double p = 0.05 + 0.55 * rng.canonical();
    auto b = std::make_shared<const BipartiteIncidence>(
        sample_bipartite(n, m, p, rng.u64()));
    const IntersectionGraph g = intersection_of(b);
    const ModelParams params = derived_params(n, m, p);
    const Partition part = make_partition(g, params, PartitionVariant::plain);

    // partition against a direct W'(v) recount
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint32_t wprime = 0;
      for (std::uint32_t w : b->chose[v])
        if (b->chosen_by[w].size() >= 2) ++wprime;
      if (part.is_small[v] != (static_cast<double>(wprime) <= 0.1 * params.d0)) ++bad;
    }

    // P0
    if ((check_p0(g, 2).verdict == Verdict::verified) != (g.min_degree() >= 2)) ++bad;

    // P1
    {
      const bool clause1 =
          static_cast<double>(part.small.size()) <= std::cbrt(static_cast<double>(n));
      const bool clause2 =
          !(params.d0 >= 2.0 * std::log(static_cast<double>(n))) || part.small.empty();
      if ((check_p1(part, params).verdict == Verdict::verified) != (clause1 && clause2))
        ++bad;
    }

    // P2
    {
      const auto dist = naive::distances(g);
      bool violated = false;
      for (std::uint32_t a : part.small)
        for (std::uint32_t c : part.small)
          if (a != c && dist[a][c] <= 4) violated = true;
      if ((check_p2(g, part).verdict == Verdict::violated) != violated) ++bad;
    }

    // P3 exhaustive vs recursive enumeration; sampled soundness
    {
      const PropertyReport ex = check_p3(g, part, params, kB1, {true, 0, 0});
      if ((ex.verdict == Verdict::verified) != naive::p3_holds(g, part, params, kB1)) ++bad;
      const PropertyReport sa = check_p3(g, part, params, kB1, {false, 1000, rng.u64()});
      if (sa.verdict == Verdict::violated && ex.verdict != Verdict::violated) ++bad;
    }

    // P4
    {
      bool violated = false;
      for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t wprime = 0;
        for (std::uint32_t w : b->chose[v])
          if (b->chosen_by[w].size() >= 2) ++wprime;
        if (static_cast<double>(b->chose[v].size()) > 4.0 * m * p ||
            static_cast<double>(wprime) > 4.0 * params.d0 ||
            static_cast<double>(g.degree(v)) > 12.0 * params.d1)
          violated = true;
      }
      if ((check_p4(g, params).verdict == Verdict::violated) != violated) ++bad;
    }

    // P5
    {
      const double bound = std::log(static_cast<double>(n)) /
                           std::log(std::log(static_cast<double>(n))) *
                           std::max(static_cast<double>(n) * p, 4.0);
      bool violated = false;
      for (std::uint32_t w = 0; w < m; ++w)
        if (static_cast<double>(b->chosen_by[w].size()) > bound) violated = true;
      if ((check_p5(g, params).verdict == Verdict::violated) != violated) ++bad;
    }

    // VR exhaustive vs recursive enumeration; sampled soundness
    {
      const PropertyReport ex = check_vr(*b, params, {true, 0, 0});
      if ((ex.verdict == Verdict::verified) != naive::vr_holds(*b, params)) ++bad;
      const PropertyReport sa = check_vr(*b, params, {false, 1000, rng.u64()});
      if (sa.verdict == Verdict::violated && ex.verdict != Verdict::violated) ++bad;
    }
  }
  return {bad == 0, "mismatches " + std::to_string(bad) + " over 200 instances"};
}

// ---------------------------------------------------------------- 9
Outcome sparsification_coupling() {
  Rng rng(1009);
  int bad = 0, deletable_checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const auto n = static_cast<std::uint32_t>(10 + rng.below(50));
    const auto m = static_cast<std::uint32_t>(5 + rng.below(50));
    const double p =
        std::min(0.9, (0.4 + 1.6 * rng.canonical()) / std::sqrt(static_cast<double>(n)));
    auto b = std::make_shared<const BipartiteIncidence>(
        sample_bipartite(n, m, p, rng.u64()));
    const double lambda = rng.canonical() * n;
    const SparsifiedTriple sp = sparsify(b, lambda, rng.u64());

    const auto original = sp.original.edges();
    const auto sparse = sp.sparse.edges();
    if (!std::includes(original.begin(), original.end(), sparse.begin(), sparse.end()))
      ++bad;
    std::vector<Edge> merged(sparse);
    merged.insert(merged.end(), sp.deleted_edges.begin(), sp.deleted_edges.end());
    std::sort(merged.begin(), merged.end());
    if (merged != original) ++bad;
    std::vector<Edge> overlap;
    std::set_intersection(sparse.begin(), sparse.end(), sp.deleted_edges.begin(),
                          sp.deleted_edges.end(), std::back_inserter(overlap));
    if (!overlap.empty()) ++bad;

    // deletable verdict vs a naive recount on failing searches
    const ModelParams params = derived_params(n, m, p);
    if (!(params.d > 1.0)) continue;
    HamOptions opt;
    opt.max_queue = 50'000;
    const HamOutcome out = run_ham(sp.original, params.d, opt);
    if (out.result != HamResult::failure) continue;
    ++deletable_checked;
    const Partition part = make_partition(sp.original, params, PartitionVariant::plain);
    const double b2 = 0.5 * kB1 * (1.0 + 1e4 * rng.canonical());
    const DeletableVerdict verdict =
        is_deletable(sp.original, part, out.trace, sp.deleted_edges, b2, params.d, params,
                     PartitionVariant::plain);
    bool d1_ok = true, d2_ok = true, d3_ok = true;
    for (const auto& [u, v] : sp.deleted_edges)
      if (part.is_small[u] || part.is_small[v]) d1_ok = false;
    for (std::uint32_t v : part.large) {
      int cnt = 0;
      for (const auto& e : sp.deleted_edges)
        if (e.first == v || e.second == v) ++cnt;
      if (static_cast<double>(cnt) > b2 * params.d) d2_ok = false;
    }
    for (const auto& e : sp.deleted_edges)
      for (const auto& h : out.trace.h_set)
        if (e == h) d3_ok = false;
    if (verdict.deletable != (d1_ok && d2_ok && d3_ok)) ++bad;
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "mismatches %d; deletable verdicts compared %d", bad,
                deletable_checked);
  return {bad == 0 && deletable_checked > 50, buf};
}

// ---------------------------------------------------------------- 10
Outcome solve_p_round_trip() {
  Rng rng(1010);
  int bad = 0, done = 0;
  while (done < 100) {
    const auto n = static_cast<std::uint32_t>(50 + rng.below(100'000));
    const std::uint32_t m = rng.bernoulli(0.7)
                                ? n
                                : static_cast<std::uint32_t>(10.0 * n);
    const double c = -2.0 + 5.0 * rng.canonical();
    ThresholdSpec spec;
    try {
      spec = solve_p(n, m, c);
    } catch (const RegimeError&) {
      continue;
    } catch (const InfeasibleError&) {
      continue;
    }
    ++done;
    if (spec.residual > 1e-12) ++bad;
    const ThresholdSpec higher = solve_p(n, m, c + 0.3);
    if (!(higher.p > spec.p)) ++bad;
  }
  return {bad == 0, "violations " + std::to_string(bad) + "/100"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "edge-construction equivalence", edge_construction_equivalence},
      {2, "rotate property suite", rotate_property_suite},
      {3, "search soundness", ham_soundness},
      {4, "min-degree limit law at desk scale", min_degree_limit_law},
      {5, "joint failure event vanishes", joint_failure_vanishes},
      {6, "poisson degree-1 law", poisson_degree1},
      {7, "rotation-count scaling", complexity_scaling},
      {8, "property-checker oracle equivalence", property_oracle_equivalence},
      {9, "sparsification coupling invariants", sparsification_coupling},
      {10, "solve_p round trip", solve_p_round_trip},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
