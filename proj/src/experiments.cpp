#include "rig/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "rig/errors.hpp"
#include "rig/oracle.hpp"
#include "rig/params.hpp"
#include "rig/properties.hpp"
#include "rig/rng.hpp"
#include "rig/sparsify.hpp"
#include "rig/thresholds.hpp"
#include "rig/version.hpp"

namespace rig {

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::min_degree:
      return "min_degree";
    case ExperimentKind::joint_failure:
      return "joint_failure";
    case ExperimentKind::degree1_poisson:
      return "degree1_poisson";
    case ExperimentKind::complexity:
      return "complexity";
    case ExperimentKind::property_prevalence:
      return "property_prevalence";
    case ExperimentKind::end_sets:
      return "end_sets";
    case ExperimentKind::deletable_rate:
      return "deletable_rate";
  }
  return "?";
}

ExperimentKind kind_from_name(const std::string& name) {
  for (ExperimentKind k :
       {ExperimentKind::min_degree, ExperimentKind::joint_failure,
        ExperimentKind::degree1_poisson, ExperimentKind::complexity,
        ExperimentKind::property_prevalence, ExperimentKind::end_sets,
        ExperimentKind::deletable_rate}) {
    if (name == kind_name(k)) return k;
  }
  throw ParameterError("unknown experiment kind: " + name);
}

std::uint32_t resolve_m_rule(const std::string& rule, std::uint32_t n) {
  if (rule == "n") return n;
  if (rule == "nlnn") {
    return static_cast<std::uint32_t>(
        std::llround(static_cast<double>(n) * std::log(static_cast<double>(n))));
  }
  if (rule.rfind("n^", 0) == 0) {
    std::size_t used = 0;
    const double exponent = std::stod(rule.substr(2), &used);
    if (used != rule.size() - 2) throw ParameterError("bad m-rule exponent: " + rule);
    return static_cast<std::uint32_t>(std::llround(std::pow(static_cast<double>(n), exponent)));
  }
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(rule, &used);
  } catch (const std::exception&) {
    throw ParameterError("bad m-rule: " + rule);
  }
  if (used != rule.size() || value < 1) throw ParameterError("bad m-rule: " + rule);
  return static_cast<std::uint32_t>(value);
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RIG_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  return omp_get_max_threads();
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (phat + z2 / (2.0 * nt)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points)
    if (x > 0.0 && y > 0.0) logs.emplace_back(std::log(x), std::log(y));
  if (logs.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(logs.size());
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (k * sxy - sx * sy) / denom;
}

namespace {

const char* ham_name(TrialHam h) {
  switch (h) {
    case TrialHam::na:
      return "na";
    case TrialHam::success:
      return "success";
    case TrialHam::failure:
      return "failure";
    case TrialHam::overflow:
      return "overflow";
  }
  return "?";
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int verdict_code(const PropertyReport& r) {
  switch (r.verdict) {
    case Verdict::violated:
      return 0;
    case Verdict::verified:
      return 1;
    case Verdict::no_violation_found:
      return 2;
  }
  return -1;
}

bool needs_ham(ExperimentKind k) {
  return k == ExperimentKind::joint_failure || k == ExperimentKind::complexity ||
         k == ExperimentKind::end_sets || k == ExperimentKind::deletable_rate;
}

TrialReport run_one(const ExperimentConfig& cfg, std::uint32_t n, std::uint32_t m, double p,
                    std::uint32_t index) {
  TrialReport r;
  r.trial = index;
  r.seed = derive_stream_seed(cfg.master_seed, index);
  r.n = n;
  r.m = m;
  r.p = p;

  auto b = std::make_shared<const BipartiteIncidence>(sample_bipartite(n, m, p, r.seed));
  IntersectionGraph g = intersection_of(b);
  r.min_degree = g.min_degree();
  r.degree1_count = g.count_degree(1);

  if (needs_ham(cfg.kind)) {
    const ModelParams params = derived_params(n, m, p);
    HamOptions opt;
    opt.dedup = cfg.dedup;
    opt.max_queue = cfg.max_queue;
    const HamOutcome out = run_ham(g, params.d, opt);
    r.counters = out.counters;
    switch (out.result) {
      case HamResult::cycle:
        r.ham = TrialHam::success;
        break;
      case HamResult::failure:
        r.ham = TrialHam::failure;
        r.fail_stage = out.trace.stage;
        break;
      case HamResult::overflow:
        r.ham = TrialHam::overflow;
        break;
    }

    if (cfg.kind == ExperimentKind::end_sets && r.ham == TrialHam::failure) {
      try {
        const EndSets es = end_sets(g, out.trace, out.budget_t, cfg.max_queue);
        r.end_size = static_cast<std::uint32_t>(es.end_g.size());
        std::uint32_t least = 0;
        if (!es.end_g.empty()) {
          least = UINT32_MAX;
          for (const auto& [x, vs] : es.end_gx)
            least = std::min(least, static_cast<std::uint32_t>(vs.size()));
        }
        r.end_min_x_size = least;
      } catch (const CapacityError&) {
        r.end_capped = true;
      }
    }

    if (cfg.kind == ExperimentKind::deletable_rate && r.ham == TrialHam::failure) {
      const SparsifiedTriple sp = sparsify(b, cfg.lambda, derive_stream_seed(r.seed, 1));
      const Partition part = make_partition(g, params, PartitionVariant::plain);
      const DeletableVerdict verdict = is_deletable(
          g, part, out.trace, sp.deleted_edges, 0.5 * kB1, params.d, params,
          PartitionVariant::plain);
      r.deletable = verdict.deletable;
    }
  }

  if (cfg.kind == ExperimentKind::property_prevalence) {
    const ModelParams params = derived_params(n, m, p);
    const Partition part = make_partition(g, params, PartitionVariant::plain);
    r.prop_verdicts[0] = verdict_code(check_p0(g, 2));
    r.prop_verdicts[1] = verdict_code(check_p1(part, params));
    r.prop_verdicts[2] = verdict_code(check_p2(g, part));
    SampleMode p3_mode{false, cfg.property_samples, derive_stream_seed(r.seed, 2)};
    r.prop_verdicts[3] = verdict_code(check_p3(g, part, params, kB1, p3_mode));
    r.prop_verdicts[4] = verdict_code(check_p4(g, params));
    r.prop_verdicts[5] = verdict_code(check_p5(g, params));
    SampleMode vr_mode{false, cfg.property_samples, derive_stream_seed(r.seed, 3)};
    r.prop_verdicts[6] = verdict_code(check_vr(*b, params, vr_mode));
  }

  return r;
}

struct SweepPoint {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double p = 0.0;
};

std::vector<SweepPoint> plan_sweep(const ExperimentConfig& cfg) {
  std::vector<SweepPoint> sweep;
  for (std::uint32_t n : cfg.ns) {
    SweepPoint pt;
    pt.n = n;
    pt.m = resolve_m_rule(cfg.m_rule, n);
    pt.p = cfg.p_override ? *cfg.p_override
                          : solve_p(n, pt.m, cfg.c, cfg.eps_regime).p;
    sweep.push_back(pt);
  }
  return sweep;
}

}  // namespace

std::string records_csv(const std::vector<TrialReport>& records) {
  if (records.empty()) throw ParameterError("records_csv: no records");
  std::string out =
      "trial,seed,n,m,p,min_degree,degree1_count,ham_result,fail_stage,rotations,"
      "paths_explored,end_size,end_min_x_size,deletable\n";
  char buf[160];
  for (const TrialReport& r : records) {
    std::snprintf(buf, sizeof(buf), "%u,%llu,%u,%u,%s,%u,%u,%s,", r.trial,
                  static_cast<unsigned long long>(r.seed), r.n, r.m,
                  fmt_double(r.p).c_str(), r.min_degree, r.degree1_count,
                  ham_name(r.ham));
    out += buf;
    if (r.ham == TrialHam::failure) out += std::to_string(r.fail_stage);
    out += ',';
    if (r.ham != TrialHam::na) out += std::to_string(r.counters.rotations_total);
    out += ',';
    if (r.ham != TrialHam::na) out += std::to_string(r.counters.paths_explored);
    out += ',';
    if (r.end_size) out += std::to_string(*r.end_size);
    out += ',';
    if (r.end_min_x_size) out += std::to_string(*r.end_min_x_size);
    out += ',';
    if (r.deletable) out += *r.deletable ? "1" : "0";
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json summarize(const std::vector<TrialReport>& records,
                                 const ExperimentConfig& config) {
  if (records.empty()) throw ParameterError("summarize: no records");

  nlohmann::ordered_json j;
  j["version"] = kVersion;

  nlohmann::ordered_json cfg;
  cfg["kind"] = kind_name(config.kind);
  cfg["ns"] = config.ns;
  cfg["m_rule"] = config.m_rule;
  cfg["c"] = config.c;
  if (config.p_override) {
    cfg["p_override"] = *config.p_override;
  } else {
    cfg["p_override"] = nullptr;
  }
  cfg["trials"] = config.trials;
  cfg["master_seed"] = config.master_seed;
  cfg["lambda"] = config.lambda;
  cfg["eps_regime"] = config.eps_regime;
  cfg["dedup"] = config.dedup;
  cfg["max_queue"] = config.max_queue;
  cfg["property_samples"] = config.property_samples;
  cfg["threads"] = config.threads;
  j["config"] = cfg;

  if (config.kind == ExperimentKind::end_sets) {
    j["note"] =
        "failure induction: run with c at or below 0 so that unsuccessful "
        "terminations occur with observable frequency";
  }

  // group records per sweep point (n, m, p)
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<const TrialReport*>> groups;
  for (const TrialReport& r : records) groups[{r.n, r.m}].push_back(&r);

  std::uint64_t rot_total = 0, paths_total = 0;
  for (const TrialReport& r : records) {
    rot_total += r.counters.rotations_total;
    paths_total += r.counters.paths_explored;
  }
  nlohmann::ordered_json totals;
  totals["trials"] = records.size();
  totals["rotations_total"] = rot_total;
  totals["paths_explored"] = paths_total;
  j["totals"] = totals;

  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  std::vector<std::pair<double, double>> rotation_points;
  for (const auto& [nm, rs] : groups) {
    const auto [n, m] = nm;
    nlohmann::ordered_json gj;
    gj["n"] = n;
    gj["m"] = m;
    gj["p"] = rs.front()->p;
    gj["trials"] = rs.size();

    std::uint64_t ge2 = 0;
    double deg1_sum = 0.0;
    for (const auto* r : rs) {
      if (r->min_degree >= 2) ++ge2;
      deg1_sum += r->degree1_count;
    }
    const double nt = static_cast<double>(rs.size());
    const double deg1_mean = deg1_sum / nt;
    double deg1_var = 0.0;
    for (const auto* r : rs) {
      const double dd = r->degree1_count - deg1_mean;
      deg1_var += dd * dd;
    }
    deg1_var = rs.size() > 1 ? deg1_var / (nt - 1.0) : 0.0;

    const WilsonInterval ci = wilson_interval(ge2, rs.size());
    nlohmann::ordered_json md;
    md["count_ge2"] = ge2;
    md["fraction_ge2"] = static_cast<double>(ge2) / nt;
    md["wilson95_lo"] = ci.lo;
    md["wilson95_hi"] = ci.hi;
    gj["min_degree"] = md;

    nlohmann::ordered_json d1;
    d1["mean"] = deg1_mean;
    d1["variance"] = deg1_var;
    d1["var_mean_ratio"] = deg1_mean > 0.0 ? deg1_var / deg1_mean : 0.0;
    if (config.kind == ExperimentKind::degree1_poisson) {
      std::map<std::uint32_t, std::uint64_t> hist;
      for (const auto* r : rs) ++hist[r->degree1_count];
      nlohmann::ordered_json hj = nlohmann::ordered_json::array();
      for (const auto& [value, count] : hist) hj.push_back({value, count});
      d1["histogram"] = hj;
    }
    gj["degree1"] = d1;

    if (needs_ham(config.kind)) {
      std::uint64_t success = 0, failure = 0, overflow = 0, joint = 0;
      double rot_sum = 0.0, paths_sum = 0.0;
      for (const auto* r : rs) {
        switch (r->ham) {
          case TrialHam::success:
            ++success;
            break;
          case TrialHam::failure:
            ++failure;
            break;
          case TrialHam::overflow:
            ++overflow;
            break;
          case TrialHam::na:
            break;
        }
        // overflow counts as a failure for the joint event
        if (r->min_degree >= 2 && r->ham != TrialHam::success) ++joint;
        rot_sum += static_cast<double>(r->counters.rotations_total);
        paths_sum += static_cast<double>(r->counters.paths_explored);
      }
      nlohmann::ordered_json hj;
      hj["success"] = success;
      hj["failure"] = failure;
      hj["overflow"] = overflow;
      hj["success_rate_given_ge2"] =
          ge2 > 0 ? static_cast<double>(ge2 - joint) / static_cast<double>(ge2) : 0.0;
      hj["joint_failure_rate"] = static_cast<double>(joint) / nt;
      hj["mean_rotations"] = rot_sum / nt;
      hj["mean_paths_explored"] = paths_sum / nt;
      gj["ham"] = hj;
      rotation_points.emplace_back(static_cast<double>(n), rot_sum / nt);
    }

    if (config.kind == ExperimentKind::end_sets) {
      std::uint64_t failures = 0, computed = 0, capped = 0, big = 0;
      double end_sum = 0.0, minx_sum = 0.0;
      for (const auto* r : rs) {
        if (r->ham != TrialHam::failure) continue;
        ++failures;
        if (r->end_capped) {
          ++capped;
          continue;
        }
        if (r->end_size) {
          ++computed;
          end_sum += *r->end_size;
          minx_sum += r->end_min_x_size ? *r->end_min_x_size : 0;
          if (static_cast<double>(*r->end_size) >= static_cast<double>(n) / 5000.0) ++big;
        }
      }
      nlohmann::ordered_json ej;
      ej["failures"] = failures;
      ej["end_computed"] = computed;
      ej["end_capped"] = capped;
      ej["mean_end_over_n"] = computed > 0 ? end_sum / static_cast<double>(computed) / n : 0.0;
      ej["mean_min_x_over_n"] =
          computed > 0 ? minx_sum / static_cast<double>(computed) / n : 0.0;
      ej["frac_end_ge_n_over_5000"] =
          computed > 0 ? static_cast<double>(big) / static_cast<double>(computed) : 0.0;
      gj["end_sets"] = ej;
    }

    if (config.kind == ExperimentKind::deletable_rate) {
      std::uint64_t evaluated = 0, deletable = 0;
      for (const auto* r : rs) {
        if (!r->deletable.has_value()) continue;
        ++evaluated;
        if (*r->deletable) ++deletable;
      }
      const ModelParams params = derived_params(n, m, rs.front()->p);
      const int t = compute_budget(n, params.d);
      nlohmann::ordered_json dj;
      dj["evaluated_failures"] = evaluated;
      dj["deletable"] = deletable;
      dj["deletable_fraction"] =
          evaluated > 0 ? static_cast<double>(deletable) / static_cast<double>(evaluated) : 0.0;
      dj["b2"] = 0.5 * kB1;
      dj["lower_bound_reference"] = std::exp(-2.0 * config.lambda * (2.0 * t + 2.0));
      gj["deletable_rate"] = dj;
    }

    if (config.kind == ExperimentKind::property_prevalence) {
      static const char* names[7] = {"P0", "P1", "P2", "P3", "P4", "P5", "VR"};
      nlohmann::ordered_json pj;
      for (int i = 0; i < 7; ++i) {
        std::uint64_t verified_n = 0, nvf = 0, violated_n = 0;
        for (const auto* r : rs) {
          switch (r->prop_verdicts[i]) {
            case 1:
              ++verified_n;
              break;
            case 2:
              ++nvf;
              break;
            case 0:
              ++violated_n;
              break;
            default:
              break;
          }
        }
        nlohmann::ordered_json one;
        one["verified"] = verified_n;
        one["no_violation_found"] = nvf;
        one["violated"] = violated_n;
        one["holds_fraction"] =
            static_cast<double>(verified_n + nvf) / nt;
        pj[names[i]] = one;
      }
      gj["properties"] = pj;
    }

    sweep.push_back(gj);
  }
  j["sweep"] = sweep;

  if (config.kind == ExperimentKind::complexity) {
    const auto slope = loglog_slope(rotation_points);
    if (slope) {
      j["rotations_loglog_slope"] = *slope;
    } else {
      j["rotations_loglog_slope"] = nullptr;
    }
  }
  return j;
}

ExperimentResult run_trials(const ExperimentConfig& config) {
  if (config.trials < 1) throw ParameterError("run_trials: trials must be at least 1");
  if (config.ns.empty()) throw ParameterError("run_trials: no n values");

  const std::vector<SweepPoint> sweep = plan_sweep(config);
  const std::size_t total = sweep.size() * config.trials;

  ExperimentResult result;
  result.records.resize(total);

  const int workers = worker_count(config.threads);
  std::exception_ptr first_error = nullptr;

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
    try {
      const SweepPoint& pt = sweep[static_cast<std::size_t>(i) / config.trials];
      result.records[i] =
          run_one(config, pt.n, pt.m, pt.p, static_cast<std::uint32_t>(i));
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  result.csv = records_csv(result.records);
  result.summary = summarize(result.records, config);
  return result;
}

void write_experiment(const ExperimentResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream csv(std::filesystem::path(out_dir) / "records.csv", std::ios::binary);
    if (!csv) throw ParameterError("write_experiment: cannot open records.csv");
    csv << result.csv;
  }
  {
    std::ofstream js(std::filesystem::path(out_dir) / "summary.json", std::ios::binary);
    if (!js) throw ParameterError("write_experiment: cannot open summary.json");
    js << result.summary.dump(2) << '\n';
  }
}

}  // namespace rig
