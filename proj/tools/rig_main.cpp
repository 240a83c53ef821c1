// Command line front end: generate instances, run the cycle search, check
// structural properties, solve the threshold equation, and drive experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rig/errors.hpp"
#include "rig/experiments.hpp"
#include "rig/graph.hpp"
#include "rig/ham.hpp"
#include "rig/params.hpp"
#include "rig/properties.hpp"
#include "rig/rng.hpp"
#include "rig/thresholds.hpp"
#include "rig/version.hpp"

namespace {

rig::BipartiteIncidence load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rig::ParameterError("cannot open " + path);
  return rig::read_graph_file(in);
}

int cmd_gen(std::uint32_t n, std::uint32_t m, double p, std::uint64_t seed,
            const std::string& out, const std::string& edges_out) {
  const rig::BipartiteIncidence b = rig::sample_bipartite(n, m, p, seed);
  if (out.empty()) {
    rig::write_graph_file(b, std::cout);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw rig::ParameterError("cannot open " + out);
    rig::write_graph_file(b, f);
  }
  if (!edges_out.empty()) {
    const rig::IntersectionGraph g = rig::intersection_of(b);
    std::ofstream f(edges_out, std::ios::binary);
    if (!f) throw rig::ParameterError("cannot open " + edges_out);
    rig::write_edge_list(g, f);
  }
  return 0;
}

int cmd_ham(const std::string& in, double d_flag, const std::string& mode,
            std::uint64_t max_queue) {
  auto b = std::make_shared<const rig::BipartiteIncidence>(load_graph_file(in));
  const rig::IntersectionGraph g = rig::intersection_of(b);

  double d = d_flag;
  if (!(d > 0.0)) {
    if (!(b->p > 0.0 && b->p < 1.0))
      throw rig::ParameterError("file has p outside (0,1); pass --d explicitly");
    d = rig::derived_params(b->n, b->m, b->p).d;
  }

  rig::HamOptions opt;
  opt.dedup = mode == "dedup";
  opt.max_queue = max_queue;
  const rig::HamOutcome out = rig::run_ham(g, d, opt);

  nlohmann::ordered_json j;
  switch (out.result) {
    case rig::HamResult::cycle:
      j["result"] = "cycle";
      break;
    case rig::HamResult::failure:
      j["result"] = "failure";
      break;
    case rig::HamResult::overflow:
      j["result"] = "overflow";
      break;
  }
  j["n"] = g.size();
  j["d"] = out.d;
  j["t"] = out.budget_t;
  j["mode"] = out.dedup ? "dedup" : "faithful";
  j["stage"] = out.result == rig::HamResult::cycle ? g.size() : out.trace.stage;
  if (out.result == rig::HamResult::failure) {
    j["h_size"] = out.trace.h_set.size();
    try {
      const rig::EndSets es = rig::end_sets(g, out.trace, out.budget_t, max_queue);
      j["end_size"] = es.end_g.size();
      std::uint64_t least = 0;
      if (!es.end_g.empty()) {
        least = UINT64_MAX;
        for (const auto& [x, vs] : es.end_gx)
          least = std::min<std::uint64_t>(least, vs.size());
      }
      j["end_min_x_size"] = least;
    } catch (const rig::CapacityError&) {
      j["end_size"] = nullptr;
      j["end_min_x_size"] = nullptr;
      j["end_capped"] = true;
    }
  }
  nlohmann::ordered_json counters;
  counters["rotations_total"] = out.counters.rotations_total;
  counters["extensions_simple"] = out.counters.extensions_simple;
  counters["extensions_cycle"] = out.counters.extensions_cycle;
  counters["paths_explored"] = out.counters.paths_explored;
  counters["stages_completed"] = out.counters.stages_completed;
  j["counters"] = counters;
  if (out.result == rig::HamResult::cycle) j["cycle"] = out.cycle;
  std::cout << j.dump(2) << '\n';

  switch (out.result) {
    case rig::HamResult::cycle:
      return 0;
    case rig::HamResult::failure:
      return 2;
    case rig::HamResult::overflow:
      return 3;
  }
  return 1;
}

int cmd_props(const std::string& in, const std::string& variant_name,
              const std::string& checks_csv, std::uint64_t samples, std::uint64_t seed) {
  auto b = std::make_shared<const rig::BipartiteIncidence>(load_graph_file(in));
  const rig::IntersectionGraph g = rig::intersection_of(b);
  if (!(b->p > 0.0 && b->p < 1.0))
    throw rig::ParameterError("props needs a file with p in (0,1)");
  const rig::ModelParams params = rig::derived_params(b->n, b->m, b->p);

  const bool starred = variant_name == "starred";
  const rig::PartitionVariant variant =
      starred ? rig::PartitionVariant::starred : rig::PartitionVariant::plain;
  const rig::Partition part = rig::make_partition(g, params, variant);

  std::vector<std::string> checks;
  {
    std::stringstream ss(checks_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) checks.push_back(item);
    }
  }
  if (checks.empty()) {
    checks = starred ? std::vector<std::string>{"p0", "p1", "p3", "p4", "p5", "vr"}
                     : std::vector<std::string>{"p0", "p1", "p2", "p3", "p4", "p5", "vr"};
  }

  std::uint64_t salt = 0;
  for (const std::string& check : checks) {
    rig::PropertyReport report;
    const rig::SampleMode mode{false, samples, rig::derive_stream_seed(seed, salt++)};
    if (check == "p0") {
      const std::uint32_t k =
          starred ? static_cast<std::uint32_t>(std::ceil(params.n * params.p / 2.0)) : 2u;
      report = rig::check_p0(g, k);
      if (starred) report.property = "P0*";
    } else if (check == "p1") {
      report = rig::check_p1(part, params);
    } else if (check == "p2") {
      if (starred) throw rig::ParameterError("P2 has no starred variant");
      report = rig::check_p2(g, part);
    } else if (check == "p3") {
      report = rig::check_p3(g, part, params, rig::kB1, mode);
    } else if (check == "p4") {
      report = rig::check_p4(g, params);
    } else if (check == "p5") {
      report = rig::check_p5(g, params);
    } else if (check == "vr") {
      report = rig::check_vr(*b, params, mode);
    } else {
      throw rig::ParameterError("unknown check: " + check);
    }
    std::cout << report.to_json().dump() << '\n';
  }
  return 0;
}

int cmd_solve_p(std::uint32_t n, std::uint32_t m, double c, double eps) {
  const rig::ThresholdSpec spec = rig::solve_p(n, m, c, eps);
  std::cout << spec.to_json().dump(2) << '\n';
  return 0;
}

int cmd_exp(const std::string& kind, const std::string& ns_csv, const std::string& m_rule,
            double c, std::uint32_t trials, std::uint64_t seed, const std::string& out_dir,
            double lambda, double p_override, const std::string& mode,
            std::uint64_t max_queue) {
  rig::ExperimentConfig cfg;
  cfg.kind = rig::kind_from_name(kind);
  {
    std::stringstream ss(ns_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.ns.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
  }
  cfg.m_rule = m_rule;
  cfg.c = c;
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.lambda = lambda;
  if (p_override > 0.0) cfg.p_override = p_override;
  cfg.dedup = mode != "faithful";
  cfg.max_queue = max_queue;

  const rig::ExperimentResult result = rig::run_trials(cfg);
  rig::write_experiment(result, out_dir);
  std::cout << result.summary.dump(2) << '\n';
  std::cerr << "wrote " << out_dir << "/records.csv (" << result.records.size()
            << " records) and " << out_dir << "/summary.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random intersection graphs, rotation-extension search, experiments"};
  app.set_version_flag("--version", rig::kVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "sample an instance and write the graph file");
  std::uint32_t gen_n = 0, gen_m = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out, gen_edges;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--m", gen_m, "feature count")->required();
  gen->add_option("--p", gen_p, "incidence probability")->required();
  gen->add_option("--seed", gen_seed, "rng seed")->required();
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_option("--edges-out", gen_edges, "also write the edge list here");

  // ham
  auto* ham = app.add_subcommand("ham", "run the rotation-extension search");
  std::string ham_in, ham_mode = "faithful";
  double ham_d = 0.0;
  std::uint64_t ham_queue = 10'000'000;
  ham->add_option("--in", ham_in, "graph file")->required();
  ham->add_option("--d", ham_d, "budget input d (default from file parameters)");
  ham->add_option("--mode", ham_mode, "faithful|dedup")
      ->check(CLI::IsMember({"faithful", "dedup"}));
  ham->add_option("--max-queue", ham_queue, "per-stage path cap");

  // props
  auto* props = app.add_subcommand("props", "run property checks, one JSON per line");
  std::string props_in, props_variant = "plain", props_checks;
  std::uint64_t props_samples = 10'000, props_seed = 1;
  props->add_option("--in", props_in, "graph file")->required();
  props->add_option("--variant", props_variant, "plain|starred")
      ->check(CLI::IsMember({"plain", "starred"}));
  props->add_option("--checks", props_checks, "comma list, e.g. p0,p2,vr (default all)");
  props->add_option("--samples", props_samples, "trials for sampled checks");
  props->add_option("--seed", props_seed, "seed for sampled checks");

  // solve-p
  auto* solve = app.add_subcommand("solve-p", "invert the degree threshold equation");
  std::uint32_t sp_n = 0, sp_m = 0;
  double sp_c = 0.0, sp_eps = 0.1;
  solve->add_option("--n", sp_n, "vertex count")->required();
  solve->add_option("--m", sp_m, "feature count")->required();
  solve->add_option("--c", sp_c, "threshold constant c")->required();
  solve->add_option("--eps", sp_eps, "regime split epsilon");

  // exp
  auto* exp = app.add_subcommand("exp", "run a seeded experiment");
  std::string exp_kind, exp_ns, exp_mrule = "n", exp_out, exp_mode = "dedup";
  double exp_c = 0.0, exp_lambda = 1.0, exp_p = 0.0;
  std::uint32_t exp_trials = 100;
  std::uint64_t exp_seed = 1, exp_queue = 2'000'000;
  exp->add_option("--kind", exp_kind,
                  "min_degree|joint_failure|degree1_poisson|complexity|"
                  "property_prevalence|end_sets|deletable_rate")
      ->required();
  exp->add_option("--n", exp_ns, "n or comma list for sweeps")->required();
  exp->add_option("--m-rule", exp_mrule, "m rule: n | nlnn | n^X | integer");
  exp->add_option("--c", exp_c, "threshold constant c");
  exp->add_option("--trials", exp_trials, "trials per sweep point");
  exp->add_option("--seed", exp_seed, "master seed");
  exp->add_option("--out", exp_out, "output directory")->required();
  exp->add_option("--lambda", exp_lambda, "sparsification lambda (deletable_rate)");
  exp->add_option("--p", exp_p, "override p instead of solving for it");
  exp->add_option("--mode", exp_mode, "faithful|dedup")
      ->check(CLI::IsMember({"faithful", "dedup"}));
  exp->add_option("--max-queue", exp_queue, "per-stage path cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_n, gen_m, gen_p, gen_seed, gen_out, gen_edges);
    if (ham->parsed()) return cmd_ham(ham_in, ham_d, ham_mode, ham_queue);
    if (props->parsed())
      return cmd_props(props_in, props_variant, props_checks, props_samples, props_seed);
    if (solve->parsed()) return cmd_solve_p(sp_n, sp_m, sp_c, sp_eps);
    if (exp->parsed())
      return cmd_exp(exp_kind, exp_ns, exp_mrule, exp_c, exp_trials, exp_seed, exp_out,
                     exp_lambda, exp_p, exp_mode, exp_queue);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
