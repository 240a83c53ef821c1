#include "rig/properties.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "rig/errors.hpp"
#include "rig/rng.hpp"

namespace rig {

double psi(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("psi: eps must be in (0, 1]");
  return eps * std::log(eps) + 1.0 - eps;
}

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::no_violation_found:
      return "no_violation_found";
    case Verdict::violated:
      return "violated";
  }
  return "?";
}

const BipartiteIncidence& require_source(const IntersectionGraph& g, const char* who) {
  const BipartiteIncidence* b = g.source();
  if (b == nullptr) throw ParameterError(std::string(who) + ": graph has no bipartite source");
  return *b;
}

PropertyReport verified(std::string property, std::map<std::string, double> constants = {}) {
  PropertyReport r;
  r.property = std::move(property);
  r.verdict = Verdict::verified;
  r.constants = std::move(constants);
  return r;
}

// Size of the union of neighbourhoods of S minus S itself.
std::uint32_t neighbourhood_size(const IntersectionGraph& g,
                                 const std::vector<std::uint32_t>& s,
                                 std::vector<std::uint32_t>& mark, std::uint32_t stamp) {
  for (std::uint32_t v : s) mark[v] = stamp;
  std::uint32_t count = 0;
  for (std::uint32_t v : s)
    for (std::uint32_t u : g.neighbours(v))
      if (mark[u] != stamp) {
        mark[u] = stamp;
        ++count;
      }
  return count;
}

}  // namespace

nlohmann::ordered_json PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["property"] = property;
  j["verdict"] = verdict_name(verdict);
  j["samples"] = samples;
  j["witness_kind"] = witness_kind;
  j["witness"] = witness;
  nlohmann::ordered_json cs;
  for (const auto& [k, v] : constants) cs[k] = v;
  j["constants"] = cs;
  return j;
}

Partition make_partition(const IntersectionGraph& g, const ModelParams& params,
                         PartitionVariant variant) {
  const BipartiteIncidence& b = require_source(g, "make_partition");
  Partition out;
  out.variant = variant;
  out.threshold = variant == PartitionVariant::plain ? 0.1 * params.d0
                                                     : 6e-3 * params.m * params.p;
  out.is_small.assign(g.size(), false);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const double wprime = shared_feature_count(b, v);
    if (wprime <= out.threshold) {
      out.is_small[v] = true;
      out.small.push_back(v);
    } else {
      out.large.push_back(v);
    }
  }
  return out;
}

PropertyReport check_p0(const IntersectionGraph& g, std::uint32_t k) {
  PropertyReport r = verified("P0", {{"k", static_cast<double>(k)}});
  std::uint32_t worst = UINT32_MAX, worst_v = 0;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (g.degree(v) < worst) {
      worst = g.degree(v);
      worst_v = v;
    }
  }
  if (g.size() > 0 && worst < k) {
    r.verdict = Verdict::violated;
    r.witness_kind = "vertex";
    r.witness = {worst_v, worst};
  }
  return r;
}

PropertyReport check_p1(const Partition& part, const ModelParams& params) {
  const bool plain = part.variant == PartitionVariant::plain;
  const double size_bound = plain ? std::cbrt(static_cast<double>(params.n))
                                  : std::pow(static_cast<double>(params.n), ModelParams::kEps);
  const double gate = plain ? params.d0 : params.m * params.p;
  const double two_ln_n = 2.0 * std::log(static_cast<double>(params.n));

  PropertyReport r = verified(plain ? "P1" : "P1*",
                              {{"size_bound", size_bound},
                               {"gate", gate},
                               {"two_ln_n", two_ln_n}});
  const auto small_size = static_cast<double>(part.small.size());
  if (small_size > size_bound) {
    r.verdict = Verdict::violated;
    r.witness_kind = "clause";
    r.witness = {1, part.small.size()};
    return r;
  }
  if (gate >= two_ln_n && !part.small.empty()) {
    r.verdict = Verdict::violated;
    r.witness_kind = "clause";
    r.witness = {2, part.small.size()};
  }
  return r;
}

PropertyReport check_p2(const IntersectionGraph& g, const Partition& part) {
  if (part.variant != PartitionVariant::plain)
    throw ParameterError("check_p2: P2 has no starred variant");
  PropertyReport r = verified("P2");
  if (part.small.empty()) return r;

  std::vector<std::int32_t> dist(g.size());
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s : part.small) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.clear();
    queue.push_back(s);
    while (!queue.empty()) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      if (dist[v] == 4) continue;
      for (std::uint32_t u : g.neighbours(v)) {
        if (dist[u] >= 0) continue;
        dist[u] = dist[v] + 1;
        if (part.is_small[u]) {
          r.verdict = Verdict::violated;
          r.witness_kind = "pair";
          r.witness = {s, u, static_cast<std::uint64_t>(dist[u])};
          return r;
        }
        queue.push_back(u);
      }
    }
  }
  return r;
}

PropertyReport check_p3(const IntersectionGraph& g, const Partition& part,
                        const ModelParams& params, double b1, const SampleMode& mode) {
  if (!(b1 > 0.0)) throw ParameterError("check_p3: b1 must be positive");
  const bool plain = part.variant == PartitionVariant::plain;
  PropertyReport r = verified(plain ? "P3" : "P3*",
                              {{"b1", b1}, {"d1", params.d1}});

  const double size_limit = static_cast<double>(params.n) / params.d1;
  const auto s_max = static_cast<std::uint64_t>(
      std::min(std::floor(size_limit), static_cast<double>(part.large.size())));
  r.constants["s_max"] = static_cast<double>(s_max);
  if (s_max < 1 || part.large.empty()) return r;  // vacuous

  std::vector<std::uint32_t> mark(g.size(), 0);
  std::uint32_t stamp = 0;
  const auto violates = [&](const std::vector<std::uint32_t>& s) {
    const double need = b1 * params.d1 * static_cast<double>(s.size());
    return static_cast<double>(neighbourhood_size(g, s, mark, ++stamp)) < need;
  };

  if (mode.exhaustive) {
    // count candidate subsets before enumerating
    double total = 0.0;
    for (std::uint64_t s = 1; s <= s_max; ++s) {
      double binom = 1.0;
      for (std::uint64_t i = 0; i < s; ++i)
        binom *= static_cast<double>(part.large.size() - i) / static_cast<double>(i + 1);
      total += binom;
      if (total > static_cast<double>(kExhaustiveCap))
        throw CapacityError("check_p3: too many candidate subsets, use sampled mode");
    }
    std::vector<std::uint32_t> subset;
    std::vector<std::uint32_t> idx;
    for (std::uint64_t s = 1; s <= s_max; ++s) {
      idx.resize(s);
      for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
      while (true) {
        subset.clear();
        for (std::uint32_t i : idx) subset.push_back(part.large[i]);
        if (violates(subset)) {
          r.verdict = Verdict::violated;
          r.witness_kind = "vertex_set";
          r.witness.assign(subset.begin(), subset.end());
          return r;
        }
        // next combination
        std::int64_t pos = static_cast<std::int64_t>(s) - 1;
        while (pos >= 0 && idx[pos] == part.large.size() - s + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::int64_t i = pos + 1; i < static_cast<std::int64_t>(s); ++i)
          idx[i] = idx[i - 1] + 1;
      }
    }
    return r;
  }

  Rng rng(mode.seed);
  std::vector<std::uint32_t> candidates(part.large);
  std::vector<std::uint32_t> subset;
  for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
    const std::uint64_t s = 1 + rng.below(s_max);
    // partial Fisher-Yates for a uniform s-subset
    for (std::uint64_t i = 0; i < s; ++i) {
      const std::uint64_t j = i + rng.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
    }
    subset.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(s));
    if (violates(subset)) {
      r.verdict = Verdict::violated;
      r.witness_kind = "vertex_set";
      r.witness.assign(subset.begin(), subset.end());
      r.samples = trial + 1;
      return r;
    }
  }
  r.verdict = Verdict::no_violation_found;
  r.samples = mode.trials;
  return r;
}

PropertyReport check_p4(const IntersectionGraph& g, const ModelParams& params) {
  const BipartiteIncidence& b = require_source(g, "check_p4");
  const double w_bound = 4.0 * params.m * params.p;
  const double wp_bound = 4.0 * params.d0;
  const double n_bound = 12.0 * params.d1;
  PropertyReport r = verified("P4", {{"w_bound", w_bound},
                                     {"wprime_bound", wp_bound},
                                     {"degree_bound", n_bound}});
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const double w = static_cast<double>(b.chose[v].size());
    const double wp = static_cast<double>(shared_feature_count(b, v));
    const double deg = static_cast<double>(g.degree(v));
    if (w > w_bound || wp > wp_bound || deg > n_bound) {
      r.verdict = Verdict::violated;
      r.witness_kind = "clause";
      const std::uint64_t which = w > w_bound ? 0 : (wp > wp_bound ? 1 : 2);
      const double value = which == 0 ? w : (which == 1 ? wp : deg);
      r.witness = {v, which, static_cast<std::uint64_t>(value)};
      return r;
    }
  }
  return r;
}

PropertyReport check_p5(const IntersectionGraph& g, const ModelParams& params) {
  const BipartiteIncidence& b = require_source(g, "check_p5");
  if (params.n < 3) throw ParameterError("check_p5: needs n >= 3 for a positive prefactor");
  const double ln_n = std::log(static_cast<double>(params.n));
  const double bound = ln_n / std::log(ln_n) *
                       std::max(static_cast<double>(params.n) * params.p, 4.0);
  PropertyReport r = verified("P5", {{"bound", bound}});
  for (std::uint32_t w = 0; w < b.m; ++w) {
    if (static_cast<double>(b.chosen_by[w].size()) > bound) {
      r.verdict = Verdict::violated;
      r.witness_kind = "feature";
      r.witness = {w, b.chosen_by[w].size()};
      return r;
    }
  }
  return r;
}

PropertyReport check_vr(const BipartiteIncidence& b, const ModelParams& params,
                        const SampleMode& mode) {
  if (!(params.p > 0.0)) throw ParameterError("check_vr: p must be positive");
  const double np_half = static_cast<double>(params.n) * params.p / 2.0;
  const auto r_max = static_cast<std::uint64_t>(
      std::min(static_cast<double>(b.m), std::floor(1.0 / params.p)));
  PropertyReport rep = verified("VR", {{"r_max", static_cast<double>(r_max)},
                                       {"np_over_2", np_half}});
  if (r_max < 1) return rep;

  std::vector<bool> hit(b.n, false);
  const auto vertices_of = [&](const std::vector<std::uint32_t>& fs) {
    std::fill(hit.begin(), hit.end(), false);
    std::uint64_t count = 0;
    for (std::uint32_t w : fs)
      for (std::uint32_t v : b.chosen_by[w])
        if (!hit[v]) {
          hit[v] = true;
          ++count;
        }
    return count;
  };
  const auto violates = [&](const std::vector<std::uint32_t>& fs) {
    return static_cast<double>(vertices_of(fs)) <
           np_half * static_cast<double>(fs.size()) + 1.0;
  };

  if (mode.exhaustive) {
    double total = 0.0;
    for (std::uint64_t s = 1; s <= r_max; ++s) {
      double binom = 1.0;
      for (std::uint64_t i = 0; i < s; ++i)
        binom *= static_cast<double>(b.m - i) / static_cast<double>(i + 1);
      total += binom;
      if (total > static_cast<double>(kExhaustiveCap))
        throw CapacityError("check_vr: too many feature sets, use sampled mode");
    }
    std::vector<std::uint32_t> fs;
    std::vector<std::uint32_t> idx;
    for (std::uint64_t s = 1; s <= r_max; ++s) {
      idx.resize(s);
      for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
      while (true) {
        fs.assign(idx.begin(), idx.end());
        if (violates(fs)) {
          rep.verdict = Verdict::violated;
          rep.witness_kind = "feature_set";
          rep.witness.assign(fs.begin(), fs.end());
          return rep;
        }
        std::int64_t pos = static_cast<std::int64_t>(s) - 1;
        while (pos >= 0 && idx[pos] == b.m - s + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::int64_t i = pos + 1; i < static_cast<std::int64_t>(s); ++i)
          idx[i] = idx[i - 1] + 1;
      }
    }
    return rep;
  }

  Rng rng(mode.seed);
  std::vector<std::uint32_t> features(b.m);
  for (std::uint32_t w = 0; w < b.m; ++w) features[w] = w;
  std::vector<std::uint32_t> fs;
  for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
    const std::uint64_t s = 1 + rng.below(r_max);
    for (std::uint64_t i = 0; i < s; ++i) {
      const std::uint64_t j = i + rng.below(features.size() - i);
      std::swap(features[i], features[j]);
    }
    fs.assign(features.begin(), features.begin() + static_cast<std::ptrdiff_t>(s));
    std::sort(fs.begin(), fs.end());
    if (violates(fs)) {
      rep.verdict = Verdict::violated;
      rep.witness_kind = "feature_set";
      rep.witness.assign(fs.begin(), fs.end());
      rep.samples = trial + 1;
      return rep;
    }
  }
  rep.verdict = Verdict::no_violation_found;
  rep.samples = mode.trials;
  return rep;
}

DeletableVerdict is_deletable(const IntersectionGraph& g, const Partition& part,
                              const HamTrace& trace, const std::vector<Edge>& x,
                              double b2, double d, const ModelParams& params,
                              PartitionVariant variant) {
  for (const auto& [u, v] : x)
    if (!g.has_edge(u, v)) throw ParameterError("is_deletable: X is not a subset of E(G)");
  if (part.variant != variant)
    throw ParameterError("is_deletable: partition variant mismatch");

  DeletableVerdict out;
  std::vector<std::uint32_t> incident(g.size(), 0);
  for (const auto& [u, v] : x) {
    ++incident[u];
    ++incident[v];
  }

  if (variant == PartitionVariant::plain) {
    // D1: no edge of X touches SMALL
    for (const auto& [u, v] : x) {
      if (part.is_small[u] || part.is_small[v]) {
        out.deletable = false;
        out.failing_clause = "D1";
        out.witness = {u, v};
        return out;
      }
    }
    // D2: at most b2*d edges of X at any LARGE vertex
    for (std::uint32_t v : part.large) {
      if (static_cast<double>(incident[v]) > b2 * d) {
        out.deletable = false;
        out.failing_clause = "D2";
        out.witness = {v, incident[v]};
        return out;
      }
    }
  } else {
    // D1*: at most b2*d0 edges of X at any SMALL* vertex
    for (std::uint32_t v : part.small) {
      if (static_cast<double>(incident[v]) > b2 * params.d0) {
        out.deletable = false;
        out.failing_clause = "D1*";
        out.witness = {v, incident[v]};
        return out;
      }
    }
    // D2*: at most b2*d1 edges of X at any LARGE* vertex
    for (std::uint32_t v : part.large) {
      if (static_cast<double>(incident[v]) > b2 * params.d1) {
        out.deletable = false;
        out.failing_clause = "D2*";
        out.witness = {v, incident[v]};
        return out;
      }
    }
  }

  // D3: X disjoint from H(G)
  for (const auto& e : x) {
    if (std::binary_search(trace.h_set.begin(), trace.h_set.end(), e)) {
      out.deletable = false;
      out.failing_clause = "D3";
      out.witness = {e.first, e.second};
      return out;
    }
  }
  return out;
}

}  // namespace rig
