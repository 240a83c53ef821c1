#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rig/graph.hpp"
#include "rig/ham.hpp"
#include "rig/params.hpp"

namespace rig {

inline constexpr double kB1 = 0.001;
inline constexpr std::uint64_t kExhaustiveCap = 1u << 20;

// Chernoff lower-tail exponent eps*ln(eps) + 1 - eps, for eps in (0, 1].
double psi(double eps);

enum class PartitionVariant { plain, starred };

// SMALL/LARGE split by W'(v): plain threshold 0.1*d0, starred 6e-3*mp.
struct Partition {
  std::vector<std::uint32_t> small;  // sorted
  std::vector<std::uint32_t> large;  // sorted
  std::vector<bool> is_small;        // indexed by vertex
  PartitionVariant variant = PartitionVariant::plain;
  double threshold = 0.0;
};

Partition make_partition(const IntersectionGraph& g, const ModelParams& params,
                         PartitionVariant variant);

enum class Verdict { verified, no_violation_found, violated };

struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::verified;
  std::uint64_t samples = 0;  // only meaningful for sampled checks
  std::string witness_kind;   // "vertex" | "pair" | "vertex_set" | "feature" | "feature_set" | "clause"
  std::vector<std::uint64_t> witness;
  std::map<std::string, double> constants;
  nlohmann::ordered_json to_json() const;
};

struct SampleMode {
  bool exhaustive = true;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
};

// P0 (k = 2) / P0* (k = ceil(np/2)): minimum degree at least k.
PropertyReport check_p0(const IntersectionGraph& g, std::uint32_t k);

// P1: |SMALL| <= n^(1/3), and SMALL empty once d0 >= 2 ln n.
// P1*: |SMALL*| <= n^eps, and SMALL* empty once mp >= 2 ln n.
PropertyReport check_p1(const Partition& part, const ModelParams& params);

// P2 (plain only): no two SMALL vertices within graph distance 4.
PropertyReport check_p2(const IntersectionGraph& g, const Partition& part);

// P3 / P3*: every S within LARGE with |S| <= n/d1 has N(S) >= b1*d1*|S|.
// Exhaustive mode enumerates candidate subsets (capacity-capped); sampled
// mode draws uniform sizes then uniform subsets and is one-sided.
PropertyReport check_p3(const IntersectionGraph& g, const Partition& part,
                        const ModelParams& params, double b1, const SampleMode& mode);

// P4: W(v) <= 4mp, W'(v) <= 4*d0, N(v) <= 12*d1 for every vertex.
PropertyReport check_p4(const IntersectionGraph& g, const ModelParams& params);

// P5: V(w) <= (ln n / ln ln n) * max(np, 4) for every feature.  Needs n >= 3.
PropertyReport check_p5(const IntersectionGraph& g, const ModelParams& params);

// VR: every feature set R with |R| <= 1/p has V(R) >= np|R|/2 + 1.
PropertyReport check_vr(const BipartiteIncidence& b, const ModelParams& params,
                        const SampleMode& mode);

// Deletable-set predicate over an edge set X of the graph on which the
// search failed.  Plain clauses:
//   D1: no edge of X touches SMALL;
//   D2: at most b2*d edges of X at any LARGE vertex;
//   D3: X disjoint from h_set.
// Starred: D1* allows up to b2*d0 edges at SMALL* vertices, D2* up to b2*d1
// at LARGE* vertices, D3 unchanged.
struct DeletableVerdict {
  bool deletable = true;
  std::string failing_clause;            // "D1" | "D2" | "D3" | "D1*" | "D2*"
  std::vector<std::uint64_t> witness;    // clause-dependent indices
};

DeletableVerdict is_deletable(const IntersectionGraph& g, const Partition& part,
                              const HamTrace& trace, const std::vector<Edge>& x,
                              double b2, double d, const ModelParams& params,
                              PartitionVariant variant);

}  // namespace rig
