#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rig/graph.hpp"

namespace rig {

// Rotation budget: the search explores paths derived from a stage's initial
// path by at most 2T+1 rotations.  T = max(2, ceil(ln n / ln max(d, e))),
// which gives T = 2 for d = n and keeps the per-stage rotation tree
// polynomial in n.
int compute_budget(std::uint32_t n, double d);

// A path under construction.  seq holds distinct vertices, consecutive ones
// adjacent in the graph; rot_count is the number of rotations since the
// stage's initial path.
struct PathState {
  std::vector<std::uint32_t> seq;
  int rot_count = 0;
};

// ROTATE(P, e) for P = (u_1..u_k) and chord e = {u_k, u_i}, 2 <= i <= k-2:
// returns (u_1..u_i, u_k, u_{k-1}.., u_{i+1}) with rot_count incremented.
// Violations of the preconditions raise ParameterError.
PathState rotate(const IntersectionGraph& g, const PathState& p, Edge chord);

enum class HamResult { cycle, failure, overflow };

struct HamCounters {
  std::uint64_t rotations_total = 0;
  std::uint64_t extensions_simple = 0;
  std::uint64_t extensions_cycle = 0;
  std::uint64_t paths_explored = 0;
  std::uint64_t stages_completed = 0;
};

// Compact record of one explored path at the failing stage.
struct ExploredPath {
  std::uint32_t end_head = 0;
  std::uint32_t end_tail = 0;
  std::uint32_t rot = 0;
};

struct HamTrace {
  std::uint32_t stage = 0;                       // k of the failing stage
  std::vector<std::uint32_t> stage_initial_path; // P_k; front() is the anchor u0
  std::vector<Edge> h_set;                       // sorted; see below
  std::vector<ExploredPath> frontier;            // all paths explored at stage k
};

struct HamOptions {
  // faithful mode enqueues every rotation move; dedup suppresses paths whose
  // vertex sequence (up to reversal) was already seen in the stage.  Outcomes
  // agree, explored-path counts differ.
  bool dedup = false;
  std::uint64_t max_queue = 10'000'000;  // per-stage cap on retained paths
};

// h_set contains the edges used by the accepted chain of simple extensions,
// cycle extensions and rotations across the whole run, plus the endpoint
// pairs of paths on which a cycle extension was executed; its size is at most
// n(2T+2).
struct HamOutcome {
  HamResult result = HamResult::failure;
  std::vector<std::uint32_t> cycle;  // filled when result == cycle
  HamTrace trace;                    // filled on failure (partial on overflow)
  HamCounters counters;
  int budget_t = 0;
  double d = 0.0;
  bool dedup = false;
};

// Rotation-extension search for a Hamilton cycle.  Deterministic: ties are
// broken by lowest vertex index throughout.  Requires n >= 3 and d > 1.
HamOutcome run_ham(const IntersectionGraph& g, double d, const HamOptions& options = {});

// True iff cycle is a permutation of all vertices and every cyclically
// consecutive pair is an edge.  Malformed input yields false.
bool validate_cycle(const IntersectionGraph& g, const std::vector<std::uint32_t>& cycle);

// Endpoint sets of the failing stage.
//   end_g:  vertices other than the anchor u0 that are an endpoint of some
//           path derived from the stage path by 1..T rotations.
//   end_gx: for x in end_g, the opposite endpoints of paths with x as an
//           endpoint derived by 1..2T rotations.
struct EndSets {
  std::vector<std::uint32_t> end_g;
  std::map<std::uint32_t, std::vector<std::uint32_t>> end_gx;
};

// Recomputes the rotation closure of trace.stage_initial_path to depth 2T.
// States are (sequence, depth) pairs, so a sequence reachable at several
// depths counts at each of them.  t must be the budget of the failed run.
EndSets end_sets(const IntersectionGraph& g, const HamTrace& trace, int t,
                 std::uint64_t max_paths = 10'000'000);

}  // namespace rig
