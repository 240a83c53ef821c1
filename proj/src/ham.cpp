#include "rig/ham.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rig/errors.hpp"
#include "rig/rng.hpp"

namespace rig {

int compute_budget(std::uint32_t n, double d) {
  if (n < 3) throw ParameterError("compute_budget: n must be at least 3");
  if (!(d > 1.0)) throw ParameterError("compute_budget: d must exceed 1");
  const double base = std::max(d, std::exp(1.0));
  const double t = std::ceil(std::log(static_cast<double>(n)) / std::log(base));
  return std::max(2, static_cast<int>(t));
}

PathState rotate(const IntersectionGraph& g, const PathState& p, Edge chord) {
  const auto& seq = p.seq;
  const std::size_t k = seq.size();
  if (k < 4) throw ParameterError("rotate: path must have at least 4 vertices");
  const std::uint32_t tail = seq.back();
  std::uint32_t partner;
  if (chord.first == tail) {
    partner = chord.second;
  } else if (chord.second == tail) {
    partner = chord.first;
  } else {
    throw ParameterError("rotate: chord must contain the path endpoint u_k");
  }
  if (!g.has_edge(tail, partner)) throw ParameterError("rotate: chord is not an edge");
  const auto it = std::find(seq.begin(), seq.end(), partner);
  if (it == seq.end()) throw ParameterError("rotate: chord partner is not on the path");
  const std::size_t j = static_cast<std::size_t>(it - seq.begin());
  if (j < 1 || j > k - 3)
    throw ParameterError("rotate: chord position must satisfy 2 <= i <= k-2");

  PathState out;
  out.seq.reserve(k);
  out.seq.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(j + 1));
  for (std::size_t t = k; t-- > j + 1;) out.seq.push_back(seq[t]);
  out.rot_count = p.rot_count + 1;
  return out;
}

bool validate_cycle(const IntersectionGraph& g, const std::vector<std::uint32_t>& cycle) {
  const std::uint32_t n = g.size();
  if (n < 3 || cycle.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : cycle) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

namespace {

constexpr std::uint64_t kNoParent = std::numeric_limits<std::uint64_t>::max();

// Compact path record: the vertex sequence is reconstructed on demand by
// replaying the rotation chain from the stage's initial path.
struct PathRec {
  std::uint64_t parent = kNoParent;
  std::uint32_t chord_partner = 0;  // u_i of the rotation that created this path
  std::uint32_t end_head = 0;
  std::uint32_t end_tail = 0;
  std::uint32_t rot = 0;
  bool at_head = false;  // the rotation acted on the head endpoint
};

// Reversal-invariant 128-bit sequence fingerprint.
struct SeqKey {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool operator==(const SeqKey&) const = default;
};

struct SeqKeyHash {
  std::size_t operator()(const SeqKey& k) const noexcept {
    return static_cast<std::size_t>(k.a ^ (k.b * 0x9e3779b97f4a7c15ULL));
  }
};

SeqKey sequence_key(const std::vector<std::uint32_t>& seq) {
  constexpr std::uint64_t kP1 = 0x100000001b3ULL;
  constexpr std::uint64_t kP2 = 0xc6a4a7935bd1e995ULL;
  std::uint64_t f1 = 1469598103934665603ULL, f2 = 0x84222325cbf29ce4ULL;
  std::uint64_t r1 = f1, r2 = f2;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::uint64_t x = splitmix64(seq[i] + 0x51ed270bULL);
    f1 = (f1 ^ x) * kP1;
    f2 = f2 * kP2 + x;
  }
  for (std::size_t i = seq.size(); i-- > 0;) {
    const std::uint64_t x = splitmix64(seq[i] + 0x51ed270bULL);
    r1 = (r1 ^ x) * kP1;
    r2 = r2 * kP2 + x;
  }
  if (f1 < r1 || (f1 == r1 && f2 <= r2)) return {f1, f2};
  return {r1, r2};
}

SeqKey with_depth(SeqKey k, std::uint32_t depth) {
  k.b ^= splitmix64(0xd00dULL + depth);
  return k;
}

inline std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Scratch state for sequence replay.  Vertex positions are tracked with a
// version stamp so loading a new sequence does not require an O(n) clear.
struct Workspace {
  std::vector<std::uint32_t> seq;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> stamp;
  std::uint32_t cur = 0;
  std::vector<std::pair<bool, std::uint32_t>> moves;

  void init(std::uint32_t n) {
    pos.assign(n, 0);
    stamp.assign(n, 0);
    cur = 0;
  }

  bool on_path(std::uint32_t v) const { return stamp[v] == cur; }

  void load(const std::vector<std::uint32_t>& root) {
    ++cur;
    seq = root;
    for (std::uint32_t i = 0; i < seq.size(); ++i) {
      pos[seq[i]] = i;
      stamp[seq[i]] = cur;
    }
  }

  void reverse_range(std::size_t a, std::size_t b) {
    while (a < b) {
      std::swap(seq[a], seq[b]);
      pos[seq[a]] = static_cast<std::uint32_t>(a);
      pos[seq[b]] = static_cast<std::uint32_t>(b);
      ++a;
      --b;
    }
  }

  // Rotation at the tail with chord partner x reverses seq[j+1 .. k-1];
  // at the head it reverses seq[0 .. j-1], where j is x's position.
  void apply(bool at_head, std::uint32_t partner) {
    const std::size_t j = pos[partner];
    if (at_head) {
      reverse_range(0, j - 1);
    } else {
      reverse_range(j + 1, seq.size() - 1);
    }
  }

  void replay(const std::vector<PathRec>& pool, std::uint64_t idx,
              const std::vector<std::uint32_t>& root) {
    moves.clear();
    for (std::uint64_t c = idx; pool[c].parent != kNoParent; c = pool[c].parent)
      moves.emplace_back(pool[c].at_head, pool[c].chord_partner);
    load(root);
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) apply(it->first, it->second);
  }
};

}  // namespace

HamOutcome run_ham(const IntersectionGraph& g, double d, const HamOptions& options) {
  const std::uint32_t n = g.size();
  if (n < 3) throw ParameterError("run_ham: graph must have at least 3 vertices");
  if (!(d > 1.0)) throw ParameterError("run_ham: d must exceed 1");
  if (options.max_queue < 1) throw ParameterError("run_ham: max_queue must be positive");

  HamOutcome out;
  out.d = d;
  out.dedup = options.dedup;
  const int big_t = compute_budget(n, d);
  out.budget_t = big_t;
  const std::uint32_t budget = 2 * static_cast<std::uint32_t>(big_t) + 1;

  std::unordered_set<std::uint64_t> h_edges;
  const auto h_insert = [&h_edges](std::uint32_t u, std::uint32_t v) {
    h_edges.insert(edge_key(u, v));
  };

  std::vector<PathRec> pool;
  std::unordered_set<SeqKey, SeqKeyHash> seen;
  Workspace ws;
  ws.init(n);
  std::vector<std::uint32_t> child_scratch;
  std::vector<std::uint32_t> cycle_order;

  // Edges of the rotation chain from the stage root to pool[idx].
  const auto commit_chain = [&](std::uint64_t idx) {
    for (std::uint64_t c = idx; pool[c].parent != kNoParent; c = pool[c].parent) {
      const PathRec& r = pool[c];
      const PathRec& par = pool[r.parent];
      h_insert(r.at_head ? par.end_head : par.end_tail, r.chord_partner);
    }
  };

  const auto finish = [&](HamResult result, std::uint32_t stage,
                          const std::vector<std::uint32_t>& stage_path) {
    out.result = result;
    out.trace.stage = stage;
    out.trace.stage_initial_path = stage_path;
    out.trace.h_set.clear();
    out.trace.h_set.reserve(h_edges.size());
    for (std::uint64_t key : h_edges)
      out.trace.h_set.emplace_back(static_cast<std::uint32_t>(key >> 32),
                                   static_cast<std::uint32_t>(key & 0xffffffffu));
    std::sort(out.trace.h_set.begin(), out.trace.h_set.end());
    out.trace.frontier.clear();
    out.trace.frontier.reserve(pool.size());
    for (const PathRec& r : pool)
      out.trace.frontier.push_back({r.end_head, r.end_tail, r.rot});
    return out;
  };

  std::vector<std::uint32_t> stage_path{0};  // stage 1 starts from v_1

  while (true) {
    const std::uint32_t k = static_cast<std::uint32_t>(stage_path.size());
    pool.clear();
    seen.clear();
    pool.push_back({kNoParent, 0, stage_path.front(), stage_path.back(), 0, false});
    if (options.dedup) seen.insert(sequence_key(stage_path));

    std::uint64_t head_idx = 0;
    bool extended = false;

    while (head_idx < pool.size()) {
      const PathRec rec = pool[head_idx];
      ws.replay(pool, head_idx, stage_path);
      ++out.counters.paths_explored;
      const std::uint32_t head = ws.seq.front();
      const std::uint32_t tail = ws.seq.back();

      // (1) simple extension: lowest-indexed off-path neighbour of an endpoint
      std::uint32_t cand_head = UINT32_MAX, cand_tail = UINT32_MAX;
      for (std::uint32_t x : g.neighbours(head)) {
        if (!ws.on_path(x)) {
          cand_head = x;
          break;
        }
      }
      for (std::uint32_t x : g.neighbours(tail)) {
        if (!ws.on_path(x)) {
          cand_tail = x;
          break;
        }
      }
      if (cand_head != UINT32_MAX || cand_tail != UINT32_MAX) {
        bool attach_head;
        if (cand_head < cand_tail) {
          attach_head = true;
        } else if (cand_tail < cand_head) {
          attach_head = false;
        } else {
          attach_head = head < tail;  // same vertex next to both endpoints
        }
        const std::uint32_t grown = std::min(cand_head, cand_tail);
        commit_chain(head_idx);
        h_insert(attach_head ? head : tail, grown);
        std::vector<std::uint32_t> next;
        next.reserve(k + 1);
        if (attach_head) {
          next.push_back(grown);
          next.insert(next.end(), ws.seq.begin(), ws.seq.end());
        } else {
          next = ws.seq;
          next.push_back(grown);
        }
        stage_path = std::move(next);
        ++out.counters.extensions_simple;
        ++out.counters.stages_completed;
        extended = true;
        break;
      }

      // (2) cycle extension
      if (k >= 3 && g.has_edge(head, tail)) {
        if (k == n) {
          commit_chain(head_idx);
          h_insert(head, tail);
          out.result = HamResult::cycle;
          out.cycle = ws.seq;
          assert(validate_cycle(g, out.cycle));
          return out;
        }
        // lowest-indexed cycle vertex with an off-cycle neighbour, then its
        // lowest such neighbour
        std::uint32_t break_v = UINT32_MAX, grow_v = UINT32_MAX;
        cycle_order = ws.seq;
        std::sort(cycle_order.begin(), cycle_order.end());
        for (std::uint32_t u : cycle_order) {
          for (std::uint32_t x : g.neighbours(u)) {
            if (!ws.on_path(x)) {
              break_v = u;
              grow_v = x;
              break;
            }
          }
          if (break_v != UINT32_MAX) break;
        }
        if (break_v == UINT32_MAX) {
          // The cycle's component is exhausted: rotations preserve the vertex
          // set, so no path of this stage can ever extend.
          return finish(HamResult::failure, k, stage_path);
        }
        commit_chain(head_idx);
        h_insert(head, tail);  // endpoint pair of the cycle extension
        h_insert(break_v, grow_v);
        const std::size_t at = ws.pos[break_v];
        std::vector<std::uint32_t> next;
        next.reserve(k + 1);
        next.push_back(grow_v);
        for (std::size_t i = 0; i < k; ++i) next.push_back(ws.seq[(at + i) % k]);
        stage_path = std::move(next);
        ++out.counters.extensions_cycle;
        ++out.counters.stages_completed;
        extended = true;
        break;
      }

      // (3) rotations at both endpoints
      if (k >= 4 && rec.rot < budget) {
        for (std::uint32_t x : g.neighbours(head)) {
          if (!ws.on_path(x)) continue;
          const std::uint32_t j = ws.pos[x];
          if (j < 2 || j > k - 2) continue;
          ++out.counters.rotations_total;
          if (options.dedup) {
            child_scratch = ws.seq;
            std::reverse(child_scratch.begin(), child_scratch.begin() + j);
            if (!seen.insert(sequence_key(child_scratch)).second) continue;
          }
          if (pool.size() >= options.max_queue)
            return finish(HamResult::overflow, k, stage_path);
          pool.push_back({head_idx, x, ws.seq[j - 1], tail, rec.rot + 1, true});
        }
        for (std::uint32_t x : g.neighbours(tail)) {
          if (!ws.on_path(x)) continue;
          const std::uint32_t j = ws.pos[x];
          if (j < 1 || j > k - 3) continue;
          ++out.counters.rotations_total;
          if (options.dedup) {
            child_scratch = ws.seq;
            std::reverse(child_scratch.begin() + j + 1, child_scratch.end());
            if (!seen.insert(sequence_key(child_scratch)).second) continue;
          }
          if (pool.size() >= options.max_queue)
            return finish(HamResult::overflow, k, stage_path);
          pool.push_back({head_idx, x, head, ws.seq[j + 1], rec.rot + 1, false});
        }
      }
      ++head_idx;
    }

    if (!extended) {
      // explored everything within 2T+1 rotations of the stage path
      return finish(HamResult::failure, k, stage_path);
    }
  }
}

EndSets end_sets(const IntersectionGraph& g, const HamTrace& trace, int t,
                 std::uint64_t max_paths) {
  const std::uint32_t n = g.size();
  if (t < 2) throw ParameterError("end_sets: budget T from the failed run is at least 2");
  const auto& root = trace.stage_initial_path;
  if (root.empty() || root.size() > n)
    throw ParameterError("end_sets: trace does not carry a valid stage path");
  {
    std::vector<bool> used(n, false);
    for (std::uint32_t v : root) {
      if (v >= n || used[v]) throw ParameterError("end_sets: stage path is not a simple path");
      used[v] = true;
    }
    for (std::size_t i = 0; i + 1 < root.size(); ++i)
      if (!g.has_edge(root[i], root[i + 1]))
        throw ParameterError("end_sets: stage path is not a path of this graph");
  }

  const std::uint32_t u0 = root.front();
  const std::uint32_t k = static_cast<std::uint32_t>(root.size());
  const std::uint32_t depth_cap = 2 * static_cast<std::uint32_t>(t);

  // Rotation closure over (sequence, depth) states: a sequence reachable at
  // several rotation counts is recorded at each of them.
  std::vector<PathRec> pool;
  std::unordered_set<SeqKey, SeqKeyHash> seen;
  pool.push_back({kNoParent, 0, root.front(), root.back(), 0, false});
  seen.insert(with_depth(sequence_key(root), 0));

  Workspace ws;
  ws.init(n);
  std::vector<std::uint32_t> child_scratch;

  if (k >= 4) {
    for (std::uint64_t idx = 0; idx < pool.size(); ++idx) {
      const PathRec rec = pool[idx];
      if (rec.rot >= depth_cap) continue;
      ws.replay(pool, idx, root);
      const std::uint32_t head = ws.seq.front();
      const std::uint32_t tail = ws.seq.back();
      for (std::uint32_t x : g.neighbours(head)) {
        if (!ws.on_path(x)) continue;
        const std::uint32_t j = ws.pos[x];
        if (j < 2 || j > k - 2) continue;
        child_scratch = ws.seq;
        std::reverse(child_scratch.begin(), child_scratch.begin() + j);
        if (!seen.insert(with_depth(sequence_key(child_scratch), rec.rot + 1)).second) continue;
        if (pool.size() >= max_paths) throw CapacityError("end_sets: rotation closure cap hit");
        pool.push_back({idx, x, ws.seq[j - 1], tail, rec.rot + 1, true});
      }
      for (std::uint32_t x : g.neighbours(tail)) {
        if (!ws.on_path(x)) continue;
        const std::uint32_t j = ws.pos[x];
        if (j < 1 || j > k - 3) continue;
        child_scratch = ws.seq;
        std::reverse(child_scratch.begin() + j + 1, child_scratch.end());
        if (!seen.insert(with_depth(sequence_key(child_scratch), rec.rot + 1)).second) continue;
        if (pool.size() >= max_paths) throw CapacityError("end_sets: rotation closure cap hit");
        pool.push_back({idx, x, head, ws.seq[j + 1], rec.rot + 1, false});
      }
    }
  }

  EndSets out;
  std::vector<bool> in_end(n, false);
  for (const PathRec& r : pool) {
    if (r.rot < 1 || r.rot > static_cast<std::uint32_t>(t)) continue;
    if (r.end_head != u0) in_end[r.end_head] = true;
    if (r.end_tail != u0) in_end[r.end_tail] = true;
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (in_end[v]) out.end_g.push_back(v);

  for (const PathRec& r : pool) {
    if (r.rot < 1 || r.rot > depth_cap) continue;
    if (in_end[r.end_head]) out.end_gx[r.end_head].push_back(r.end_tail);
    if (in_end[r.end_tail]) out.end_gx[r.end_tail].push_back(r.end_head);
  }
  for (auto& [x, vs] : out.end_gx) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  }
  return out;
}

}  // namespace rig
