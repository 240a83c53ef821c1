#include "rig/oracle.hpp"

#include <algorithm>
#include <bit>

#include "rig/errors.hpp"

namespace rig::oracle {

OracleVerdict is_hamiltonian_bruteforce(const IntersectionGraph& g) {
  const std::uint32_t n = g.size();
  if (n > 20) throw CapacityError("is_hamiltonian_bruteforce: n must be at most 20");
  OracleVerdict out;
  if (n < 3) return out;

  std::vector<std::uint32_t> adj_mask(n, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t u : g.neighbours(v)) adj_mask[v] |= 1u << u;

  // dp[mask] = endpoint set of paths that start at vertex 0 and cover mask
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> dp(static_cast<std::size_t>(full) + 1, 0);
  dp[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {  // masks containing vertex 0
    const std::uint32_t ends = dp[mask];
    if (ends == 0) continue;
    std::uint32_t rest = full & ~mask;
    while (rest != 0) {
      const std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(rest));
      rest &= rest - 1;
      if (adj_mask[v] & ends) dp[mask | (1u << v)] |= 1u << v;
    }
  }

  const std::uint32_t closers = dp[full] & adj_mask[0] & ~1u;
  if (closers == 0) return out;

  // reconstruct a witness cycle backwards from the lowest closing endpoint
  std::vector<std::uint32_t> reversed;
  std::uint32_t mask = full;
  std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(closers));
  while (true) {
    reversed.push_back(v);
    const std::uint32_t prev_mask = mask & ~(1u << v);
    if (prev_mask == 1) break;
    const std::uint32_t cands = dp[prev_mask] & adj_mask[v];
    v = static_cast<std::uint32_t>(std::countr_zero(cands));
    mask = prev_mask;
  }
  reversed.push_back(0);
  std::reverse(reversed.begin(), reversed.end());

  out.hamiltonian = true;
  out.witness_cycle = std::move(reversed);
  return out;
}

std::vector<Edge> edges_bruteforce(const BipartiteIncidence& b) {
  if (static_cast<std::uint64_t>(b.n) * b.m > 1'000'000)
    throw CapacityError("edges_bruteforce: n*m must be at most 10^6");
  std::vector<Edge> out;
  for (std::uint32_t u = 0; u < b.n; ++u) {
    const auto& fu = b.chose[u];
    for (std::uint32_t v = u + 1; v < b.n; ++v) {
      const auto& fv = b.chose[v];
      // sorted intersection test
      std::size_t i = 0, j = 0;
      bool shares = false;
      while (i < fu.size() && j < fv.size()) {
        if (fu[i] == fv[j]) {
          shares = true;
          break;
        }
        if (fu[i] < fv[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      if (shares) out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace rig::oracle
