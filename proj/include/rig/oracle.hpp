#pragma once

#include <cstdint>
#include <vector>

#include "rig/bipartite.hpp"
#include "rig/graph.hpp"

namespace rig::oracle {

struct OracleVerdict {
  bool hamiltonian = false;
  std::vector<std::uint32_t> witness_cycle;  // present iff hamiltonian
};

// Exact Hamiltonicity decision by dynamic programming over vertex subsets
// anchored at vertex 0.  Requires n <= 20 (CapacityError beyond).
OracleVerdict is_hamiltonian_bruteforce(const IntersectionGraph& g);

// Edge set by pairwise feature-set intersection tests, independent of the
// neighbourhood-merge construction.  Requires n*m <= 10^6.
std::vector<Edge> edges_bruteforce(const BipartiteIncidence& b);

}  // namespace rig::oracle
