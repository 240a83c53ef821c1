#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rig/bipartite.hpp"
#include "rig/graph.hpp"

namespace rig {

// Coupled pair (G, G_q): G_q is derived from the incidence structure with
// each incidence pair deleted independently with probability q = lambda / n,
// and deleted_edges is exactly E(G) \ E(G_q).
struct SparsifiedTriple {
  IntersectionGraph original;
  IntersectionGraph sparse;
  std::vector<Edge> deleted_edges;  // sorted
  double lambda = 0.0;
  double q = 0.0;
};

// Requires 0 <= lambda <= n (lambda = 0 gives the identity sparsification).
SparsifiedTriple sparsify(std::shared_ptr<const BipartiteIncidence> b, double lambda,
                          std::uint64_t seed);
SparsifiedTriple sparsify(const BipartiteIncidence& b, double lambda, std::uint64_t seed);

}  // namespace rig
