#include "rig/sparsify.hpp"

#include <algorithm>

#include "rig/errors.hpp"
#include "rig/rng.hpp"

namespace rig {

SparsifiedTriple sparsify(std::shared_ptr<const BipartiteIncidence> b, double lambda,
                          std::uint64_t seed) {
  const BipartiteIncidence& inc = *b;
  if (!(lambda >= 0.0)) throw ParameterError("sparsify: lambda must be nonnegative");
  if (lambda > static_cast<double>(inc.n))
    throw ParameterError("sparsify: lambda may not exceed n (q would exceed 1)");

  const double q = lambda / static_cast<double>(inc.n);

  // Delete each incidence pair independently with probability q, scanning
  // pairs in canonical (vertex, feature) order.
  Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> kept(inc.n);
  for (std::uint32_t v = 0; v < inc.n; ++v)
    for (std::uint32_t w : inc.chose[v])
      if (!rng.bernoulli(q)) kept[v].push_back(w);

  auto sparse_inc = std::make_shared<const BipartiteIncidence>(
      BipartiteIncidence::from_sets(inc.n, inc.m, std::move(kept), inc.p, seed));

  SparsifiedTriple out;
  out.lambda = lambda;
  out.q = q;
  out.original = intersection_of(b);
  out.sparse = intersection_of(sparse_inc);

  const auto original_edges = out.original.edges();
  const auto sparse_edges = out.sparse.edges();
  out.deleted_edges.reserve(original_edges.size() - sparse_edges.size());
  std::set_difference(original_edges.begin(), original_edges.end(), sparse_edges.begin(),
                      sparse_edges.end(), std::back_inserter(out.deleted_edges));
  return out;
}

SparsifiedTriple sparsify(const BipartiteIncidence& b, double lambda, std::uint64_t seed) {
  return sparsify(std::make_shared<const BipartiteIncidence>(b), lambda, seed);
}

}  // namespace rig
