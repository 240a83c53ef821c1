#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rig/bipartite.hpp"

namespace rig {

using Edge = std::pair<std::uint32_t, std::uint32_t>;  // stored with first < second

// Undirected simple graph with sorted neighbour lists plus a hashed edge
// index for O(1) expected membership tests (the rotation search is heavy on
// both iteration and membership).  Optionally retains the incidence structure
// it was derived from.
class IntersectionGraph {
 public:
  IntersectionGraph() = default;

  // Plain graph without a bipartite source.
  static IntersectionGraph from_adjacency(std::uint32_t n, const std::vector<Edge>& edges);

  std::uint32_t size() const { return n_; }
  const std::vector<std::uint32_t>& neighbours(std::uint32_t v) const { return adj_[v]; }
  std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  std::size_t edge_count() const { return edge_count_; }
  std::vector<Edge> edges() const;  // sorted lexicographically, u < v

  std::uint32_t min_degree() const;
  std::uint32_t count_degree(std::uint32_t k) const;  // vertices with degree exactly k

  const BipartiteIncidence* source() const { return source_.get(); }
  std::shared_ptr<const BipartiteIncidence> source_ptr() const { return source_; }

 private:
  friend IntersectionGraph intersection_of(std::shared_ptr<const BipartiteIncidence>);
  friend IntersectionGraph intersection_of_reference(std::shared_ptr<const BipartiteIncidence>);

  void finish_adjacency();  // builds edge index and count from adj_

  std::uint32_t n_ = 0;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::unordered_set<std::uint64_t> edge_index_;
  std::size_t edge_count_ = 0;
  std::shared_ptr<const BipartiteIncidence> source_;
};

// Derives the intersection graph: u ~ v iff their feature sets intersect.
// Per-vertex neighbourhood construction, parallelised with OpenMP; output is
// independent of the thread count.
IntersectionGraph intersection_of(std::shared_ptr<const BipartiteIncidence> b);
IntersectionGraph intersection_of(BipartiteIncidence b);

// Serial reference construction (union of per-feature cliques), kept for
// testing and benchmarking against the parallel kernel.
IntersectionGraph intersection_of_reference(std::shared_ptr<const BipartiteIncidence> b);

// Edge-list export: "u v" per line with u < v, sorted lexicographically.
void write_edge_list(const IntersectionGraph& g, std::ostream& out);

// Set queries over an incidence structure and its graph.  All outputs sorted.
struct IncidenceQueryResult {
  std::vector<std::uint32_t> features_of_set;         // W(S): features chosen by S
  std::vector<std::uint32_t> vertices_of_features;    // V(R): vertices choosing from R
  std::vector<std::uint32_t> shared_features_of_set;  // W'(S): features of S chosen >= 2 times overall
  std::vector<std::uint32_t> internal_features;       // W''(S): features chosen by >= 2 vertices of S
  std::vector<std::uint32_t> neighbourhood;           // N(S): neighbours of S outside S
};
IncidenceQueryResult incidence_queries(const BipartiteIncidence& b, const IntersectionGraph& g,
                                       const std::vector<std::uint32_t>& s,
                                       const std::vector<std::uint32_t>& r);

// W'(v): features of v chosen by at least two vertices.
std::uint32_t shared_feature_count(const BipartiteIncidence& b, std::uint32_t v);

}  // namespace rig
