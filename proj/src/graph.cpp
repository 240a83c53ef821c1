#include "rig/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "rig/errors.hpp"

namespace rig {

namespace {

inline std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

bool IntersectionGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  if (u == v) return false;
  return edge_index_.count(edge_key(u, v)) != 0;
}

void IntersectionGraph::finish_adjacency() {
  edge_count_ = 0;
  edge_index_.clear();
  std::size_t degree_sum = 0;
  for (const auto& nb : adj_) degree_sum += nb.size();
  edge_index_.reserve(degree_sum / 2 + 1);
  for (std::uint32_t v = 0; v < n_; ++v) {
    for (std::uint32_t u : adj_[v]) {
      if (v < u) {
        edge_index_.insert(edge_key(v, u));
        ++edge_count_;
      }
    }
  }
}

IntersectionGraph IntersectionGraph::from_adjacency(std::uint32_t n,
                                                    const std::vector<Edge>& edges) {
  IntersectionGraph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ParameterError("from_adjacency: vertex index out of range");
    if (u == v) throw ParameterError("from_adjacency: self-loop");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  g.finish_adjacency();
  return g;
}

std::vector<Edge> IntersectionGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::uint32_t v = 0; v < n_; ++v)
    for (std::uint32_t u : adj_[v])
      if (v < u) out.emplace_back(v, u);
  return out;  // already lexicographic: v ascending, adj_[v] sorted
}

std::uint32_t IntersectionGraph::min_degree() const {
  std::uint32_t best = n_ == 0 ? 0 : static_cast<std::uint32_t>(adj_[0].size());
  for (const auto& nb : adj_) best = std::min(best, static_cast<std::uint32_t>(nb.size()));
  return best;
}

std::uint32_t IntersectionGraph::count_degree(std::uint32_t k) const {
  std::uint32_t count = 0;
  for (const auto& nb : adj_)
    if (nb.size() == k) ++count;
  return count;
}

IntersectionGraph intersection_of(std::shared_ptr<const BipartiteIncidence> b) {
  const BipartiteIncidence& inc = *b;
  IntersectionGraph g;
  g.n_ = inc.n;
  g.adj_.assign(inc.n, {});
  g.source_ = std::move(b);

  const auto n = static_cast<std::int64_t>(inc.n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t v = 0; v < n; ++v) {
    auto& nb = g.adj_[v];
    for (std::uint32_t w : inc.chose[v])
      for (std::uint32_t u : inc.chosen_by[w])
        if (u != static_cast<std::uint32_t>(v)) nb.push_back(u);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  g.finish_adjacency();
  return g;
}

IntersectionGraph intersection_of(BipartiteIncidence b) {
  return intersection_of(std::make_shared<const BipartiteIncidence>(std::move(b)));
}

IntersectionGraph intersection_of_reference(std::shared_ptr<const BipartiteIncidence> b) {
  const BipartiteIncidence& inc = *b;
  IntersectionGraph g;
  g.n_ = inc.n;
  g.adj_.assign(inc.n, {});
  g.source_ = std::move(b);

  // union of per-feature cliques
  for (std::uint32_t w = 0; w < inc.m; ++w) {
    const auto& vs = inc.chosen_by[w];
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        g.adj_[vs[i]].push_back(vs[j]);
        g.adj_[vs[j]].push_back(vs[i]);
      }
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  g.finish_adjacency();
  return g;
}

void write_edge_list(const IntersectionGraph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

namespace {

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

std::uint32_t shared_feature_count(const BipartiteIncidence& b, std::uint32_t v) {
  if (v >= b.n) throw ParameterError("shared_feature_count: vertex out of range");
  std::uint32_t count = 0;
  for (std::uint32_t w : b.chose[v])
    if (b.chosen_by[w].size() >= 2) ++count;
  return count;
}

IncidenceQueryResult incidence_queries(const BipartiteIncidence& b, const IntersectionGraph& g,
                                       const std::vector<std::uint32_t>& s,
                                       const std::vector<std::uint32_t>& r) {
  for (std::uint32_t v : s)
    if (v >= b.n) throw ParameterError("incidence_queries: vertex index out of range");
  for (std::uint32_t w : r)
    if (w >= b.m) throw ParameterError("incidence_queries: feature index out of range");
  if (g.size() != b.n) throw ParameterError("incidence_queries: graph/incidence size mismatch");

  IncidenceQueryResult out;

  std::vector<std::uint32_t> ws;
  for (std::uint32_t v : s)
    for (std::uint32_t w : b.chose[v]) ws.push_back(w);
  out.features_of_set = sorted_unique(std::move(ws));

  std::vector<std::uint32_t> vs;
  for (std::uint32_t w : r)
    for (std::uint32_t v : b.chosen_by[w]) vs.push_back(v);
  out.vertices_of_features = sorted_unique(std::move(vs));

  for (std::uint32_t w : out.features_of_set)
    if (b.chosen_by[w].size() >= 2) out.shared_features_of_set.push_back(w);

  std::vector<bool> in_s(b.n, false);
  for (std::uint32_t v : s) in_s[v] = true;
  for (std::uint32_t w : out.features_of_set) {
    std::uint32_t hits = 0;
    for (std::uint32_t v : b.chosen_by[w])
      if (in_s[v] && ++hits >= 2) break;
    if (hits >= 2) out.internal_features.push_back(w);
  }

  std::vector<std::uint32_t> nbs;
  for (std::uint32_t v : s)
    for (std::uint32_t u : g.neighbours(v))
      if (!in_s[u]) nbs.push_back(u);
  out.neighbourhood = sorted_unique(std::move(nbs));

  return out;
}

}  // namespace rig
