#include "rig/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rig/errors.hpp"
#include "rig/rng.hpp"

namespace rig {

std::size_t BipartiteIncidence::incidence_count() const {
  std::size_t total = 0;
  for (const auto& f : chose) total += f.size();
  return total;
}

bool BipartiteIncidence::structurally_equal(const BipartiteIncidence& other) const {
  return n == other.n && m == other.m && chose == other.chose && chosen_by == other.chosen_by;
}

BipartiteIncidence BipartiteIncidence::from_sets(std::uint32_t n, std::uint32_t m,
                                                 std::vector<std::vector<std::uint32_t>> chose,
                                                 double p, std::uint64_t seed) {
  if (chose.size() != n) throw ParameterError("from_sets: chose size must equal n");
  BipartiteIncidence b;
  b.n = n;
  b.m = m;
  b.p = p;
  b.seed = seed;
  b.chose = std::move(chose);
  b.chosen_by.assign(m, {});
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto& fs = b.chose[v];
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (fs[i] >= m) throw ParameterError("from_sets: feature index out of range");
      if (i > 0 && fs[i] <= fs[i - 1])
        throw ParameterError("from_sets: feature sets must be sorted and duplicate-free");
      b.chosen_by[fs[i]].push_back(v);
    }
  }
  // chosen_by comes out sorted because vertices are visited in order
  return b;
}

BipartiteIncidence sample_bipartite(std::uint32_t n, std::uint32_t m, double p,
                                    std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_bipartite: p must be in [0, 1]");
  if (n < 1 || m < 1) throw ParameterError("sample_bipartite: n and m must be positive");

  BipartiteIncidence b;
  b.n = n;
  b.m = m;
  b.p = p;
  b.seed = seed;
  b.chose.assign(n, {});
  b.chosen_by.assign(m, {});

  if (p <= 0.0) return b;
  if (p >= 1.0) {
    for (std::uint32_t v = 0; v < n; ++v) {
      b.chose[v].resize(m);
      for (std::uint32_t w = 0; w < m; ++w) b.chose[v][w] = w;
    }
    for (std::uint32_t w = 0; w < m; ++w) {
      b.chosen_by[w].resize(n);
      for (std::uint32_t v = 0; v < n; ++v) b.chosen_by[w][v] = v;
    }
    return b;
  }

  // Geometric skipping over the flattened n*m grid: each pair is present
  // independently with probability p, in O(#present) draws.
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * m;
  std::uint64_t idx = 0;
  while (true) {
    const double u = rng.canonical();
    const double skip = std::floor(std::log1p(-u) / log_q);
    idx += static_cast<std::uint64_t>(skip);
    if (idx >= total) break;
    const auto v = static_cast<std::uint32_t>(idx / m);
    const auto w = static_cast<std::uint32_t>(idx % m);
    b.chose[v].push_back(w);
    b.chosen_by[w].push_back(v);
    ++idx;
    if (idx >= total) break;
  }
  return b;
}

void write_graph_file(const BipartiteIncidence& b, std::ostream& out) {
  char header[128];
  std::snprintf(header, sizeof(header), "RIG %u %u %.17g %llu\n", b.n, b.m, b.p,
                static_cast<unsigned long long>(b.seed));
  out << header;
  for (std::uint32_t v = 0; v < b.n; ++v) {
    const auto& fs = b.chose[v];
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i > 0) out.put(' ');
      out << fs[i];
    }
    out.put('\n');
  }
}

std::string graph_file_string(const BipartiteIncidence& b) {
  std::ostringstream out;
  write_graph_file(b, out);
  return out.str();
}

BipartiteIncidence read_graph_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("graph file: missing header");
  std::istringstream header(line);
  std::string magic;
  std::uint32_t n = 0, m = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  header >> magic >> n >> m >> p >> seed;
  if (magic != "RIG" || header.fail())
    throw ParameterError("graph file: malformed header, expected 'RIG n m p seed'");

  std::vector<std::vector<std::uint32_t>> chose(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!std::getline(in, line)) throw ParameterError("graph file: truncated vertex lines");
    std::istringstream row(line);
    std::uint32_t w;
    while (row >> w) chose[v].push_back(w);
    if (!row.eof()) throw ParameterError("graph file: non-numeric feature index");
  }
  return BipartiteIncidence::from_sets(n, m, std::move(chose), p, seed);
}

}  // namespace rig
