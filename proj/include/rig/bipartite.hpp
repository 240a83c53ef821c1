#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rig {

// Vertex-feature incidence structure generating an intersection graph.
// chose[v] is the sorted feature set of vertex v and chosen_by[w] the sorted
// vertex set of feature w; the two are exact transposes of each other.
struct BipartiteIncidence {
  std::uint32_t n = 0;  // vertex count
  std::uint32_t m = 0;  // feature count
  double p = 0.0;       // sampling probability, kept for provenance
  std::uint64_t seed = 0;
  std::vector<std::vector<std::uint32_t>> chose;
  std::vector<std::vector<std::uint32_t>> chosen_by;

  std::size_t incidence_count() const;

  // Structural equality: n, m and the incidence pairs.
  bool structurally_equal(const BipartiteIncidence& other) const;

  // Builds the transpose from per-vertex feature sets; validates index ranges,
  // sortedness, and pair uniqueness.
  static BipartiteIncidence from_sets(std::uint32_t n, std::uint32_t m,
                                      std::vector<std::vector<std::uint32_t>> chose,
                                      double p = 0.0, std::uint64_t seed = 0);
};

// Samples the incidence: each of the n*m pairs is present independently with
// probability p.  Pure function of its arguments.
BipartiteIncidence sample_bipartite(std::uint32_t n, std::uint32_t m, double p,
                                    std::uint64_t seed);

// Graph text format.  Line 1: "RIG n m p seed".  Lines 2..n+1: the sorted
// feature indices of vertex i separated by single spaces, a blank line for an
// empty set.  Writing then reading reproduces the structure exactly, and
// re-writing a read file reproduces it byte for byte.
void write_graph_file(const BipartiteIncidence& b, std::ostream& out);
std::string graph_file_string(const BipartiteIncidence& b);
BipartiteIncidence read_graph_file(std::istream& in);

}  // namespace rig
