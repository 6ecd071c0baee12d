#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ttforge/traintrack.hpp"

namespace ttforge {

// A simple loop-free graph on direction labels.
struct LabeledGraph {
  std::set<Dir> vertices;
  std::set<Turn> edges;

  void add_vertex(Dir d) { vertices.insert(d); }
  void add_edge(Dir x, Dir y);
  bool has_edge(Dir x, Dir y) const { return edges.count(Turn(x, y)) > 0; }
  int valence(Dir d) const;
  std::vector<Dir> neighbors(Dir d) const;
  bool connected() const;

  bool operator==(const LabeledGraph&) const = default;
  auto operator<=>(const LabeledGraph&) const = default;
};

// The isomorphism class of an unlabeled simple graph on n vertices, stored
// as the lexicographically least adjacency bitstring over all vertex
// permutations. n is small (5 for the rank-3 catalog), so the n! scan is the
// whole canonicalization.
class PIWGraph {
 public:
  PIWGraph() = default;
  PIWGraph(int n, const std::set<std::pair<int, int>>& edges);
  static PIWGraph of(const LabeledGraph& g);

  int vertex_count() const { return n_; }
  int edge_count() const;
  std::uint64_t bits() const { return bits_; }
  bool has_edge(int i, int j) const;
  std::vector<std::pair<int, int>> edge_list() const;
  std::vector<int> degree_sequence() const;  // sorted ascending
  bool connected() const;
  bool loop_free_type_star(int rank) const;  // connected, 2r-1 vertices

  bool operator==(const PIWGraph&) const = default;
  auto operator<=>(const PIWGraph&) const = default;

  std::string str() const;  // "n:{01,02,...}" canonical edge list

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;  // pair (i<j) -> bit pair_index(i,j,n)
};

bool are_isomorphic(const PIWGraph& a, const PIWGraph& b);

struct CatalogEntry {
  int id = 0;  // 1-based position in canonical order
  PIWGraph graph;
};

// The Type (*) potential ideal Whitehead graphs on 2r-1 vertices: connected,
// loop-free, up to isomorphism, in canonical (bitstring) order. For rank 3
// there are 21.
std::vector<CatalogEntry> enumerate_catalog(int rank = 3);

// Index of a graph in the catalog, or -1.
int catalog_index(const std::vector<CatalogEntry>& cat, const PIWGraph& g);

// Singularity index of an IW component with k >= 3 vertices: 1 - k/2.
struct Rational {
  long long num = 0;
  long long den = 1;
  bool operator==(const Rational&) const = default;
};
Rational singularity_index(int component_vertex_count);

LabeledGraph local_whitehead_graph(const RoseMap& g);   // wants TT
LabeledGraph stable_whitehead_graph(const RoseMap& g);  // wants TT

// IW class for a TT-certified, rotationless map with a PNP-free certificate:
// the isomorphism class of SW. The certificate is the caller's input; this
// does not re-run the PNP search.
PIWGraph ideal_whitehead_graph(const RoseMap& g, bool pnp_free_certified);

// Edge pair permutation canonicalization of a labeled graph: permute the
// pair indices 1..r-1 and swap within those pairs; the pair of the
// designated red direction (if any) is pinned with the red direction itself
// fixed. Two graphs are EPP-isomorphic iff their canonical forms agree.
struct EppMap {
  // peg[i] = signed target edge for positive edge i+1 (sign = swap).
  std::vector<Dir> peg;
  Dir operator()(Dir d) const {
    Dir t = peg[edge_index(d) - 1];
    return positive(d) ? t : rev(t);
  }
};

std::vector<EppMap> epp_symmetries(int rank, int pinned_edge /*0 = none*/);
LabeledGraph relabel(const LabeledGraph& g, const EppMap& m);
LabeledGraph epp_canonical(const LabeledGraph& g, int rank,
                           int pinned_edge = 0);

}  // namespace ttforge
