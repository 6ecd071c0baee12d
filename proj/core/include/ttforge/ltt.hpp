#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttforge/whitehead.hpp"

namespace ttforge {

// A lamination train track structure over the rank-r rose: a colored graph
// on the 2r directions. Black edges {d, rev(d)} are implicit, one per rose
// edge. In Type (*) form there is a single red (nonperiodic) vertex carried
// by a single red edge; every other colored edge is purple and the purple
// subgraph is the potential ideal Whitehead graph PI.
struct LTTStructure {
  int rank = 0;
  Dir red_vertex = 0;
  Turn red_edge;                 // {red_vertex, attaching purple vertex}
  std::set<Turn> purple_edges;
  std::optional<Turn> green_turn;  // the single illegal-turn annotation

  // Attaching (purple) vertex of the red edge.
  Dir attaching_vertex() const { return red_edge.other(red_vertex); }
  // Twice-achieved direction: reverse of the attaching vertex.
  Dir twice_achieved() const { return rev(attaching_vertex()); }

  bool purple_vertex(Dir d) const { return d != red_vertex; }
  // All colored edges: purple plus the red edge.
  std::vector<Turn> colored_edges() const;
  int colored_valence(Dir d) const;

  LabeledGraph pi() const;  // purple subgraph on the purple vertices

  bool operator==(const LTTStructure&) const = default;
  auto operator<=>(const LTTStructure&) const = default;

  std::string str() const;
};

enum class ValidationMode { Abstract, TypeStar, Based };

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Checks the structure axioms by name: vertex/edge sanity and the smooth
// train track graph conditions in every mode, plus the Type (*) conditions
// (single red vertex and edge, PI a connected loop-free (2r-1)-vertex graph,
// no valence-one vertex on a colored edge joining an inverse pair).
ValidationReport validate(const LTTStructure& g, ValidationMode mode);

// G(g) for a TT-certified rotationless map: purple subgraph = SW(g), red
// edges = LW(g) - SW(g), colors by periodicity. Fails when the map is not
// rotationless or the result is not a Type (*) structure.
struct BuildResult {
  std::optional<LTTStructure> structure;
  std::string error;
  bool ok() const { return structure.has_value(); }
};
BuildResult build_ltt(const RoseMap& g);

// Birecurrency: the smooth-transition digraph on oriented edges (arcs are
// smooth concatenations, i.e. the two consecutive edges alternate between
// black and colored) has a strongly connected component covering every edge
// of the structure in at least one orientation.
bool is_birecurrent(const LTTStructure& g);

// A closed smooth walk through every edge of a birecurrent structure; the
// auditable certificate behind is_birecurrent.
struct SmoothWalk {
  // Vertices visited; edge i runs vertices[i] -> vertices[i+1]. Closed, and
  // colors alternate along it.
  std::vector<Dir> vertices;
  std::vector<bool> black;  // per traversed edge
};
std::optional<SmoothWalk> smooth_line_witness(const LTTStructure& g);

bool walk_is_smooth(const LTTStructure& g, const SmoothWalk& w);

// Deterministic DOT with color attributes and stable vertex order.
std::string to_dot(const LTTStructure& g);

// Canonical form under edge pair permutations. The red pair is carried to
// the top edge pair with the red direction on the inverse side, then the
// remaining pairs are permuted and swapped to minimize the structure.
LTTStructure epp_canonical_structure(const LTTStructure& g);
bool epp_isomorphic(const LTTStructure& a, const LTTStructure& b);

// Relabel the whole structure by an edge-pair map.
LTTStructure relabel(const LTTStructure& g, const EppMap& m);

}  // namespace ttforge
