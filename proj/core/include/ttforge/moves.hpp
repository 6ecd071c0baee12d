#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttforge/ltt.hpp"

namespace ttforge {

enum class MoveKind { Extension, Switch };

// A generator triple: the ingoing Nielsen generator of the destination
// structure together with the source structure obtained by an extension or
// switch along a purple determining edge at the twice-achieved direction.
struct GeneratorTriple {
  NielsenGen gen;
  LTTStructure source;
  LTTStructure dest;
  MoveKind kind = MoveKind::Extension;
  Turn determining_edge;

  bool operator==(const GeneratorTriple&) const = default;
};

// The ingoing generator is pinned by the red data alone: the red vertex is
// the unachieved direction, the reverse of the red edge's purple endpoint is
// the prefix.
NielsenGen ingoing_generator(const LTTStructure& dest);

struct MoveResult {
  std::optional<GeneratorTriple> triple;
  std::string rejection;  // why the move is inadmissible
  bool ok() const { return triple.has_value(); }
};

// Build the source structure for the extension / switch determined by a
// purple edge at the twice-achieved direction of dest. Admissible iff the
// source passes Type (*) validation and birecurrency (dest is assumed
// admissible).
MoveResult potential_extension(const LTTStructure& dest, const Turn& det_edge);
MoveResult potential_switch(const LTTStructure& dest, const Turn& det_edge);

// All admissible triples entering dest: one extension and one switch
// candidate per purple edge at the twice-achieved direction.
std::vector<GeneratorTriple> enumerate_ingoing(const LTTStructure& dest);

// A chained sequence of moves: one more structure than generators, each
// consecutive pair linked by an admissible triple.
struct Composition {
  std::vector<LTTStructure> structures;  // source first
  std::vector<GeneratorTriple> triples;  // triples[i]: structures[i] -> [i+1]

  int rank() const { return structures.empty() ? 0 : structures.front().rank; }
  std::vector<NielsenGen> gens() const;
  RoseMap composed_map() const;
  const LTTStructure& source() const { return structures.front(); }
  const LTTStructure& dest() const { return structures.back(); }
};

struct CompositionResult {
  std::optional<Composition> composition;
  std::string rejection;
  int failing_index = -1;  // structure index that failed admissibility
  bool ok() const { return composition.has_value(); }
};

// Realize the purified construction composition whose construction path is
// `path`: the path starts with the red edge, alternates black and purple,
// ends with a black edge, and every purple edge determines one extension.
// A path with no purple edges yields the empty composition.
CompositionResult construction_composition_from_path(const LTTStructure& dest,
                                                     const SmoothWalk& path);

// Construction path of a chain of extensions into its destination.
SmoothWalk construction_path(const Composition& comp);

// Colored-edge subgraph view used by the pruning operations.
struct Subgraph {
  std::set<Turn> colored;     // purple edges kept (red edge listed too)
  std::set<int> black_edges;  // rose edge indices kept
  std::set<Dir> vertices;

  bool operator==(const Subgraph&) const = default;
};

// Iterative pruning fixpoints. The construction subgraph drops the black
// edge of the unachieved pair, the reverse of the red vertex with its purple
// star, then alternately black edges at colored-isolated vertices and purple
// edges at their reverses. The first building subgraph prunes with both edge
// kinds at the reverses.
Subgraph construction_subgraph(const LTTStructure& g);
Subgraph first_building_subgraph(const LTTStructure& g);

// Smooth paths inside a subgraph starting with the red edge and ending with
// a black edge; the raw material for construction compositions.
std::vector<SmoothWalk> potential_construction_paths(const LTTStructure& g,
                                                     const Subgraph& sub,
                                                     int max_purple_edges);

// Switch sequences: SS1 all switches, SS2 constant PI class, SS3 the
// distinctness conditions that make the switch path embedded.
struct SwitchPathResult {
  std::optional<SmoothWalk> path;
  std::string rejection;
  bool ok() const { return path.has_value(); }
};
SwitchPathResult switch_sequence_path(const Composition& seq);

// Preimage of a purple subgraph under a switch: the twice-achieved label of
// the destination moves back to the unachieved label.
LabeledGraph preimage_subgraph(const LabeledGraph& h,
                               const GeneratorTriple& sw);

// Admissible map properties I-VIII for a chained composition.
struct AMReport {
  struct Item {
    bool holds = true;
    std::string counterexample;
  };
  std::array<Item, 8> property;  // [0] = I, ... [7] = VIII
  bool all(int upto = 8) const {
    for (int i = 0; i < upto; ++i)
      if (!property[i].holds) return false;
    return true;
  }
};
AMReport check_am_properties(const Composition& comp);

}  // namespace ttforge
