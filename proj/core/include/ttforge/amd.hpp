#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttforge/moves.hpp"

namespace ttforge {

// LTT chart: one column per EPP class of labelings of the target graph, one
// cell per legal red-edge attachment, each cell tagged birecurrent (boxed)
// or not (crossed).
struct ChartCell {
  LTTStructure structure;
  bool boxed = false;
};

struct ChartColumn {
  LabeledGraph determining_sw;
  std::vector<ChartCell> cells;
};

struct LTTChart {
  int rank = 0;
  PIWGraph graph;
  std::vector<ChartColumn> columns;

  int cell_count() const;
  int boxed_count() const;
};

LTTChart build_chart(const PIWGraph& g, int rank);

// AM diagram: admissible labeled structures joined by admissible triples,
// trimmed to the union of the maximal strongly connected subgraphs.
struct AMDiagram {
  int rank = 0;
  PIWGraph graph;
  std::vector<LTTStructure> nodes;
  struct Edge {
    int source = 0;
    int dest = 0;
    MoveKind kind = MoveKind::Extension;
    NielsenGen gen;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> components;  // node sets of the SCCs kept

  bool empty() const { return nodes.empty(); }
  int component_of(int node) const;
  // Number of components up to EPP relabeling (by canonical signature).
  int epp_component_classes() const;
};

AMDiagram build_amd(const PIWGraph& g, int rank);

// A component has irreducibility potential when every edge pair labels the
// red vertex of some node.
bool irreducibility_potential(const AMDiagram& d,
                              const std::vector<int>& component);

// Graph building tracker: H_j = image of H_{j-1} under the j-th direction
// map, plus the red edge the j-th generator creates.
std::vector<std::set<Turn>> graph_building_trace(const Composition& comp);
bool graph_built(const Composition& comp);

struct SearchBudget {
  int loop_len = 64;                 // generators in a candidate loop
  int max_switch_cycle = 8;          // backbone switches (method III)
  int max_path_purples = 8;          // purple edges per construction path
  int max_paths_per_junction = 8;    // ranked insertions tried per junction
  long long max_candidates = 4000;   // composed candidates tested
  PnpBudget pnp;
};

struct LoopCandidate {
  Composition comp;    // closed: source structure equals dest structure
  RoseMap map;
  int rotationless_power = 1;
  std::string method;  // "III", "II" or "I"
};

struct SearchResult {
  enum class Status { Found, Unachievable, Inconclusive } status =
      Status::Inconclusive;
  std::vector<LoopCandidate> loops;
  std::string reason;  // for Unachievable / Inconclusive
  long long candidates_tested = 0;
};

// Loop search: method III (switch backbone plus construction compositions),
// then method II (recursive building), then bounded method I (cycle
// enumeration and splicing). Unachievable is only reported for the two
// structural reasons: no admissible structure at all, or no component with
// irreducibility potential.
SearchResult find_representative_loop(const PIWGraph& g, int rank,
                                      const SearchBudget& budget = {});

// Re-verification used on every emitted loop: closed chain, train track,
// 2r-1 fixed directions after the rotationless power, PF matrix, ideal
// Whitehead graph equal to the target, PNP-free.
struct LoopCheck {
  bool ok = false;
  bool pnp_inconclusive = false;
  std::string detail;
  int rotationless_power = 1;
};
LoopCheck verify_loop(const Composition& comp, const PIWGraph& target,
                      const PnpBudget& budget);

}  // namespace ttforge
