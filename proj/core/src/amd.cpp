#include "ttforge/amd.hpp"

#include "ttforge/pnp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace ttforge {

int LTTChart::cell_count() const {
  int c = 0;
  for (const auto& col : columns) c += static_cast<int>(col.cells.size());
  return c;
}

int LTTChart::boxed_count() const {
  int c = 0;
  for (const auto& col : columns)
    for (const auto& cell : col.cells)
      if (cell.boxed) ++c;
  return c;
}

namespace {

// All distinct labeled graphs obtained by assigning `labels` bijectively to
// the vertices of g.
std::vector<LabeledGraph> all_labelings(const PIWGraph& g,
                                        std::vector<Dir> labels) {
  std::sort(labels.begin(), labels.end(),
            [](Dir a, Dir b) { return slot(a) < slot(b); });
  std::set<LabeledGraph> seen;
  std::vector<LabeledGraph> out;
  do {
    LabeledGraph lg;
    for (Dir d : labels) lg.add_vertex(d);
    for (auto [i, j] : g.edge_list()) lg.add_edge(labels[i], labels[j]);
    if (seen.insert(lg).second) out.push_back(lg);
  } while (std::next_permutation(labels.begin(), labels.end(),
                                 [](Dir a, Dir b) { return slot(a) < slot(b); }));
  return out;
}

// Number of inverse-pair edges with a valence-one endpoint.
int valence_one_pair_edges(const LabeledGraph& g) {
  int c = 0;
  for (const Turn& t : g.edges)
    if (t.b == rev(t.a) && (g.valence(t.a) == 1 || g.valence(t.b) == 1)) ++c;
  return c;
}

}  // namespace

LTTChart build_chart(const PIWGraph& g, int rank) {
  if (!g.loop_free_type_star(rank))
    throw WordError("chart needs a connected loop-free graph on 2r-1 vertices");
  LTTChart chart;
  chart.rank = rank;
  chart.graph = g;

  // Purple labels: both directions of edges 1..r-1 plus the positive top
  // edge; the red free vertex is its inverse.
  std::vector<Dir> labels;
  for (int e = 1; e < rank; ++e) {
    labels.push_back(e);
    labels.push_back(rev(e));
  }
  labels.push_back(rank);
  const Dir red = rev(rank);

  std::set<LabeledGraph> columns_seen;
  for (const LabeledGraph& lg : all_labelings(g, labels)) {
    if (valence_one_pair_edges(lg) >= 2) continue;
    LabeledGraph canon = epp_canonical(lg, rank, rank);
    if (!columns_seen.insert(canon).second) continue;

    ChartColumn col;
    col.determining_sw = canon;
    for (Dir attach : canon.vertices) {
      LTTStructure s;
      s.rank = rank;
      s.red_vertex = red;
      s.red_edge = Turn(red, attach);
      s.purple_edges = canon.edges;
      if (!validate(s, ValidationMode::TypeStar).ok()) continue;
      col.cells.push_back({s, is_birecurrent(s)});
    }
    chart.columns.push_back(std::move(col));
  }
  std::sort(chart.columns.begin(), chart.columns.end(),
            [](const ChartColumn& a, const ChartColumn& b) {
              return a.determining_sw < b.determining_sw;
            });
  return chart;
}

int AMDiagram::component_of(int node) const {
  for (std::size_t c = 0; c < components.size(); ++c)
    for (int v : components[c])
      if (v == node) return static_cast<int>(c);
  return -1;
}

int AMDiagram::epp_component_classes() const {
  std::set<std::vector<std::string>> sigs;
  for (const auto& comp : components) {
    std::vector<std::string> sig;
    for (int v : comp) sig.push_back(epp_canonical_structure(nodes[v]).str());
    std::sort(sig.begin(), sig.end());
    sigs.insert(std::move(sig));
  }
  return static_cast<int>(sigs.size());
}

AMDiagram build_amd(const PIWGraph& g, int rank) {
  AMDiagram d;
  d.rank = rank;
  d.graph = g;

  // Every admissible fully labeled structure: a red direction, a labeling of
  // the remaining 2r-1 directions by the graph, and an attachment.
  std::vector<LTTStructure> nodes;
  std::map<LTTStructure, int> index;
  for (int s = 0; s < 2 * rank; ++s) {
    Dir red = dir_from_slot(s);
    std::vector<Dir> labels;
    for (int t = 0; t < 2 * rank; ++t)
      if (t != s) labels.push_back(dir_from_slot(t));
    for (const LabeledGraph& lg : all_labelings(g, labels)) {
      for (Dir attach : lg.vertices) {
        LTTStructure st;
        st.rank = rank;
        st.red_vertex = red;
        st.red_edge = Turn(red, attach);
        st.purple_edges = lg.edges;
        if (!validate(st, ValidationMode::TypeStar).ok()) continue;
        if (!is_birecurrent(st)) continue;
        if (!index.count(st)) {
          index[st] = static_cast<int>(nodes.size());
          nodes.push_back(st);
        }
      }
    }
  }

  std::vector<AMDiagram::Edge> edges;
  std::vector<std::vector<int>> succ(nodes.size());
  for (std::size_t dest = 0; dest < nodes.size(); ++dest) {
    for (const GeneratorTriple& t : enumerate_ingoing(nodes[dest])) {
      auto it = index.find(t.source);
      if (it == index.end()) continue;  // source realizes a different class
      AMDiagram::Edge e;
      e.source = it->second;
      e.dest = static_cast<int>(dest);
      e.kind = t.kind;
      e.gen = t.gen;
      succ[e.source].push_back(static_cast<int>(edges.size()));
      edges.push_back(e);
    }
  }

  // Tarjan SCC over nodes.
  const int n = static_cast<int>(nodes.size());
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onstack(n, false);
  std::vector<int> stack;
  int next = 0, ncomp = 0;
  struct Frame { int v; std::size_t child; };
  for (int root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = next++;
    stack.push_back(root);
    onstack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < succ[f.v].size()) {
        int w = edges[succ[f.v][f.child++]].dest;
        if (idx[w] == -1) {
          idx[w] = low[w] = next++;
          stack.push_back(w);
          onstack[w] = true;
          frames.push_back({w, 0});
        } else if (onstack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        if (low[f.v] == idx[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            onstack[w] = false;
            comp[w] = ncomp;
            if (w == f.v) break;
          }
          ++ncomp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  // Keep SCCs with an internal edge (size > 1 or a self loop).
  std::vector<int> comp_size(ncomp, 0);
  for (int v = 0; v < n; ++v) ++comp_size[comp[v]];
  std::vector<bool> keep(ncomp, false);
  for (const auto& e : edges) {
    if (comp[e.source] == comp[e.dest] &&
        (comp_size[comp[e.source]] > 1 || e.source == e.dest))
      keep[comp[e.source]] = true;
  }

  std::vector<int> remap(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!keep[comp[v]]) continue;
    remap[v] = static_cast<int>(d.nodes.size());
    d.nodes.push_back(nodes[v]);
  }
  std::map<int, std::vector<int>> comps;
  for (int v = 0; v < n; ++v)
    if (remap[v] >= 0) comps[comp[v]].push_back(remap[v]);
  for (auto& [c, vs] : comps) d.components.push_back(vs);
  for (const auto& e : edges)
    if (remap[e.source] >= 0 && remap[e.dest] >= 0 &&
        comp[e.source] == comp[e.dest])
      d.edges.push_back({remap[e.source], remap[e.dest], e.kind, e.gen});
  return d;
}

bool irreducibility_potential(const AMDiagram& d,
                              const std::vector<int>& component) {
  std::set<int> covered;
  for (int v : component) covered.insert(edge_index(d.nodes[v].red_vertex));
  return static_cast<int>(covered.size()) == d.rank;
}

std::vector<std::set<Turn>> graph_building_trace(const Composition& comp) {
  std::vector<std::set<Turn>> trace;
  std::set<Turn> h;
  for (std::size_t j = 0; j < comp.triples.size(); ++j) {
    DirectionMap dm =
        DirectionMap::of(gen_to_rosemap(comp.triples[j].gen, comp.rank()));
    std::set<Turn> next;
    for (const Turn& t : h) next.insert(dm.map_turn(t));
    next.insert(comp.structures[j + 1].red_edge);
    h = std::move(next);
    trace.push_back(h);
  }
  return trace;
}

bool graph_built(const Composition& comp) {
  auto trace = graph_building_trace(comp);
  if (trace.empty()) return false;
  const std::set<Turn>& built = trace.back();
  for (const Turn& t : comp.dest().purple_edges)
    if (!built.count(t)) return false;
  return true;
}

LoopCheck verify_loop(const Composition& comp, const PIWGraph& target,
                      const PnpBudget& budget) {
  LoopCheck c;
  if (comp.triples.empty() || !(comp.source() == comp.dest())) {
    c.detail = "composition does not close up";
    return c;
  }
  RoseMap g = comp.composed_map();
  if (auto w = train_track_obstruction(g)) {
    c.detail = "not a train track map: " + w->turn.str();
    return c;
  }
  GateStructure gs = gates(g);
  if (static_cast<int>(gs.gate_count()) != 2 * g.rank() - 1) {
    c.detail = "gate count " + std::to_string(gs.gate_count());
    return c;
  }
  auto [p, gp] = [&]() -> std::pair<int, RoseMap> {
    DirectionMap dm = DirectionMap::of(g);
    long long lcm = 1;
    for (int s = 0; s < 2 * g.rank(); ++s) {
      Dir x = dir_from_slot(s), y = x;
      for (int k = 1; k <= 2 * g.rank(); ++k) {
        y = dm(y);
        if (y == x) { lcm = std::lcm(lcm, (long long)k); break; }
      }
    }
    if (lcm > 4) return {static_cast<int>(lcm), g};  // caller rejects below
    return {static_cast<int>(lcm), power(g, static_cast<int>(lcm))};
  }();
  if (p > 4) {
    c.detail = "rotationless power " + std::to_string(p) + " too large";
    return c;
  }
  c.rotationless_power = p;
  GateStructure gsp = gates(gp);
  if (static_cast<int>(gsp.fixed.size()) != 2 * g.rank() - 1) {
    c.detail = "fixed directions " + std::to_string(gsp.fixed.size());
    return c;
  }
  BuildResult br = build_ltt(gp);
  if (!br.ok()) {
    c.detail = "structure: " + br.error;
    return c;
  }
  if (!are_isomorphic(PIWGraph::of(br.structure->pi()), target)) {
    c.detail = "ideal Whitehead graph class differs from the target";
    return c;
  }
  if (!is_primitive(TransitionMatrix(g))) {
    c.detail = "transition matrix not Perron-Frobenius";
    return c;
  }
  PnpVerdict v = find_ipnps(comp.gens(), g.rank(), budget);
  if (v.kind == PnpVerdict::Kind::Found) {
    c.detail = "periodic Nielsen path found";
    return c;
  }
  if (v.kind == PnpVerdict::Kind::DepthExceeded) {
    c.pnp_inconclusive = true;
    c.detail = "PNP search budget exhausted";
    return c;
  }
  c.ok = true;
  return c;
}

namespace {

struct DiagramIndex {
  const AMDiagram& d;
  std::map<LTTStructure, int> node_of;
  std::vector<std::vector<int>> out_edges;  // edge ids per source node

  explicit DiagramIndex(const AMDiagram& diagram) : d(diagram) {
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
      node_of[d.nodes[i]] = static_cast<int>(i);
    out_edges.assign(d.nodes.size(), {});
    for (std::size_t e = 0; e < d.edges.size(); ++e)
      out_edges[d.edges[e].source].push_back(static_cast<int>(e));
  }
};

// Rebuild the full triple for a diagram edge.
GeneratorTriple edge_triple(const AMDiagram& d, const AMDiagram::Edge& e) {
  const LTTStructure& dest = d.nodes[e.dest];
  Dir da = dest.twice_achieved();
  for (const Turn& det : dest.purple_edges) {
    if (!det.contains(da)) continue;
    MoveResult r = e.kind == MoveKind::Extension
                       ? potential_extension(dest, det)
                       : potential_switch(dest, det);
    if (r.ok() && r.triple->source == d.nodes[e.source]) return *r.triple;
  }
  throw WordError("diagram edge lost its determining edge");
}

// Append `piece` (whose source equals the current dest of chain) to chain.
void append_piece(Composition& chain, const Composition& piece) {
  if (chain.structures.empty()) {
    chain = piece;
    return;
  }
  if (!(chain.dest() == piece.source()))
    throw WordError("composition pieces do not chain");
  for (std::size_t i = 0; i < piece.triples.size(); ++i) {
    chain.structures.push_back(piece.structures[i + 1]);
    chain.triples.push_back(piece.triples[i]);
  }
}

Composition single_move(const GeneratorTriple& t) {
  Composition c;
  c.structures = {t.source, t.dest};
  c.triples = {t};
  return c;
}

// Closed extension loops at a node: purified construction compositions whose
// source returns to the node, ranked by built-edge coverage.
std::vector<Composition> insertion_loops(const LTTStructure& node,
                                         const SearchBudget& budget) {
  std::vector<Composition> loops;
  Subgraph sub = first_building_subgraph(node);
  for (const SmoothWalk& path :
       potential_construction_paths(node, sub, budget.max_path_purples)) {
    CompositionResult r = construction_composition_from_path(node, path);
    if (!r.ok()) continue;
    if (!(r.composition->source() == node)) continue;
    loops.push_back(std::move(*r.composition));
    if (static_cast<int>(loops.size()) >= 4 * budget.max_paths_per_junction)
      break;
  }
  std::sort(loops.begin(), loops.end(),
            [](const Composition& a, const Composition& b) {
              std::set<Turn> ea, eb;
              for (const auto& t : a.triples) ea.insert(t.dest.red_edge);
              for (const auto& t : b.triples) eb.insert(t.dest.red_edge);
              if (ea.size() != eb.size()) return ea.size() > eb.size();
              return a.triples.size() < b.triples.size();
            });
  if (static_cast<int>(loops.size()) > budget.max_paths_per_junction)
    loops.resize(budget.max_paths_per_junction);
  return loops;
}

struct SearchDriver {
  const AMDiagram& d;
  const PIWGraph& target;
  const SearchBudget& budget;
  DiagramIndex index;
  SearchResult& result;
  bool done = false;

  SearchDriver(const AMDiagram& diagram, const PIWGraph& tgt,
               const SearchBudget& b, SearchResult& res)
      : d(diagram), target(tgt), budget(b), index(diagram), result(res) {}

  bool try_candidate(const Composition& comp, const char* method) {
    if (done) return true;
    if (static_cast<int>(comp.triples.size()) > budget.loop_len) return false;
    if (result.candidates_tested >= budget.max_candidates) return false;
    ++result.candidates_tested;
    if (!graph_built(comp)) return false;
    LoopCheck c = verify_loop(comp, target, budget.pnp);
    if (c.ok) {
      LoopCandidate cand{comp, comp.composed_map(), c.rotationless_power,
                         method};
      result.loops.push_back(std::move(cand));
      done = true;
      return true;
    }
    return false;
  }

  // Switch cycles through the component, smallest start node first.
  std::vector<std::vector<int>> switch_cycles(const std::vector<int>& comp) {
    std::set<int> in_comp(comp.begin(), comp.end());
    std::vector<std::vector<int>> cycles;  // as edge id lists
    std::vector<int> stack_edges;
    std::function<void(int, int, std::set<int>&)> dfs =
        [&](int start, int v, std::set<int>& visited) {
          if (cycles.size() > 4000) return;
          if (static_cast<int>(stack_edges.size()) >= budget.max_switch_cycle)
            return;
          for (int eid : index.out_edges[v]) {
            const auto& e = d.edges[eid];
            if (e.kind != MoveKind::Switch) continue;
            if (!in_comp.count(e.dest)) continue;
            if (e.dest == start && !stack_edges.empty()) {
              stack_edges.push_back(eid);
              cycles.push_back(stack_edges);
              stack_edges.pop_back();
              continue;
            }
            if (e.dest < start || visited.count(e.dest)) continue;
            visited.insert(e.dest);
            stack_edges.push_back(eid);
            dfs(start, e.dest, visited);
            stack_edges.pop_back();
            visited.erase(e.dest);
          }
        };
    for (int v : comp) {
      std::set<int> visited{v};
      dfs(v, v, visited);
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
    return cycles;
  }

  bool cycle_covers_pairs(const std::vector<int>& cycle_edges) {
    std::set<int> covered;
    for (int eid : cycle_edges)
      covered.insert(edge_index(d.nodes[d.edges[eid].dest].red_vertex));
    return static_cast<int>(covered.size()) == d.rank;
  }

  // Method III: a switch backbone with construction composition insertions.
  void method_three(const std::vector<int>& comp) {
    auto cycles = switch_cycles(comp);
    for (const auto& cyc : cycles) {
      if (done || result.candidates_tested >= budget.max_candidates) return;
      if (!cycle_covers_pairs(cyc)) continue;

      std::vector<GeneratorTriple> backbone;
      for (int eid : cyc) backbone.push_back(edge_triple(d, d.edges[eid]));

      // Insertion menus per junction (at the source of each backbone move).
      std::vector<std::vector<Composition>> menus;
      for (const auto& t : backbone) {
        auto menu = insertion_loops(t.source, budget);
        menus.push_back(std::move(menu));
      }

      // Depth-first over insertion choices, empty insertion last.
      std::function<void(std::size_t, Composition)> choose =
          [&](std::size_t j, Composition chain) {
            if (done || result.candidates_tested >= budget.max_candidates)
              return;
            if (j == backbone.size()) {
              try_candidate(chain, "III");
              return;
            }
            for (const Composition& ins : menus[j]) {
              Composition next = chain;
              if (next.structures.empty())
                next.structures.push_back(backbone[j].source);
              append_piece(next, ins);
              append_piece(next, single_move(backbone[j]));
              choose(j + 1, std::move(next));
              if (done) return;
            }
            Composition next = chain;
            if (next.structures.empty())
              next.structures.push_back(backbone[j].source);
            append_piece(next, single_move(backbone[j]));
            choose(j + 1, std::move(next));
          };
      choose(0, Composition{});
    }
  }

  // Method II: grow the loop top-down; close with a path through the
  // diagram when the target graph has been built.
  void method_two(const std::vector<int>& comp) {
    std::set<int> in_comp(comp.begin(), comp.end());
    for (int top : comp) {
      if (done || result.candidates_tested >= budget.max_candidates) return;
      // Greedy: insertion loop at top, then switches walking back to top.
      for (const Composition& ins : insertion_loops(d.nodes[top], budget)) {
        if (done) return;
        // Breadth-first over switch moves returning to `top`.
        struct State { int node; std::vector<int> edges; };
        std::deque<State> q{{top, {}}};
        int guard = 0;
        while (!q.empty() && guard++ < 2000) {
          State s = q.front();
          q.pop_front();
          if (static_cast<int>(s.edges.size()) > budget.max_switch_cycle)
            continue;
          if (s.node == top && !s.edges.empty()) {
            Composition chain;
            chain.structures.push_back(d.nodes[top]);
            for (auto it = s.edges.rbegin(); it != s.edges.rend(); ++it)
              append_piece(chain, single_move(edge_triple(d, d.edges[*it])));
            append_piece(chain, ins);
            try_candidate(chain, "II");
            if (done) return;
            continue;
          }
          for (int eid : index.out_edges[s.node]) {
            const auto& e = d.edges[eid];
            if (e.kind != MoveKind::Switch || !in_comp.count(e.dest)) continue;
            if (static_cast<int>(s.edges.size()) >= budget.max_switch_cycle)
              continue;
            State ns = s;
            ns.node = e.dest;
            ns.edges.push_back(eid);
            q.push_back(std::move(ns));
          }
        }
      }
    }
  }

  // Method I: elementary cycles in the diagram, then splices of two cycles
  // sharing a node.
  void method_one(const std::vector<int>& comp) {
    std::set<int> in_comp(comp.begin(), comp.end());
    std::vector<std::vector<int>> cycles;
    std::vector<int> stack_edges;
    std::function<void(int, int, std::set<int>&)> dfs =
        [&](int start, int v, std::set<int>& visited) {
          if (cycles.size() > 3000) return;
          if (static_cast<int>(stack_edges.size()) >= 12) return;
          for (int eid : index.out_edges[v]) {
            const auto& e = d.edges[eid];
            if (!in_comp.count(e.dest)) continue;
            if (e.dest == start && !stack_edges.empty()) {
              stack_edges.push_back(eid);
              cycles.push_back(stack_edges);
              stack_edges.pop_back();
              continue;
            }
            if (e.dest < start || visited.count(e.dest)) continue;
            visited.insert(e.dest);
            stack_edges.push_back(eid);
            dfs(start, e.dest, visited);
            stack_edges.pop_back();
            visited.erase(e.dest);
          }
        };
    for (int v : comp) {
      std::set<int> visited{v};
      dfs(v, v, visited);
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });

    auto to_comp = [&](const std::vector<int>& cyc, int rotate_to) {
      // Rotate the cycle to start at node rotate_to (-1: leave as is).
      std::vector<int> es = cyc;
      if (rotate_to >= 0) {
        for (std::size_t r = 0; r < es.size(); ++r) {
          if (d.edges[es.front()].source == rotate_to) break;
          std::rotate(es.begin(), es.begin() + 1, es.end());
        }
      }
      Composition chain;
      chain.structures.push_back(d.nodes[d.edges[es.front()].source]);
      for (int eid : es)
        append_piece(chain, single_move(edge_triple(d, d.edges[eid])));
      return chain;
    };

    for (const auto& cyc : cycles) {
      if (done || result.candidates_tested >= budget.max_candidates) return;
      try_candidate(to_comp(cyc, -1), "I");
    }
    // Splices.
    for (std::size_t i = 0; i < cycles.size() && !done; ++i) {
      for (std::size_t j = i; j < cycles.size() && !done; ++j) {
        if (result.candidates_tested >= budget.max_candidates) return;
        // Find a shared node.
        std::set<int> nodes_i;
        for (int eid : cycles[i]) nodes_i.insert(d.edges[eid].source);
        int shared = -1;
        for (int eid : cycles[j])
          if (nodes_i.count(d.edges[eid].source)) {
            shared = d.edges[eid].source;
            break;
          }
        if (shared < 0) continue;
        Composition a = to_comp(cycles[i], shared);
        Composition b = to_comp(cycles[j], shared);
        append_piece(a, b);
        try_candidate(a, "I");
      }
    }
  }
};

}  // namespace

SearchResult find_representative_loop(const PIWGraph& g, int rank,
                                      const SearchBudget& budget) {
  SearchResult res;
  AMDiagram d = build_amd(g, rank);
  if (d.empty()) {
    res.status = SearchResult::Status::Unachievable;
    res.reason = "no admissible structure is birecurrent";
    return res;
  }
  std::vector<std::vector<int>> good;
  for (const auto& comp : d.components)
    if (irreducibility_potential(d, comp)) good.push_back(comp);
  if (good.empty()) {
    res.status = SearchResult::Status::Unachievable;
    res.reason = "no component has irreducibility potential";
    return res;
  }

  SearchDriver driver(d, g, budget, res);
  for (const auto& comp : good) {
    driver.method_three(comp);
    if (driver.done) break;
    driver.method_two(comp);
    if (driver.done) break;
    driver.method_one(comp);
    if (driver.done) break;
  }
  if (!res.loops.empty()) {
    res.status = SearchResult::Status::Found;
  } else {
    res.status = SearchResult::Status::Inconclusive;
    res.reason = "budget exhausted without a verified loop";
  }
  return res;
}

}  // namespace ttforge
