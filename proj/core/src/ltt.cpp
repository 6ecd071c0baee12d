#include "ttforge/ltt.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace ttforge {

std::vector<Turn> LTTStructure::colored_edges() const {
  std::vector<Turn> out(purple_edges.begin(), purple_edges.end());
  out.push_back(red_edge);
  return out;
}

int LTTStructure::colored_valence(Dir d) const {
  int v = red_edge.contains(d) ? 1 : 0;
  for (const Turn& t : purple_edges)
    if (t.contains(d)) ++v;
  return v;
}

LabeledGraph LTTStructure::pi() const {
  LabeledGraph g;
  for (int s = 0; s < 2 * rank; ++s) {
    Dir d = dir_from_slot(s);
    if (purple_vertex(d)) g.add_vertex(d);
  }
  for (const Turn& t : purple_edges) g.add_edge(t.a, t.b);
  return g;
}

std::string LTTStructure::str() const {
  std::ostringstream os;
  os << "red " << dir_to_char(red_vertex) << " edge " << red_edge.str()
     << " purple {";
  bool first = true;
  for (const Turn& t : purple_edges) {
    if (!first) os << ",";
    first = false;
    os << t.str();
  }
  os << "}";
  return os.str();
}

std::string ValidationReport::str() const {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

ValidationReport validate(const LTTStructure& g, ValidationMode mode) {
  ValidationReport r;
  auto fail = [&](const std::string& m) { r.violations.push_back(m); };

  if (g.rank < 1 || g.rank > kMaxRank) {
    fail("rank out of range");
    return r;
  }
  if (!valid_dir(g.red_vertex, g.rank)) {
    fail("LTT1: red vertex is not a direction of the rose");
    return r;
  }
  if (g.red_edge.degenerate())
    fail("STTG2: red edge is a loop");
  if (!valid_dir(g.red_edge.a, g.rank) || !valid_dir(g.red_edge.b, g.rank))
    fail("LTT2: red edge endpoint outside the direction set");
  if (!g.red_edge.contains(g.red_vertex))
    fail("LTT4: red edge must contain the red vertex");
  if (g.red_edge.contains(g.red_vertex) && !g.red_edge.degenerate() &&
      !g.purple_vertex(g.red_edge.other(g.red_vertex)))
    fail("LTT4: both red edge endpoints are red");

  for (const Turn& t : g.purple_edges) {
    if (t.degenerate()) fail("STTG2: purple loop edge " + t.str());
    if (!valid_dir(t.a, g.rank) || !valid_dir(t.b, g.rank))
      fail("LTT2: purple edge endpoint outside the direction set");
    if (t.contains(g.red_vertex))
      fail("LTT4: purple edge " + t.str() + " touches the red vertex");
    if (t == g.red_edge)
      fail("LTT3: red edge duplicated as a purple edge");
  }

  // STTG3: every vertex meets a black edge (automatic) and a colored edge.
  for (int s = 0; s < 2 * g.rank; ++s) {
    Dir d = dir_from_slot(s);
    if (g.colored_valence(d) == 0)
      fail(std::string("STTG3: direction ") + dir_to_char(d) +
           " has no colored edge");
  }

  if (g.green_turn) {
    if (!g.green_turn->contains(g.red_vertex))
      fail("LTT6: green turn must contain the red vertex");
    for (const Turn& t : g.purple_edges)
      if (t == *g.green_turn) fail("LTT7: green turn duplicates a purple edge");
    if (*g.green_turn == g.red_edge)
      fail("LTT7: green turn duplicates the red edge");
  }

  if (mode == ValidationMode::Abstract) return r;

  // Type (*): LTT(*)1/2 hold by representation (one red vertex, one red
  // edge); check what the representation does not force.
  LabeledGraph pi = g.pi();
  if (static_cast<int>(pi.vertices.size()) != 2 * g.rank - 1)
    fail("LTT(*)3: purple graph must have 2r-1 vertices");
  if (!pi.connected())
    fail("LTT(*)3: purple graph is not connected");

  // LTT(*)4: no valence-one endpoint on a colored edge joining an inverse
  // pair, in PI union the red edge.
  auto colored_valence_in_union = [&](Dir d) { return g.colored_valence(d); };
  for (const Turn& t : g.colored_edges()) {
    if (t.b == rev(t.a)) {
      if (colored_valence_in_union(t.a) == 1 ||
          colored_valence_in_union(t.b) == 1)
        fail("LTT(*)4: inverse pair edge " + t.str() +
             " has a valence-one endpoint");
    }
  }
  return r;
}

BuildResult build_ltt(const RoseMap& g) {
  if (auto w = train_track_obstruction(g))
    return {std::nullopt, "not a train track map: " + w->turn.str()};
  GateStructure gs = gates(g);
  if (gs.periodic.size() != gs.fixed.size())
    return {std::nullopt, "map is not rotationless"};

  std::set<Dir> periodic(gs.periodic.begin(), gs.periodic.end());
  std::vector<Dir> nonperiodic;
  for (int s = 0; s < 2 * g.rank(); ++s) {
    Dir d = dir_from_slot(s);
    if (!periodic.count(d)) nonperiodic.push_back(d);
  }
  if (nonperiodic.size() != 1)
    return {std::nullopt, "expected one nonperiodic direction, found " +
                              std::to_string(nonperiodic.size())};

  LTTStructure s;
  s.rank = g.rank();
  s.red_vertex = nonperiodic[0];

  std::vector<Turn> red;
  for (const Turn& t : taken_turn_closure(g)) {
    if (t.contains(s.red_vertex))
      red.push_back(t);
    else
      s.purple_edges.insert(t);
  }
  if (red.size() != 1)
    return {std::nullopt, "expected one red edge, found " +
                              std::to_string(red.size())};
  s.red_edge = red[0];

  ValidationReport v = validate(s, ValidationMode::TypeStar);
  if (!v.ok()) return {std::nullopt, "invalid structure: " + v.str()};
  return {s, ""};
}

namespace {

// Oriented edge of the smooth-transition digraph.
struct OEdge {
  Dir from = 0;
  Dir to = 0;
  bool black = false;
  int edge_id = 0;  // underlying undirected edge

  bool operator==(const OEdge&) const = default;
  auto operator<=>(const OEdge&) const = default;
};

struct TransitionGraph {
  std::vector<OEdge> nodes;
  std::vector<std::vector<int>> succ;
  int undirected_count = 0;
};

TransitionGraph transition_graph(const LTTStructure& g) {
  TransitionGraph tg;
  int edge_id = 0;
  auto add_pair = [&](Dir x, Dir y, bool black) {
    tg.nodes.push_back({x, y, black, edge_id});
    tg.nodes.push_back({y, x, black, edge_id});
    ++edge_id;
  };
  for (const Turn& t : g.purple_edges) add_pair(t.a, t.b, false);
  add_pair(g.red_edge.a, g.red_edge.b, false);
  for (int e = 1; e <= g.rank; ++e) add_pair(e, rev(e), true);
  tg.undirected_count = edge_id;

  tg.succ.assign(tg.nodes.size(), {});
  for (std::size_t i = 0; i < tg.nodes.size(); ++i)
    for (std::size_t j = 0; j < tg.nodes.size(); ++j)
      if (tg.nodes[i].to == tg.nodes[j].from &&
          tg.nodes[i].black != tg.nodes[j].black)
        tg.succ[i].push_back(static_cast<int>(j));
  return tg;
}

// Tarjan SCC.
std::vector<int> scc_of(const TransitionGraph& tg) {
  int n = static_cast<int>(tg.nodes.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onstack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  // Iterative Tarjan to keep stack depth bounded.
  struct Frame { int v; std::size_t child; };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    onstack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < tg.succ[f.v].size()) {
        int w = tg.succ[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          onstack[w] = true;
          frames.push_back({w, 0});
        } else if (onstack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            onstack[w] = false;
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return comp;
}

// Component covering every undirected edge, if any.
std::optional<int> covering_component(const TransitionGraph& tg,
                                      const std::vector<int>& comp) {
  std::map<int, std::set<int>> cover;
  for (std::size_t i = 0; i < tg.nodes.size(); ++i)
    cover[comp[i]].insert(tg.nodes[i].edge_id);
  for (auto& [c, edges] : cover)
    if (static_cast<int>(edges.size()) == tg.undirected_count) return c;
  return std::nullopt;
}

}  // namespace

bool is_birecurrent(const LTTStructure& g) {
  TransitionGraph tg = transition_graph(g);
  std::vector<int> comp = scc_of(tg);
  return covering_component(tg, comp).has_value();
}

std::optional<SmoothWalk> smooth_line_witness(const LTTStructure& g) {
  TransitionGraph tg = transition_graph(g);
  std::vector<int> comp = scc_of(tg);
  std::optional<int> c = covering_component(tg, comp);
  if (!c) return std::nullopt;

  std::vector<int> members;
  for (std::size_t i = 0; i < tg.nodes.size(); ++i)
    if (comp[i] == *c) members.push_back(static_cast<int>(i));

  // Stitch a closed walk through every member node: BFS inside the
  // component from the current node to the next unvisited one, then back to
  // the start.
  auto path_to = [&](int from, auto accept) -> std::vector<int> {
    std::map<int, int> parent;
    std::deque<int> q{from};
    parent[from] = from;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (accept(v) && v != from) {
        std::vector<int> path{v};
        while (v != from) {
          v = parent[v];
          path.push_back(v);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      for (int w : tg.succ[v])
        if (comp[w] == *c && !parent.count(w)) {
          parent[w] = v;
          q.push_back(w);
        }
    }
    return {};
  };

  std::set<int> todo_edges;
  for (int m : members) todo_edges.insert(tg.nodes[m].edge_id);
  std::vector<int> walk{members.front()};
  todo_edges.erase(tg.nodes[members.front()].edge_id);
  while (!todo_edges.empty()) {
    auto seg = path_to(walk.back(), [&](int v) {
      return todo_edges.count(tg.nodes[v].edge_id) > 0;
    });
    if (seg.empty()) return std::nullopt;  // cannot happen inside one SCC
    for (std::size_t i = 1; i < seg.size(); ++i) {
      walk.push_back(seg[i]);
      todo_edges.erase(tg.nodes[seg[i]].edge_id);
    }
  }
  // Close up: extend until the final node has an arc back to the first.
  int start = walk.front();
  auto arcs_to_start = [&](int v) {
    for (int w : tg.succ[v])
      if (w == start) return true;
    return false;
  };
  if (!arcs_to_start(walk.back())) {
    auto back = path_to(walk.back(), arcs_to_start);
    if (back.empty()) return std::nullopt;  // cannot happen inside one SCC
    for (std::size_t i = 1; i < back.size(); ++i) walk.push_back(back[i]);
  }

  SmoothWalk w;
  for (int idx : walk) {
    w.vertices.push_back(tg.nodes[idx].from);
    w.black.push_back(tg.nodes[idx].black);
  }
  w.vertices.push_back(tg.nodes[start].from);  // closed
  return w;
}

bool walk_is_smooth(const LTTStructure& g, const SmoothWalk& w) {
  if (w.vertices.size() != w.black.size() + 1) return false;
  for (std::size_t i = 0; i < w.black.size(); ++i) {
    Dir x = w.vertices[i], y = w.vertices[i + 1];
    if (w.black[i]) {
      if (y != rev(x)) return false;
    } else {
      Turn t(x, y);
      if (!(t == g.red_edge || g.purple_edges.count(t))) return false;
    }
    if (i > 0 && w.black[i] == w.black[i - 1]) return false;
  }
  bool closed = w.vertices.front() == w.vertices.back();
  if (closed && w.black.size() > 1 && w.black.front() == w.black.back())
    return false;
  return true;
}

std::string to_dot(const LTTStructure& g) {
  std::ostringstream os;
  os << "graph ltt {\n  node [shape=circle];\n";
  for (int s = 0; s < 2 * g.rank; ++s) {
    Dir d = dir_from_slot(s);
    os << "  \"" << dir_to_char(d) << "\" [color="
       << (d == g.red_vertex ? "red" : "purple") << "];\n";
  }
  for (int e = 1; e <= g.rank; ++e)
    os << "  \"" << dir_to_char(e) << "\" -- \"" << dir_to_char(rev(e))
       << "\" [color=black];\n";
  for (const Turn& t : g.purple_edges)
    os << "  \"" << dir_to_char(t.a) << "\" -- \"" << dir_to_char(t.b)
       << "\" [color=purple];\n";
  os << "  \"" << dir_to_char(g.red_edge.a) << "\" -- \""
     << dir_to_char(g.red_edge.b) << "\" [color=red];\n";
  if (g.green_turn)
    os << "  \"" << dir_to_char(g.green_turn->a) << "\" -- \""
       << dir_to_char(g.green_turn->b) << "\" [color=green,style=dashed];\n";
  os << "}\n";
  return os.str();
}

LTTStructure relabel(const LTTStructure& g, const EppMap& m) {
  LTTStructure out;
  out.rank = g.rank;
  out.red_vertex = m(g.red_vertex);
  out.red_edge = Turn(m(g.red_edge.a), m(g.red_edge.b));
  for (const Turn& t : g.purple_edges)
    out.purple_edges.insert(Turn(m(t.a), m(t.b)));
  if (g.green_turn)
    out.green_turn = Turn(m(g.green_turn->a), m(g.green_turn->b));
  return out;
}

LTTStructure epp_canonical_structure(const LTTStructure& g) {
  // Carry the red pair to edge r with the red direction on the negative
  // side, then minimize over the symmetries fixing that pair.
  int red_e = edge_index(g.red_vertex);
  EppMap carry;
  carry.peg.assign(g.rank, 0);
  for (int e = 1; e <= g.rank; ++e) carry.peg[e - 1] = e;
  carry.peg[red_e - 1] = positive(g.red_vertex) ? -g.rank : g.rank;
  carry.peg[g.rank - 1] = positive(g.red_vertex) ? -red_e : red_e;
  if (red_e == g.rank)
    carry.peg[g.rank - 1] = positive(g.red_vertex) ? -g.rank : g.rank;
  LTTStructure moved = relabel(g, carry);

  bool first = true;
  LTTStructure best;
  for (const EppMap& m : epp_symmetries(g.rank, g.rank)) {
    LTTStructure h = relabel(moved, m);
    if (first || h < best) {
      best = std::move(h);
      first = false;
    }
  }
  return best;
}

bool epp_isomorphic(const LTTStructure& a, const LTTStructure& b) {
  return epp_canonical_structure(a) == epp_canonical_structure(b);
}

}  // namespace ttforge
