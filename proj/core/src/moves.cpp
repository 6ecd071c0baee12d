#include "ttforge/moves.hpp"

#include <algorithm>
#include <deque>

namespace ttforge {

NielsenGen ingoing_generator(const LTTStructure& dest) {
  return NielsenGen{dest.red_vertex, rev(dest.attaching_vertex())};
}

namespace {

MoveResult admissibility_gate(GeneratorTriple t) {
  ValidationReport v = validate(t.source, ValidationMode::TypeStar);
  if (!v.ok()) return {std::nullopt, "source invalid: " + v.str()};
  if (!is_birecurrent(t.source))
    return {std::nullopt, "source not birecurrent"};
  return {std::move(t), ""};
}

}  // namespace

MoveResult potential_extension(const LTTStructure& dest, const Turn& det) {
  Dir da = dest.twice_achieved();
  if (!dest.purple_edges.count(det))
    return {std::nullopt, "determining edge is not purple in the destination"};
  if (!det.contains(da))
    return {std::nullopt,
            "determining edge misses the twice-achieved direction"};
  Dir far = det.other(da);
  if (far == rev(dest.red_vertex))
    return {std::nullopt,
            "forbidden endpoint: red edge would join an inverse pair"};

  GeneratorTriple t;
  t.gen = ingoing_generator(dest);
  t.dest = dest;
  t.kind = MoveKind::Extension;
  t.determining_edge = det;
  t.source.rank = dest.rank;
  t.source.red_vertex = dest.red_vertex;
  t.source.red_edge = Turn(dest.red_vertex, far);
  t.source.purple_edges = dest.purple_edges;
  return admissibility_gate(std::move(t));
}

MoveResult potential_switch(const LTTStructure& dest, const Turn& det) {
  Dir da = dest.twice_achieved();
  if (!dest.purple_edges.count(det))
    return {std::nullopt, "determining edge is not purple in the destination"};
  if (!det.contains(da))
    return {std::nullopt,
            "determining edge misses the twice-achieved direction"};
  Dir far = det.other(da);
  if (far == da)
    return {std::nullopt, "determining edge loops at the twice-achieved direction"};

  // The twice-achieved vertex takes over the unachieved label; the
  // twice-achieved direction itself goes red.
  auto move_label = [&](Dir d) { return d == da ? dest.red_vertex : d; };

  GeneratorTriple t;
  t.gen = ingoing_generator(dest);
  t.dest = dest;
  t.kind = MoveKind::Switch;
  t.determining_edge = det;
  t.source.rank = dest.rank;
  t.source.red_vertex = da;
  t.source.red_edge = Turn(da, move_label(far));
  for (const Turn& e : dest.purple_edges)
    t.source.purple_edges.insert(Turn(move_label(e.a), move_label(e.b)));
  return admissibility_gate(std::move(t));
}

std::vector<GeneratorTriple> enumerate_ingoing(const LTTStructure& dest) {
  std::vector<GeneratorTriple> out;
  Dir da = dest.twice_achieved();
  for (const Turn& e : dest.purple_edges) {
    if (!e.contains(da)) continue;
    if (MoveResult r = potential_extension(dest, e); r.ok())
      out.push_back(std::move(*r.triple));
    if (MoveResult r = potential_switch(dest, e); r.ok())
      out.push_back(std::move(*r.triple));
  }
  return out;
}

std::vector<NielsenGen> Composition::gens() const {
  std::vector<NielsenGen> out;
  out.reserve(triples.size());
  for (const GeneratorTriple& t : triples) out.push_back(t.gen);
  return out;
}

RoseMap Composition::composed_map() const {
  return compose_gens(gens(), rank());
}

CompositionResult construction_composition_from_path(const LTTStructure& dest,
                                                     const SmoothWalk& path) {
  const auto& v = path.vertices;
  const auto& b = path.black;
  if (v.size() < 3 || v.size() != b.size() + 1)
    return {std::nullopt, "path must start with the red edge and a black edge",
            -1};
  if (v[0] != dest.red_vertex || b[0] ||
      !(Turn(v[0], v[1]) == dest.red_edge))
    return {std::nullopt, "path must start with the red edge from the red vertex",
            -1};
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != (i % 2 == 1))
      return {std::nullopt, "path must alternate colored and black edges", -1};
    if (b[i] && v[i + 1] != rev(v[i]))
      return {std::nullopt, "black edge must join an inverse pair", -1};
  }
  if (!b.back())
    return {std::nullopt, "path must end with a black edge", -1};

  Composition comp;
  comp.structures.push_back(dest);
  LTTStructure cur = dest;
  int index = 0;
  // Purple edges sit at positions 2, 4, ... in the edge list.
  for (std::size_t i = 2; i < b.size(); i += 2) {
    Turn det(v[i], v[i + 1]);
    MoveResult r = potential_extension(cur, det);
    if (!r.ok())
      return {std::nullopt,
              "extension " + std::to_string(index) + " rejected: " + r.rejection,
              index};
    comp.structures.insert(comp.structures.begin(), r.triple->source);
    comp.triples.insert(comp.triples.begin(), std::move(*r.triple));
    cur = comp.structures.front();
    ++index;
  }
  return {std::move(comp), "", -1};
}

SmoothWalk construction_path(const Composition& comp) {
  for (const GeneratorTriple& t : comp.triples)
    if (t.kind != MoveKind::Extension)
      throw WordError("construction paths are defined for extension chains");
  SmoothWalk w;
  const LTTStructure& top = comp.dest();
  w.vertices.push_back(top.red_vertex);
  w.vertices.push_back(top.attaching_vertex());
  w.black.push_back(false);
  w.vertices.push_back(rev(top.attaching_vertex()));
  w.black.push_back(true);
  for (auto it = comp.triples.rbegin(); it != comp.triples.rend(); ++it) {
    Dir attach = it->source.attaching_vertex();
    w.vertices.push_back(attach);
    w.black.push_back(false);
    w.vertices.push_back(rev(attach));
    w.black.push_back(true);
  }
  return w;
}

namespace {

Subgraph full_subgraph(const LTTStructure& g) {
  Subgraph s;
  for (int i = 0; i < 2 * g.rank; ++i) s.vertices.insert(dir_from_slot(i));
  for (const Turn& t : g.purple_edges) s.colored.insert(t);
  s.colored.insert(g.red_edge);
  for (int e = 1; e <= g.rank; ++e) s.black_edges.insert(e);
  return s;
}

void remove_colored_at(Subgraph& s, Dir v) {
  for (auto it = s.colored.begin(); it != s.colored.end();)
    it = it->contains(v) ? s.colored.erase(it) : std::next(it);
}

// Shared first step: drop the unachieved pair's black edge, the reverse of
// the red vertex, and its purple star.
Subgraph prune_start(const LTTStructure& g) {
  Subgraph s = full_subgraph(g);
  s.black_edges.erase(edge_index(g.red_vertex));
  Dir bar_du = rev(g.red_vertex);
  s.vertices.erase(bar_du);
  for (auto it = s.colored.begin(); it != s.colored.end();) {
    bool purple = !(*it == g.red_edge);
    it = (purple && it->contains(bar_du)) ? s.colored.erase(it)
                                          : std::next(it);
  }
  return s;
}

}  // namespace

Subgraph construction_subgraph(const LTTStructure& g) {
  Subgraph s = prune_start(g);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Dir> isolated;
    for (Dir v : s.vertices) {
      bool in_colored = false;
      for (const Turn& t : s.colored)
        if (t.contains(v)) { in_colored = true; break; }
      if (!in_colored) isolated.push_back(v);
    }
    for (Dir a : isolated) {
      if (s.black_edges.erase(edge_index(a))) changed = true;
      std::size_t before = s.colored.size();
      remove_colored_at(s, rev(a));
      if (s.colored.size() != before) changed = true;
      s.vertices.erase(a);
    }
  }
  return s;
}

Subgraph first_building_subgraph(const LTTStructure& g) {
  Subgraph s = prune_start(g);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Dir> isolated;
    for (Dir v : s.vertices) {
      bool in_purple = false;
      for (const Turn& t : s.colored)
        if (!(t == g.red_edge) && t.contains(v)) { in_purple = true; break; }
      if (!in_purple && v != g.red_vertex) isolated.push_back(v);
    }
    for (Dir a : isolated) {
      if (s.black_edges.erase(edge_index(rev(a)))) changed = true;
      std::size_t before = s.colored.size();
      remove_colored_at(s, rev(a));
      if (s.colored.size() != before) changed = true;
      s.vertices.erase(a);
    }
  }
  return s;
}

std::vector<SmoothWalk> potential_construction_paths(const LTTStructure& g,
                                                     const Subgraph& sub,
                                                     int max_purple_edges) {
  std::vector<SmoothWalk> out;
  const std::size_t path_cap = 20000;

  SmoothWalk start;
  start.vertices = {g.red_vertex, g.attaching_vertex(),
                    rev(g.attaching_vertex())};
  start.black = {false, true};

  std::deque<std::pair<SmoothWalk, int>> queue{{start, 0}};
  while (!queue.empty() && out.size() < path_cap) {
    auto [w, purples] = queue.front();
    queue.pop_front();
    if (purples > 0) out.push_back(w);
    if (purples == max_purple_edges) continue;
    Dir cur = w.vertices.back();
    for (const Turn& t : sub.colored) {
      if (t == g.red_edge || !t.contains(cur)) continue;
      Dir far = t.other(cur);
      if (!sub.black_edges.count(edge_index(far))) continue;
      SmoothWalk nw = w;
      nw.vertices.push_back(far);
      nw.black.push_back(false);
      nw.vertices.push_back(rev(far));
      nw.black.push_back(true);
      queue.push_back({std::move(nw), purples + 1});
    }
  }
  return out;
}

SwitchPathResult switch_sequence_path(const Composition& seq) {
  const auto& ts = seq.triples;
  if (ts.empty()) return {std::nullopt, "empty sequence"};
  for (const GeneratorTriple& t : ts)
    if (t.kind != MoveKind::Switch)
      return {std::nullopt, "SS1: sequence contains a non-switch"};

  PIWGraph cls = PIWGraph::of(seq.structures.front().pi());
  for (const LTTStructure& s : seq.structures)
    if (!are_isomorphic(PIWGraph::of(s.pi()), cls))
      return {std::nullopt, "SS2: PI class changes along the sequence"};

  // SS3 distinctness: red vertices pairwise distinct among destinations, and
  // no later red vertex equals an earlier attaching vertex.
  const int m = static_cast<int>(ts.size());
  auto red_of = [&](int j) { return seq.structures[j].red_vertex; };    // 1-based dest
  auto attach_of = [&](int j) { return seq.structures[j].attaching_vertex(); };
  for (int nn = 2; nn <= m; ++nn)
    for (int l = 1; l < nn; ++l) {
      if (red_of(nn) == red_of(l))
        return {std::nullopt,
                "SS3: unachieved directions repeat (generators " +
                    std::to_string(l) + "," + std::to_string(nn) + ")"};
      if (red_of(nn) == attach_of(l))
        return {std::nullopt,
                "SS3: unachieved direction revisits an attaching vertex "
                "(generators " + std::to_string(l) + "," + std::to_string(nn) +
                    ")"};
    }

  const LTTStructure& top = seq.structures[m];
  SmoothWalk w;
  w.vertices.push_back(top.red_vertex);
  w.vertices.push_back(top.attaching_vertex());
  w.black.push_back(false);
  w.vertices.push_back(rev(top.attaching_vertex()));
  w.black.push_back(true);
  for (int j = m - 1; j >= 1; --j) {
    Dir attach = attach_of(j);
    Turn edge(w.vertices.back(), attach);
    if (!top.purple_edges.count(edge))
      return {std::nullopt,
              "switch path edge " + edge.str() + " is not purple in the "
              "destination structure"};
    w.vertices.push_back(attach);
    w.black.push_back(false);
    w.vertices.push_back(rev(attach));
    w.black.push_back(true);
  }
  if (!walk_is_smooth(top, w))
    return {std::nullopt, "switch path fails smoothness"};
  return {std::move(w), ""};
}

LabeledGraph preimage_subgraph(const LabeledGraph& h,
                               const GeneratorTriple& sw) {
  if (sw.kind != MoveKind::Switch)
    throw WordError("preimage subgraphs are taken under switches");
  LabeledGraph pi = sw.dest.pi();
  for (const Turn& t : h.edges)
    if (!pi.has_edge(t.a, t.b))
      throw WordError("subgraph is not inside PI of the destination");
  Dir da = sw.dest.twice_achieved();
  Dir du = sw.dest.red_vertex;
  auto back = [&](Dir d) { return d == da ? du : d; };
  LabeledGraph out;
  for (Dir v : h.vertices) out.add_vertex(back(v));
  for (const Turn& t : h.edges) out.add_edge(back(t.a), back(t.b));
  return out;
}

AMReport check_am_properties(const Composition& comp) {
  AMReport rep;
  const auto& ss = comp.structures;
  const auto& ts = comp.triples;
  const int m = static_cast<int>(ts.size());
  auto fail = [&](int p, const std::string& why) {
    if (rep.property[p - 1].holds) {
      rep.property[p - 1].holds = false;
      rep.property[p - 1].counterexample = why;
    }
  };
  if (ss.size() != ts.size() + 1) throw WordError("composition not chained");
  for (int i = 0; i < m; ++i)
    if (!(ts[i].source == ss[i]) || !(ts[i].dest == ss[i + 1]))
      throw WordError("composition not chained");

  // I: birecurrency of every structure.
  for (std::size_t j = 0; j < ss.size(); ++j)
    if (!is_birecurrent(ss[j]))
      fail(1, "structure " + std::to_string(j) + " not birecurrent");

  // II: at interior junctions the outgoing fold turn contains the ingoing
  // unachieved direction.
  for (int j = 1; j < m; ++j) {
    Turn t_next(ts[j].gen.folded, ts[j].gen.prefix);
    if (!t_next.contains(ss[j].red_vertex))
      fail(2, "junction " + std::to_string(j) + ": fold turn " +
                  t_next.str() + " misses unachieved " +
                  std::string(1, dir_to_char(ss[j].red_vertex)));
  }

  // III: red data matches the ingoing generator.
  for (int j = 0; j < m; ++j) {
    const LTTStructure& d = ss[j + 1];
    Turn expect(rev(ts[j].gen.prefix), ts[j].gen.folded);
    if (d.red_vertex != ts[j].gen.folded || !(d.red_edge == expect))
      fail(3, "structure " + std::to_string(j + 1) +
                  ": red data does not match the ingoing generator");
  }

  // IV: images of colored edges are purple downstream.
  {
    std::vector<DirectionMap> dmaps;
    for (int j = 0; j < m; ++j)
      dmaps.push_back(DirectionMap::of(gen_to_rosemap(ts[j].gen, comp.rank())));
    for (int l = 0; l < m && rep.property[3].holds; ++l) {
      for (int k = l + 1; k <= m && rep.property[3].holds; ++k) {
        for (const Turn& e : ss[l].colored_edges()) {
          Turn im = e;
          for (int j = l; j < k; ++j) im = dmaps[j].map_turn(im);
          if (im.degenerate() || im.contains(ss[k].red_vertex) ||
              !ss[k].purple_edges.count(im)) {
            fail(4, "edge " + e.str() + " of structure " + std::to_string(l) +
                        " maps to " + im.str() + " missing from structure " +
                        std::to_string(k));
            break;
          }
        }
      }
    }
  }

  // V: the red vertex carries exactly one colored edge.
  for (std::size_t j = 0; j < ss.size(); ++j)
    if (ss[j].colored_valence(ss[j].red_vertex) != 1)
      fail(5, "structure " + std::to_string(j) +
                  ": red vertex valence is not one");

  // VI: the generator is the ingoing generator of its destination.
  for (int j = 0; j < m; ++j)
    if (!(ts[j].gen == ingoing_generator(ss[j + 1])))
      fail(6, "generator " + std::to_string(j) +
                  " is not the ingoing generator of its destination");

  // VII: direction maps carry SW isomorphically onto SW downstream.
  {
    std::vector<DirectionMap> dmaps;
    for (int j = 0; j < m; ++j)
      dmaps.push_back(DirectionMap::of(gen_to_rosemap(ts[j].gen, comp.rank())));
    for (int l = 0; l < m && rep.property[6].holds; ++l) {
      for (int k = l + 1; k <= m && rep.property[6].holds; ++k) {
        std::set<Turn> image;
        for (const Turn& e : ss[l].purple_edges) {
          Turn im = e;
          for (int j = l; j < k; ++j) im = dmaps[j].map_turn(im);
          image.insert(im);
        }
        if (image != ss[k].purple_edges)
          fail(7, "SW of structure " + std::to_string(l) +
                      " is not carried onto SW of structure " +
                      std::to_string(k));
      }
    }
  }

  // VIII: irreducibility bookkeeping plus a PF transition matrix.
  {
    std::vector<bool> as_u(comp.rank(), false), as_a(comp.rank(), false);
    for (int j = 0; j < m; ++j) {
      as_u[edge_index(ts[j].gen.folded) - 1] = true;
      as_a[edge_index(ts[j].gen.prefix) - 1] = true;
    }
    for (int e = 1; e <= comp.rank(); ++e) {
      if (!as_u[e - 1])
        fail(8, std::string("edge pair ") + dir_to_char(e) +
                    " never appears as the folded edge");
      if (!as_a[e - 1])
        fail(8, std::string("edge pair ") + dir_to_char(e) +
                    " never appears as the prefix edge");
    }
    if (rep.property[7].holds && m > 0) {
      if (!is_primitive(TransitionMatrix(comp.composed_map())))
        fail(8, "composed transition matrix is not Perron-Frobenius");
    }
  }
  return rep;
}

}  // namespace ttforge
