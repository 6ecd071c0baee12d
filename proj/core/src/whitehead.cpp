#include "ttforge/whitehead.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace ttforge {

void LabeledGraph::add_edge(Dir x, Dir y) {
  if (x == y) throw WordError("loop edges are not allowed");
  vertices.insert(x);
  vertices.insert(y);
  edges.insert(Turn(x, y));
}

int LabeledGraph::valence(Dir d) const {
  int v = 0;
  for (const Turn& t : edges)
    if (t.contains(d)) ++v;
  return v;
}

std::vector<Dir> LabeledGraph::neighbors(Dir d) const {
  std::vector<Dir> out;
  for (const Turn& t : edges)
    if (t.contains(d)) out.push_back(t.other(d));
  return out;
}

bool LabeledGraph::connected() const {
  if (vertices.empty()) return true;
  std::set<Dir> seen{*vertices.begin()};
  std::deque<Dir> q{*vertices.begin()};
  while (!q.empty()) {
    Dir v = q.front();
    q.pop_front();
    for (Dir w : neighbors(v))
      if (seen.insert(w).second) q.push_back(w);
  }
  return seen.size() == vertices.size();
}

namespace {

int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::uint64_t canonical_bits(int n, std::uint64_t bits) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ULL;
  do {
    std::uint64_t b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (bits >> pair_index(i, j, n) & 1)
          b |= 1ULL << pair_index(perm[i], perm[j], n);
    best = std::min(best, b);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

PIWGraph::PIWGraph(int n, const std::set<std::pair<int, int>>& edges) : n_(n) {
  std::uint64_t b = 0;
  for (auto [i, j] : edges) {
    if (i == j) throw WordError("loop edges are not allowed");
    b |= 1ULL << pair_index(i, j, n);
  }
  bits_ = canonical_bits(n, b);
}

PIWGraph PIWGraph::of(const LabeledGraph& g) {
  std::vector<Dir> verts(g.vertices.begin(), g.vertices.end());
  std::sort(verts.begin(), verts.end(),
            [](Dir a, Dir b) { return slot(a) < slot(b); });
  auto index_of = [&](Dir d) {
    return static_cast<int>(std::find(verts.begin(), verts.end(), d) -
                            verts.begin());
  };
  std::set<std::pair<int, int>> edges;
  for (const Turn& t : g.edges) {
    int i = index_of(t.a), j = index_of(t.b);
    edges.insert({std::min(i, j), std::max(i, j)});
  }
  return PIWGraph(static_cast<int>(verts.size()), edges);
}

int PIWGraph::edge_count() const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) ++c;
  return c;
}

bool PIWGraph::has_edge(int i, int j) const {
  if (i == j) return false;
  return bits_ >> pair_index(i, j, n_) & 1;
}

std::vector<std::pair<int, int>> PIWGraph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) out.push_back({i, j});
  return out;
}

std::vector<int> PIWGraph::degree_sequence() const {
  std::vector<int> deg(n_, 0);
  for (auto [i, j] : edge_list()) {
    ++deg[i];
    ++deg[j];
  }
  std::sort(deg.begin(), deg.end());
  return deg;
}

bool PIWGraph::connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(n_, false);
  std::deque<int> q{0};
  seen[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w = 0; w < n_; ++w)
      if (has_edge(v, w) && !seen[w]) {
        seen[w] = true;
        q.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool PIWGraph::loop_free_type_star(int rank) const {
  return n_ == 2 * rank - 1 && connected();
}

std::string PIWGraph::str() const {
  std::string s = std::to_string(n_) + ":{";
  bool first = true;
  for (auto [i, j] : edge_list()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(i) + std::to_string(j);
  }
  return s + "}";
}

bool are_isomorphic(const PIWGraph& a, const PIWGraph& b) {
  return a.vertex_count() == b.vertex_count() && a.bits() == b.bits();
}

std::vector<CatalogEntry> enumerate_catalog(int rank) {
  const int n = 2 * rank - 1;
  const int npairs = n * (n - 1) / 2;
  if (npairs > 30) throw WordError("catalog enumeration limited to small rank");
  std::set<PIWGraph> classes;
  for (std::uint64_t mask = 0; mask < (1ULL << npairs); ++mask) {
    std::set<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++bit)
        if (mask >> bit & 1) edges.insert({i, j});
    PIWGraph g(n, edges);
    if (g.connected()) classes.insert(g);
  }
  std::vector<CatalogEntry> out;
  int id = 1;
  for (const PIWGraph& g : classes) out.push_back({id++, g});
  return out;
}

int catalog_index(const std::vector<CatalogEntry>& cat, const PIWGraph& g) {
  for (const CatalogEntry& e : cat)
    if (are_isomorphic(e.graph, g)) return e.id;
  return -1;
}

Rational singularity_index(int k) {
  if (k < 3) throw WordError("singularity index needs a component with >= 3 vertices");
  // 1 - k/2
  if (k % 2 == 0) return {1 - k / 2, 1};
  return {2 - k, 2};
}

LabeledGraph local_whitehead_graph(const RoseMap& g) {
  if (auto w = train_track_obstruction(g))
    throw WordError("not a train track map: taken turn " + w->turn.str() +
                    " degenerates");
  LabeledGraph lw;
  for (int s = 0; s < 2 * g.rank(); ++s) lw.add_vertex(dir_from_slot(s));
  for (const Turn& t : taken_turn_closure(g)) lw.add_edge(t.a, t.b);
  return lw;
}

LabeledGraph stable_whitehead_graph(const RoseMap& g) {
  LabeledGraph lw = local_whitehead_graph(g);
  GateStructure gs = gates(g);
  std::set<Dir> periodic(gs.periodic.begin(), gs.periodic.end());
  LabeledGraph sw;
  for (Dir d : periodic) sw.add_vertex(d);
  for (const Turn& t : lw.edges)
    if (periodic.count(t.a) && periodic.count(t.b)) sw.add_edge(t.a, t.b);
  return sw;
}

PIWGraph ideal_whitehead_graph(const RoseMap& g, bool pnp_free_certified) {
  if (!pnp_free_certified)
    throw WordError("ideal Whitehead graph needs a PNP-free certificate");
  GateStructure gs = gates(g);
  if (gs.periodic.size() != gs.fixed.size())
    throw WordError("map is not rotationless; take the rotationless power first");
  return PIWGraph::of(stable_whitehead_graph(g));
}

std::vector<EppMap> epp_symmetries(int rank, int pinned_edge) {
  std::vector<int> movable;
  for (int e = 1; e <= rank; ++e)
    if (e != pinned_edge) movable.push_back(e);
  // The last edge index stays in place unless explicitly pinned elsewhere:
  // the permutable pairs are 1..r-1 by convention, so when nothing is
  // pinned we pin edge r.
  if (pinned_edge == 0) {
    pinned_edge = rank;
    movable.clear();
    for (int e = 1; e < rank; ++e) movable.push_back(e);
  }

  std::vector<EppMap> out;
  std::vector<int> perm = movable;
  std::sort(perm.begin(), perm.end());
  do {
    const int k = static_cast<int>(movable.size());
    for (int swaps = 0; swaps < (1 << k); ++swaps) {
      EppMap m;
      m.peg.assign(rank, 0);
      m.peg[pinned_edge - 1] = pinned_edge;
      for (int i = 0; i < k; ++i) {
        Dir target = perm[i];
        if (swaps >> i & 1) target = rev(target);
        m.peg[movable[i] - 1] = target;
      }
      out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

LabeledGraph relabel(const LabeledGraph& g, const EppMap& m) {
  LabeledGraph out;
  for (Dir v : g.vertices) out.add_vertex(m(v));
  for (const Turn& t : g.edges) out.add_edge(m(t.a), m(t.b));
  return out;
}

LabeledGraph epp_canonical(const LabeledGraph& g, int rank, int pinned_edge) {
  bool first = true;
  LabeledGraph best;
  for (const EppMap& m : epp_symmetries(rank, pinned_edge)) {
    LabeledGraph h = relabel(g, m);
    if (first || h < best) {
      best = std::move(h);
      first = false;
    }
  }
  return best;
}

}  // namespace ttforge
