#include "ttforge/traintrack.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace ttforge {

std::string Turn::str() const {
  return std::string("{") + dir_to_char(a) + "," + dir_to_char(b) + "}";
}

DirectionMap::DirectionMap(int rank, std::vector<Dir> table)
    : rank_(rank), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != 2 * rank)
    throw WordError("direction table must cover all 2r directions");
}

DirectionMap DirectionMap::of(const RoseMap& g) {
  std::vector<Dir> t(2 * g.rank());
  for (int e = 1; e <= g.rank(); ++e) {
    t[slot(e)] = g.image(e).front();
    t[slot(rev(e))] = rev(g.image(e).back());
  }
  return DirectionMap(g.rank(), std::move(t));
}

DirectionMap DirectionMap::composed_with(const DirectionMap& inner) const {
  std::vector<Dir> t(2 * rank_);
  for (int s = 0; s < 2 * rank_; ++s) t[s] = (*this)(inner(dir_from_slot(s)));
  return DirectionMap(rank_, std::move(t));
}

DirectionMap DirectionMap::iterate(int k) const {
  DirectionMap r(rank_, [&] {
    std::vector<Dir> id(2 * rank_);
    for (int s = 0; s < 2 * rank_; ++s) id[s] = dir_from_slot(s);
    return id;
  }());
  for (int i = 0; i < k; ++i) r = composed_with(r);
  return r;
}

std::vector<Dir> DirectionMap::unachieved() const {
  std::vector<bool> hit(2 * rank_, false);
  for (int s = 0; s < 2 * rank_; ++s) hit[slot(table_[s])] = true;
  std::vector<Dir> out;
  for (int s = 0; s < 2 * rank_; ++s)
    if (!hit[s]) out.push_back(dir_from_slot(s));
  return out;
}

GateStructure gates(const RoseMap& g) {
  const int n = 2 * g.rank();
  DirectionMap d = DirectionMap::of(g);

  // d1 ~ d2 iff some iterate identifies them. New identifications stop once
  // the image stabilizes, which happens within n steps.
  DirectionMap stable = d.iterate(n);

  GateStructure gs;
  gs.rank = g.rank();
  gs.gate_of.assign(n, -1);

  std::map<Dir, int> class_of_value;
  for (int s = 0; s < n; ++s) {
    Dir v = stable(dir_from_slot(s));
    auto [it, fresh] = class_of_value.try_emplace(v, static_cast<int>(gs.gates.size()));
    if (fresh) gs.gates.emplace_back();
    gs.gate_of[s] = it->second;
    gs.gates[it->second].push_back(dir_from_slot(s));
  }

  for (int s = 0; s < n; ++s) {
    Dir x = dir_from_slot(s);
    if (d(x) == x) gs.fixed.push_back(x);
    Dir y = x;
    for (int k = 0; k < n; ++k) {
      y = d(y);
      if (y == x) {
        gs.periodic.push_back(x);
        break;
      }
    }
  }

  gs.representative.assign(gs.gates.size(), 0);
  for (Dir p : gs.periodic) gs.representative[gs.gate_of[slot(p)]] = p;
  return gs;
}

std::set<Turn> taken_turn_closure(const RoseMap& g) {
  DirectionMap d = DirectionMap::of(g);
  std::set<Turn> turns;
  std::deque<Turn> queue;
  auto add = [&](const Turn& t) {
    if (turns.insert(t).second) queue.push_back(t);
  };
  for (int e = 1; e <= g.rank(); ++e) {
    const Word& w = g.image(e);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      add(Turn(rev(w[i]), w[i + 1]));
  }
  while (!queue.empty()) {
    Turn t = queue.front();
    queue.pop_front();
    add(d.map_turn(t));
  }
  return turns;
}

std::optional<TTWitness> train_track_obstruction(const RoseMap& g) {
  GateStructure gs = gates(g);
  DirectionMap d = DirectionMap::of(g);
  for (const Turn& t : taken_turn_closure(g)) {
    if (gs.same_gate(t.a, t.b)) {
      Turn u = t;
      int k = 0;
      while (!u.degenerate() && k <= 2 * g.rank()) {
        u = d.map_turn(u);
        ++k;
      }
      return TTWitness{t, k};
    }
  }
  return std::nullopt;
}

TransitionMatrix::TransitionMatrix(const RoseMap& g)
    : rank_(g.rank()),
      m_(g.rank(), std::vector<long long>(g.rank(), 0)) {
  for (int j = 1; j <= rank_; ++j)
    for (Dir d : g.image(j)) m_[edge_index(d) - 1][j - 1] += 1;
}

namespace {

using BoolMat = std::vector<std::vector<bool>>;

BoolMat bool_mul(const BoolMat& a, const BoolMat& b) {
  int n = static_cast<int>(a.size());
  BoolMat c(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k])
        for (int j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

bool all_positive(const BoolMat& a) {
  for (const auto& row : a)
    for (bool v : row)
      if (!v) return false;
  return true;
}

bool strongly_connected(const BoolMat& a) {
  int n = static_cast<int>(a.size());
  auto reach = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w = 0; w < n; ++w) {
        bool arc = transpose ? a[w][v] : a[v][w];
        if (arc && !seen[w]) {
          seen[w] = true;
          q.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach(false) && reach(true);
}

}  // namespace

std::optional<int> positive_power_exponent(const TransitionMatrix& m, int bound) {
  int n = m.rank();
  if (bound <= 0) bound = (n - 1) * (n - 1) + 1;
  BoolMat b(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = m.at(i, j) > 0;
  BoolMat p = b;
  for (int k = 1; k <= bound; ++k) {
    if (all_positive(p)) return k;
    p = bool_mul(p, b);
  }
  return std::nullopt;
}

bool is_primitive(const TransitionMatrix& m) {
  int n = m.rank();
  BoolMat b(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = m.at(i, j) > 0;
  if (!strongly_connected(b)) return false;
  return positive_power_exponent(m).has_value();
}

std::pair<int, RoseMap> minimal_rotationless_power(const RoseMap& g) {
  DirectionMap d = DirectionMap::of(g);
  const int n = 2 * g.rank();
  long long p = 1;
  for (int s = 0; s < n; ++s) {
    Dir x = dir_from_slot(s);
    Dir y = x;
    for (int k = 1; k <= n; ++k) {
      y = d(y);
      if (y == x) {
        p = std::lcm(p, static_cast<long long>(k));
        break;
      }
    }
  }
  return {static_cast<int>(p), power(g, static_cast<int>(p))};
}

bool lw_connected(const RoseMap& g) {
  const int n = 2 * g.rank();
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const Turn& t : taken_turn_closure(g))
    comp[find(slot(t.a))] = find(slot(t.b));
  int root = find(0);
  for (int s = 1; s < n; ++s)
    if (find(s) != root) return false;
  return true;
}

}  // namespace ttforge
