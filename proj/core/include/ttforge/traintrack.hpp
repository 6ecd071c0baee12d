#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ttforge/rosemap.hpp"

namespace ttforge {

// Unordered pair of directions, stored normalized (slot order).
struct Turn {
  Dir a = 0;
  Dir b = 0;

  Turn() = default;
  Turn(Dir x, Dir y) {
    if (slot(x) <= slot(y)) {
      a = x; b = y;
    } else {
      a = y; b = x;
    }
  }
  bool degenerate() const { return a == b; }
  bool contains(Dir d) const { return a == d || b == d; }
  Dir other(Dir d) const { return a == d ? b : a; }
  bool operator==(const Turn&) const = default;
  auto operator<=>(const Turn&) const = default;
  std::string str() const;
};

// The induced map of directions Dg: a total table on the 2r directions.
class DirectionMap {
 public:
  DirectionMap(int rank, std::vector<Dir> table);
  static DirectionMap of(const RoseMap& g);

  int rank() const noexcept { return rank_; }
  Dir operator()(Dir d) const { return table_[slot(d)]; }
  Turn map_turn(const Turn& t) const { return Turn((*this)(t.a), (*this)(t.b)); }
  DirectionMap composed_with(const DirectionMap& inner) const;
  DirectionMap iterate(int k) const;

  // Directions with no preimage.
  std::vector<Dir> unachieved() const;

  bool operator==(const DirectionMap&) const = default;

 private:
  int rank_;
  std::vector<Dir> table_;  // indexed by slot
};

struct GateStructure {
  int rank = 0;
  std::vector<std::vector<Dir>> gates;  // partition of the 2r directions
  std::vector<Dir> periodic;            // slot order
  std::vector<Dir> fixed;               // slot order
  // gate_of[slot(d)] = index into gates; each gate holds one periodic
  // direction, its representative.
  std::vector<int> gate_of;
  std::vector<Dir> representative;      // per gate

  bool same_gate(Dir x, Dir y) const {
    return gate_of[slot(x)] == gate_of[slot(y)];
  }
  std::size_t gate_count() const { return gates.size(); }
};

GateStructure gates(const RoseMap& g);

// All turns crossed by images of edges, closed under the induced turn map.
// Finite, so exact; degenerate turns are kept (they witness non-TT maps).
std::set<Turn> taken_turn_closure(const RoseMap& g);

struct TTWitness {
  Turn turn;     // taken turn that degenerates
  int power = 0; // iterations of the direction map until degenerate
};

// Train track test: no taken turn may have both directions in one gate.
std::optional<TTWitness> train_track_obstruction(const RoseMap& g);
inline bool is_train_track(const RoseMap& g) {
  return !train_track_obstruction(g).has_value();
}

class TransitionMatrix {
 public:
  explicit TransitionMatrix(const RoseMap& g);
  TransitionMatrix(int rank, std::vector<std::vector<long long>> m)
      : rank_(rank), m_(std::move(m)) {}

  int rank() const noexcept { return rank_; }
  long long at(int i, int j) const { return m_[i][j]; }  // 0-based
  const std::vector<std::vector<long long>>& rows() const { return m_; }

 private:
  int rank_;
  std::vector<std::vector<long long>> m_;
};

// Perron-Frobenius test on the support: strong connectivity, then a positive
// boolean power within the Wielandt bound (r-1)^2 + 1. Exact, no numerics.
bool is_primitive(const TransitionMatrix& m);
// Smallest k <= bound with M^k > 0 entrywise, if any.
std::optional<int> positive_power_exponent(const TransitionMatrix& m,
                                           int bound = 0);

// Smallest p such that every periodic direction of g^p is fixed (the lcm of
// the periodic cycle lengths of Dg), together with g^p.
std::pair<int, RoseMap> minimal_rotationless_power(const RoseMap& g);

// Local Whitehead graph connectivity on the single rose vertex: all 2r
// directions, edges = taken turn closure.
bool lw_connected(const RoseMap& g);

struct PnpBudget {
  int max_extensions = 64;  // letters added per branch
  int max_power = 8;        // powers of g compared
};

enum class FICStatus { Satisfied, Fails, Inconclusive };
enum class FICHypothesis { None, Primitivity, LWConnectivity, PNPFree };

struct FICVerdict {
  FICStatus status = FICStatus::Inconclusive;
  FICHypothesis failed = FICHypothesis::None;
  std::string detail;
};

// Full irreducibility criterion: train track (precondition), PF transition
// matrix, connected local Whitehead graph, no PNPs. Satisfied certifies a
// fully irreducible, and with the PNP-free part ageometric, outer
// automorphism class.
FICVerdict check_fic(const RoseMap& g, const PnpBudget& budget = {});

}  // namespace ttforge
