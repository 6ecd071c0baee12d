#pragma once

#include <string>
#include <vector>

#include "ttforge/traintrack.hpp"

namespace ttforge {

// Identification of indivisible periodic Nielsen paths for a map given as a
// composition of Nielsen generators with exactly one illegal turn. The
// procedure grows two legal stems rho1, rho2 out of the illegal turn, one
// generator stage at a time; at each stage the shorter image side is forced
// to extend, with finitely many direction choices; branches die when the
// image pair diverges at a legal turn or when no resynchronization against
// the stems is possible at a full power.

enum class LeafTag {
  NoCandidate,       // step III: every extension choice crossed the illegal turn
  LegalDivergence,   // step IVc: images diverged at a legal turn
  NoResync,          // step Vd: full-power comparison fit no containment
};

struct BranchLeaf {
  Word rho1, rho2;
  LeafTag tag;
  int stage = 0;       // generator stages applied when the branch ended
  Turn divergence;     // for LegalDivergence: the legal turn reached
};

struct PnpWitness {
  Word rho1, rho2;
  int period = 0;           // g^period fixes the path
  bool interior = false;    // endpoints inside the terminal edges
};

struct PnpVerdict {
  enum class Kind { NoneFound, Found, DepthExceeded } kind = Kind::NoneFound;
  std::vector<PnpWitness> found;
  std::vector<BranchLeaf> leaves;     // exhausted branches (the certificate)
  std::vector<BranchLeaf> frontier;   // live branches at budget exhaustion
  std::string note;

  bool none_found() const { return kind == Kind::NoneFound; }
};

// The green illegal turn of the composition: the turn its first generator
// folds.
Turn green_turn(const std::vector<NielsenGen>& decomp);

PnpVerdict find_ipnps(const std::vector<NielsenGen>& decomp, int rank,
                      const PnpBudget& budget = {});

// Convenience: strip the map into generators first.
PnpVerdict find_ipnps(const RoseMap& g, const PnpBudget& budget = {});

// Independent confirmation of a witness. Vertex-endpoint paths are checked
// by exact tightened equality under g^period; interior-endpoint paths by
// nested containment of iterates (the stems sit inside their images with the
// junction aligned, which pins fixed points inside the terminal edges).
bool verify_pnp(const RoseMap& g, const PnpWitness& w);

}  // namespace ttforge
