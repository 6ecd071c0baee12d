#include "ttforge/pnp.hpp"
#include "ttforge/traintrack.hpp"

namespace ttforge {

FICVerdict check_fic(const RoseMap& g, const PnpBudget& budget) {
  if (auto w = train_track_obstruction(g))
    throw WordError("check_fic needs a train track map; turn " +
                    w->turn.str() + " degenerates");

  if (!is_primitive(TransitionMatrix(g)))
    return {FICStatus::Fails, FICHypothesis::Primitivity,
            "transition matrix is not Perron-Frobenius"};

  if (!lw_connected(g))
    return {FICStatus::Fails, FICHypothesis::LWConnectivity,
            "local Whitehead graph is disconnected"};

  PnpVerdict v;
  try {
    v = find_ipnps(g, budget);
  } catch (const WordError& e) {
    return {FICStatus::Inconclusive, FICHypothesis::None,
            std::string("PNP procedure inapplicable: ") + e.what()};
  }
  switch (v.kind) {
    case PnpVerdict::Kind::NoneFound:
      return {FICStatus::Satisfied, FICHypothesis::None, ""};
    case PnpVerdict::Kind::Found:
      return {FICStatus::Fails, FICHypothesis::PNPFree,
              "periodic Nielsen path found"};
    default:
      return {FICStatus::Inconclusive, FICHypothesis::None,
              "PNP search budget exhausted"};
  }
}

}  // namespace ttforge
