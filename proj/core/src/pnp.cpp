#include "ttforge/pnp.hpp"

#include <algorithm>
#include <deque>

namespace ttforge {

namespace {

// Letterwise image of a legal word: no cancellation can occur.
Word map_legal(const RoseMap& m, const Word& w) {
  std::vector<Dir> out;
  for (Dir d : w) {
    Word im = m.image_of(d);
    out.insert(out.end(), im.begin(), im.end());
  }
  return Word(std::move(out));
}

struct Branch {
  Word rho1, rho2;   // the stems, legal, opening with the illegal turn
  Word tail1, tail2; // image tails after stripping the common prefix:
                     // g_{j,1}(rho_i) = tau . tail_i with tau shared
  int added = 0;     // letters appended to the stems so far
};

// tail_i invariant maintenance: strip the common prefix of both tails.
void strip_common(Branch& b) {
  std::size_t k = common_prefix_len(b.tail1, b.tail2);
  if (k == 0) return;
  auto cut = [&](const Word& w) {
    return Word(std::vector<Dir>(w.begin() + k, w.end()));
  };
  b.tail1 = cut(b.tail1);
  b.tail2 = cut(b.tail2);
}

}  // namespace

Turn green_turn(const std::vector<NielsenGen>& decomp) {
  if (decomp.empty()) throw WordError("empty decomposition");
  return Turn(decomp.front().folded, decomp.front().prefix);
}

PnpVerdict find_ipnps(const RoseMap& g, const PnpBudget& budget) {
  DecomposeResult d = unfold_ideal_decomposition(g);
  if (!d.ok())
    throw WordError("map is not a composition of Nielsen generators: " +
                    d.error);
  return find_ipnps(d.gens, g.rank(), budget);
}

PnpVerdict find_ipnps(const std::vector<NielsenGen>& decomp, int rank,
                      const PnpBudget& budget) {
  const int n = static_cast<int>(decomp.size());
  if (n == 0) throw WordError("empty decomposition");
  RoseMap g = compose_gens(decomp, rank);

  GateStructure gs = gates(g);
  if (static_cast<int>(gs.gate_count()) != 2 * rank - 1)
    throw WordError("procedure needs exactly one illegal turn (2r-1 gates), got " +
                    std::to_string(gs.gate_count()) + " gates");
  const Turn t1 = green_turn(decomp);
  if (!gs.same_gate(t1.a, t1.b))
    throw WordError("first generator does not fold the illegal turn");

  // Green turn of the stage-j fold, cyclic. T_{j+1} in decomposition terms.
  auto fold_turn = [&](int j) {
    const NielsenGen& gen = decomp[j % n];
    return Turn(gen.folded, gen.prefix);
  };

  PnpVerdict verdict;
  const std::size_t letter_cap = 1u << 22;

  Branch root;
  root.rho1 = Word::single(decomp.front().folded);
  root.rho2 = Word::single(decomp.front().prefix);
  root.tail1 = root.rho1;
  root.tail2 = root.rho2;

  // Lockstep over stages: one composite per stage serves every live branch.
  std::vector<Branch> live{root};
  RoseMap composite = RoseMap::identity(rank);
  DirectionMap dmap = DirectionMap::of(composite);
  int stage = 0;  // generators applied so far

  auto stem_turn_ok = [&](const Word& stem, Dir next) {
    Turn cross(rev(stem.back()), next);
    return !cross.degenerate() && !(cross == t1);
  };

  // Candidate next letters per step III / VII.
  auto preimages_of = [&](Dir target) {
    std::vector<Dir> out;
    for (int s = 0; s < 2 * rank; ++s) {
      Dir d = dir_from_slot(s);
      if (dmap(d) == target) out.push_back(d);
    }
    return out;
  };

  while (!live.empty()) {
    if (stage >= n * budget.max_power) {
      for (Branch& b : live)
        verdict.frontier.push_back(
            {b.rho1, b.rho2, LeafTag::NoResync, stage, Turn()});
      break;
    }

    // Advance every live branch by one stage.
    const NielsenGen& gen = decomp[stage % n];
    RoseMap gen_map = gen_to_rosemap(gen, rank);
    composite = compose(gen_map, composite);
    dmap = DirectionMap::of(composite);
    ++stage;
    for (Branch& b : live) {
      b.tail1 = map_legal(gen_map, b.tail1);
      b.tail2 = map_legal(gen_map, b.tail2);
      strip_common(b);
    }

    // Settle each branch at this stage: extend stems until every branch
    // either waits for the next fold, dies, or reports a witness.
    std::vector<Branch> waiting;
    std::deque<Branch> work(live.begin(), live.end());
    live.clear();

    while (!work.empty()) {
      Branch b = std::move(work.front());
      work.pop_front();

      std::size_t sz = b.tail1.size() + b.tail2.size();
      if (sz > letter_cap || b.added > budget.max_extensions) {
        verdict.frontier.push_back(
            {b.rho1, b.rho2, LeafTag::NoResync, stage, Turn()});
        continue;
      }

      if (b.tail1.empty() && b.tail2.empty()) {
        // Images coincide: impossible for distinct reduced stems under an
        // injective map; defensive stop.
        verdict.frontier.push_back(
            {b.rho1, b.rho2, LeafTag::NoResync, stage, Turn()});
        continue;
      }

      if (b.tail1.empty() || b.tail2.empty()) {
        // Step III: the exhausted side must grow by one edge.
        const bool grow2 = b.tail2.empty();
        const Word& longer = grow2 ? b.tail1 : b.tail2;
        Word& stem = grow2 ? b.rho2 : b.rho1;
        Dir t = longer.front();

        std::vector<Dir> cands;
        Dir du_stage = decomp[(stage - 1) % n].folded;  // d^u of this stage
        if (t == du_stage) {
          // IIIa: the continuation must make the fold turn T_{stage+1}.
          Turn tn = fold_turn(stage);
          if (!tn.contains(t)) {
            verdict.leaves.push_back(
                {b.rho1, b.rho2, LeafTag::NoCandidate, stage, Turn()});
            continue;
          }
          cands = preimages_of(tn.other(t));
        } else {
          // IIIb: the continuation must follow the existing image.
          cands = preimages_of(t);
        }

        bool spawned = false;
        for (Dir d : cands) {
          if (!stem_turn_ok(stem, d)) continue;
          Branch nb = b;
          Word& nstem = grow2 ? nb.rho2 : nb.rho1;
          Word& ntail = grow2 ? nb.tail2 : nb.tail1;
          nstem = concat(nstem, Word::single(d));
          ntail = concat(ntail, map_legal(composite, Word::single(d)));
          strip_common(nb);
          nb.added += 1;
          work.push_back(std::move(nb));
          spawned = true;
        }
        if (!spawned)
          verdict.leaves.push_back(
              {b.rho1, b.rho2, LeafTag::NoCandidate, stage, Turn()});
        continue;
      }

      // Both tails nonempty: the images diverge here.
      Turn div(b.tail1.front(), b.tail2.front());
      Turn next_fold = fold_turn(stage);
      bool at_full_power = stage % n == 0;

      if (at_full_power && div == t1 && b.tail1.front() == b.rho1.front() &&
          b.tail2.front() == b.rho2.front()) {
        // Step V: g^p image of the candidate is tail1^-1 tail2 against
        // rho1^-1 rho2, junctions aligned.
        int p = stage / n;
        bool a_pre = b.tail1.size() <= b.rho1.size() &&
                     b.rho1.has_prefix(b.tail1);
        bool b_pre = b.tail2.size() <= b.rho2.size() &&
                     b.rho2.has_prefix(b.tail2);
        bool a_ext = b.tail1.has_prefix(b.rho1);
        bool b_ext = b.tail2.has_prefix(b.rho2);

        if (a_ext && b_ext && b.tail1 == b.rho1 && b.tail2 == b.rho2) {
          verdict.found.push_back({b.rho1, b.rho2, p, false});  // Va
          continue;
        }
        if (a_ext && b_ext) {
          verdict.found.push_back({b.rho1, b.rho2, p, true});   // Vc -> VI
          continue;
        }
        // Vb or the mixed case of Vd: grow a strictly short side.
        auto grow_side = [&](bool side2) {
          const Word& stem = side2 ? b.rho2 : b.rho1;
          const Word& tail = side2 ? b.tail2 : b.tail1;
          Dir t = stem[tail.size()];  // next stem letter past the image
          bool spawned = false;
          for (Dir d : preimages_of(t)) {
            if (!stem_turn_ok(stem, d)) continue;
            Branch nb = b;
            Word& nstem = side2 ? nb.rho2 : nb.rho1;
            Word& ntail = side2 ? nb.tail2 : nb.tail1;
            nstem = concat(nstem, Word::single(d));
            ntail = concat(ntail, map_legal(composite, Word::single(d)));
            strip_common(nb);
            nb.added += 1;
            work.push_back(std::move(nb));
            spawned = true;
          }
          return spawned;
        };
        bool strictly_a_short = a_pre && b.tail1.size() < b.rho1.size();
        bool strictly_b_short = b_pre && b.tail2.size() < b.rho2.size();
        if ((strictly_a_short && (b_pre || b_ext)) ||
            (strictly_b_short && (a_pre || a_ext))) {
          bool spawned = false;
          if (strictly_b_short) spawned = grow_side(true) || spawned;
          else if (strictly_a_short) spawned = grow_side(false) || spawned;
          if (!spawned)
            verdict.leaves.push_back(
                {b.rho1, b.rho2, LeafTag::NoCandidate, stage, Turn()});
          continue;
        }
        verdict.leaves.push_back(
            {b.rho1, b.rho2, LeafTag::NoResync, stage, div});  // Vd
        continue;
      }

      if (div == next_fold) {
        waiting.push_back(std::move(b));  // IVb: the next fold merges them
        continue;
      }
      // IVc: a legal divergence can never become illegal again.
      verdict.leaves.push_back(
          {b.rho1, b.rho2, LeafTag::LegalDivergence, stage, div});
    }

    live = std::move(waiting);
  }

  if (!verdict.found.empty())
    verdict.kind = PnpVerdict::Kind::Found;
  else if (!verdict.frontier.empty())
    verdict.kind = PnpVerdict::Kind::DepthExceeded;
  else
    verdict.kind = PnpVerdict::Kind::NoneFound;
  return verdict;
}

bool verify_pnp(const RoseMap& g, const PnpWitness& w) {
  RoseMap gp = power(g, w.period);
  Word path = concat(w.rho1.reversed(), w.rho2);
  if (path.empty()) return false;
  if (!w.interior) return apply(gp, path) == path;

  // Interior endpoints: measured from the junction (where the two image
  // words diverge), each iterate must extend its predecessor. The nesting
  // pins a fixed point inside each terminal edge, under which the truncated
  // path is invariant rel endpoints.
  Word u1 = w.rho1, u2 = w.rho2;
  for (int it = 0; it < 3; ++it) {
    Word a = apply(gp, u1);
    Word b = apply(gp, u2);
    std::size_t k = common_prefix_len(a, b);
    Word ta(std::vector<Dir>(a.begin() + k, a.end()));
    Word tb(std::vector<Dir>(b.begin() + k, b.end()));
    if (!ta.has_prefix(u1) || !tb.has_prefix(u2)) return false;
    if (ta == u1 && tb == u2) return false;  // would be a vertex PNP
    u1 = ta;
    u2 = tb;
  }
  return true;
}

}  // namespace ttforge
