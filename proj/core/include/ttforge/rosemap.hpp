#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttforge/word.hpp"

namespace ttforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg
                                : msg),
        line(line) {}
  int line;
};

// A Nielsen generator: the signed edge `folded` maps to prefix.folded, all
// other edges map identically. prefix must not be folded or its inverse.
struct NielsenGen {
  Dir folded = 0;
  Dir prefix = 0;

  bool operator==(const NielsenGen&) const = default;

  // Display on the positive edge, e.g. {folded=-2, prefix=3} is "b -> bC".
  std::string str() const;
};

// A tight self-map of the rank-r rose: one freely reduced, nonempty image
// word per positive edge. Invertibility on abelianization (det = +-1) is
// required at construction; it is a cheap necessary condition for the map
// to represent an automorphism.
class RoseMap {
 public:
  RoseMap(int rank, std::vector<Word> images);
  static RoseMap identity(int rank);

  int rank() const noexcept { return rank_; }

  // Image of the positive edge e (1-based).
  const Word& image(int e) const { return images_[e - 1]; }
  // Image of an arbitrary signed edge.
  Word image_of(Dir d) const;

  const std::vector<Word>& images() const noexcept { return images_; }

  bool is_identity() const;
  // Images are single letters (a letter permutation rather than a fold).
  bool is_permutation() const;

  bool operator==(const RoseMap&) const = default;

 private:
  int rank_;
  std::vector<Word> images_;
};

// g_#(w): substitute images and tighten.
Word apply(const RoseMap& g, const Word& w);

// compose(f, g) = f after g: image(e) = f_#(g(e)).
RoseMap compose(const RoseMap& outer, const RoseMap& inner);

RoseMap power(const RoseMap& g, int p);

RoseMap gen_to_rosemap(const NielsenGen& g, int rank);
RoseMap compose_gens(const std::vector<NielsenGen>& gens, int rank);
NielsenGen inverse_gen(const NielsenGen& g);

// Determinant of the abelianized map (signed letter counts), exact.
long long abelianized_det(const RoseMap& g);

// Text format: one "<letter> -> <letters>" line per positive edge, uppercase
// for inverses, '#' starts a comment, blank lines ignored. Rank = number of
// lines. Canonical output has edges in alphabetical order and no spaces in
// the image.
RoseMap parse_rosemap(const std::string& text);
std::string format_rosemap(const RoseMap& g);

// Inverse of composing Nielsen generators: strip the last proper full fold
// repeatedly until the identity remains. Succeeds exactly on maps that are
// compositions of Nielsen generators with a trivial final permutation and
// one unachieved direction at every stage; such maps arise from ideal
// decompositions. Returns generators in application order (first applied
// first) and re-verifies by recomposition.
struct DecomposeResult {
  std::vector<NielsenGen> gens;
  std::string error;  // empty on success
  bool ok() const { return error.empty(); }
};
DecomposeResult unfold_ideal_decomposition(const RoseMap& g,
                                           std::size_t max_steps = 100000);

}  // namespace ttforge
