#include "ttforge/rosemap.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ttforge {

std::string NielsenGen::str() const {
  Dir f = folded, p = prefix;
  std::string lhs(1, dir_to_char(edge_index(f)));
  std::string img;
  if (positive(f)) {
    img = std::string(1, dir_to_char(p)) + std::string(1, dir_to_char(f));
  } else {
    img = std::string(1, dir_to_char(edge_index(f))) +
          std::string(1, dir_to_char(rev(p)));
  }
  return lhs + " -> " + img;
}

RoseMap::RoseMap(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (rank < 1 || rank > kMaxRank) throw WordError("rank out of range");
  if (static_cast<int>(images_.size()) != rank)
    throw WordError("need one image per positive edge");
  for (const Word& w : images_) {
    if (w.empty()) throw WordError("empty edge image");
    for (Dir d : w)
      if (!valid_dir(d, rank)) throw WordError("image letter exceeds rank");
  }
  long long det = abelianized_det(*this);
  if (det != 1 && det != -1)
    throw WordError("abelianized determinant is not +-1: " +
                    std::to_string(det));
}

RoseMap RoseMap::identity(int rank) {
  std::vector<Word> im;
  im.reserve(rank);
  for (int e = 1; e <= rank; ++e) im.push_back(Word::single(e));
  return RoseMap(rank, std::move(im));
}

Word RoseMap::image_of(Dir d) const {
  if (!valid_dir(d, rank_)) throw WordError("direction exceeds rank");
  return positive(d) ? image(d) : image(edge_index(d)).reversed();
}

bool RoseMap::is_identity() const {
  for (int e = 1; e <= rank_; ++e)
    if (image(e).size() != 1 || image(e)[0] != e) return false;
  return true;
}

bool RoseMap::is_permutation() const {
  for (int e = 1; e <= rank_; ++e)
    if (image(e).size() != 1) return false;
  return true;
}

Word apply(const RoseMap& g, const Word& w) {
  std::vector<Dir> out;
  for (Dir d : w) {
    Word im = g.image_of(d);
    for (Dir x : im) {
      if (!out.empty() && out.back() == rev(x)) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
  }
  return Word(std::move(out));
}

RoseMap compose(const RoseMap& outer, const RoseMap& inner) {
  if (outer.rank() != inner.rank()) throw WordError("rank mismatch");
  std::vector<Word> im;
  im.reserve(inner.rank());
  for (int e = 1; e <= inner.rank(); ++e)
    im.push_back(apply(outer, inner.image(e)));
  return RoseMap(inner.rank(), std::move(im));
}

RoseMap power(const RoseMap& g, int p) {
  if (p < 1) throw WordError("power must be positive");
  RoseMap r = g;
  for (int i = 1; i < p; ++i) r = compose(g, r);
  return r;
}

RoseMap gen_to_rosemap(const NielsenGen& g, int rank) {
  if (!valid_dir(g.folded, rank) || !valid_dir(g.prefix, rank))
    throw WordError("generator direction exceeds rank");
  if (edge_index(g.prefix) == edge_index(g.folded))
    throw WordError("generator prefix must differ from the folded edge");
  std::vector<Word> im;
  im.reserve(rank);
  for (int e = 1; e <= rank; ++e) {
    if (e == edge_index(g.folded)) {
      // folded -> prefix.folded reads e -> prefix.e on a positive folded
      // edge and e -> e.rev(prefix) on a negative one.
      im.push_back(positive(g.folded)
                       ? Word(std::vector<Dir>{g.prefix, g.folded})
                       : Word(std::vector<Dir>{e, rev(g.prefix)}));
    } else {
      im.push_back(Word::single(e));
    }
  }
  return RoseMap(rank, std::move(im));
}

RoseMap compose_gens(const std::vector<NielsenGen>& gens, int rank) {
  RoseMap m = RoseMap::identity(rank);
  for (const NielsenGen& g : gens) m = compose(gen_to_rosemap(g, rank), m);
  return m;
}

NielsenGen inverse_gen(const NielsenGen& g) {
  return NielsenGen{g.folded, rev(g.prefix)};
}

long long abelianized_det(const RoseMap& g) {
  int r = g.rank();
  // Fraction-free Gaussian elimination (Bareiss) on the signed count matrix.
  std::vector<std::vector<long long>> m(r, std::vector<long long>(r, 0));
  for (int j = 1; j <= r; ++j)
    for (Dir d : g.image(j)) m[edge_index(d) - 1][j - 1] += positive(d) ? 1 : -1;

  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < r; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < r; ++i)
        if (m[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < r; ++i) {
      for (int j = k + 1; j < r; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[r - 1][r - 1];
}

RoseMap parse_rosemap(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, std::string>> rows;  // edge index, image text
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos)
      throw ParseError("expected '<letter> -> <letters>'", lineno);
    std::string lhs = line.substr(0, arrow);
    std::string rhs = line.substr(arrow + 2);
    lhs.erase(std::remove_if(lhs.begin(), lhs.end(),
                             [](char c) { return c == ' ' || c == '\t' || c == '\r'; }),
              lhs.end());
    rhs.erase(std::remove_if(rhs.begin(), rhs.end(),
                             [](char c) { return c == ' ' || c == '\t' || c == '\r'; }),
              rhs.end());
    if (lhs.size() != 1) throw ParseError("left side must be one letter", lineno);
    Dir e;
    try {
      e = dir_from_char(lhs[0]);
    } catch (const WordError& err) {
      throw ParseError(err.what(), lineno);
    }
    if (!positive(e)) throw ParseError("left side must be a lowercase edge", lineno);
    if (rhs.empty()) throw ParseError("empty image", lineno);
    rows.emplace_back(e, rhs);
  }
  if (rows.empty()) throw ParseError("no edge lines");
  int rank = static_cast<int>(rows.size());
  std::vector<Word> images(rank);
  std::vector<bool> seen(rank, false);
  for (auto& [e, rhs] : rows) {
    if (e > rank)
      throw ParseError("edge '" + std::string(1, dir_to_char(e)) +
                       "' exceeds rank " + std::to_string(rank));
    if (seen[e - 1]) throw ParseError("duplicate edge line");
    seen[e - 1] = true;
    Word w;
    try {
      w = Word::from_string(rhs, rank);
    } catch (const WordError& err) {
      throw ParseError(err.what());
    }
    if (w.empty()) throw ParseError("image reduces to the empty word");
    if (w.str().size() != rhs.size())
      throw ParseError("image '" + rhs + "' is not freely reduced");
    images[e - 1] = std::move(w);
  }
  try {
    return RoseMap(rank, std::move(images));
  } catch (const WordError& err) {
    throw ParseError(err.what());
  }
}

std::string format_rosemap(const RoseMap& g) {
  std::string out;
  for (int e = 1; e <= g.rank(); ++e) {
    out += dir_to_char(e);
    out += " -> ";
    out += g.image(e).str();
    out += '\n';
  }
  return out;
}

DecomposeResult unfold_ideal_decomposition(const RoseMap& g,
                                           std::size_t max_steps) {
  const int r = g.rank();
  RoseMap m = g;
  std::vector<NielsenGen> peeled;  // last generator first
  std::size_t steps = 0;

  while (!m.is_identity()) {
    if (++steps > max_steps) return {{}, "step budget exceeded"};
    if (m.is_permutation())
      return {{}, "map ends in a nontrivial letter permutation"};

    // The unachieved direction of the final generator: the unique direction
    // with no Dm-preimage.
    std::vector<bool> hit(2 * r, false);
    for (int e = 1; e <= r; ++e) {
      hit[slot(m.image(e).front())] = true;
      hit[slot(rev(m.image(e).back()))] = true;
    }
    Dir du = 0;
    int missing = 0;
    for (int s = 0; s < 2 * r; ++s)
      if (!hit[s]) {
        ++missing;
        du = dir_from_slot(s);
      }
    if (missing != 1)
      return {{}, "expected exactly one unachieved direction, found " +
                      std::to_string(missing)};

    // Every occurrence of e^u must be preceded by one constant letter e^a
    // (and symmetrically for the reversed edge).
    Dir ea = 0;
    for (int e = 1; e <= r; ++e) {
      const Word& w = m.image(e);
      for (std::size_t i = 0; i < w.size(); ++i) {
        Dir before = 0;
        if (w[i] == du) {
          if (i == 0) return {{}, "unachieved direction starts an image"};
          before = w[i - 1];
        } else if (w[i] == rev(du)) {
          if (i + 1 == w.size())
            return {{}, "reversed unachieved direction ends an image"};
          before = rev(w[i + 1]);
        } else {
          continue;
        }
        if (ea == 0) {
          ea = before;
        } else if (ea != before) {
          return {{}, "no single proper full fold matches the images"};
        }
      }
    }
    if (ea == 0) return {{}, "unachieved direction never occurs in an image"};
    if (edge_index(ea) == edge_index(du))
      return {{}, "fold prefix collides with the folded edge"};

    NielsenGen gen{du, ea};
    peeled.push_back(gen);
    m = compose(gen_to_rosemap(inverse_gen(gen), r), m);
  }

  std::vector<NielsenGen> gens(peeled.rbegin(), peeled.rend());
  if (!(compose_gens(gens, r) == g))
    return {{}, "recomposition check failed"};
  return {std::move(gens), ""};
}

}  // namespace ttforge
