#include "ttforge/word.hpp"

#include <algorithm>

namespace ttforge {

char dir_to_char(Dir d) {
  int e = edge_index(d);
  if (e < 1 || e > kMaxRank) throw WordError("direction out of range");
  return static_cast<char>((d > 0 ? 'a' : 'A') + e - 1);
}

Dir dir_from_char(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return -(c - 'A' + 1);
  throw WordError(std::string("not an edge letter: '") + c + "'");
}

std::string dirs_to_string(std::span<const Dir> w) {
  std::string s;
  s.reserve(w.size());
  for (Dir d : w) s.push_back(dir_to_char(d));
  return s;
}

std::vector<Dir> tighten(std::span<const Dir> raw) {
  std::vector<Dir> out;
  out.reserve(raw.size());
  for (Dir d : raw) {
    if (d == 0) throw WordError("zero is not a direction");
    if (!out.empty() && out.back() == rev(d)) {
      out.pop_back();
    } else {
      out.push_back(d);
    }
  }
  return out;
}

Word::Word(std::vector<Dir> raw) : letters_(tighten(raw)) {}

Word Word::from_string(const std::string& s, int rank) {
  std::vector<Dir> raw;
  raw.reserve(s.size());
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    Dir d = dir_from_char(c);
    if (!valid_dir(d, rank)) throw WordError("edge index exceeds rank");
    raw.push_back(d);
  }
  return Word(std::move(raw));
}

Word Word::reversed() const {
  std::vector<Dir> r(letters_.rbegin(), letters_.rend());
  for (Dir& d : r) d = rev(d);
  Word w;
  w.letters_ = std::move(r);  // reversal of a reduced word is reduced
  return w;
}

bool Word::has_prefix(const Word& w) const {
  if (w.size() > size()) return false;
  return std::equal(w.begin(), w.end(), begin());
}

Word concat(const Word& a, const Word& b) {
  std::vector<Dir> raw = a.letters();
  raw.insert(raw.end(), b.begin(), b.end());
  return Word(std::move(raw));
}

std::size_t common_prefix_len(const Word& a, const Word& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

}  // namespace ttforge
