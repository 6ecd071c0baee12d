#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttforge {

// A direction of the rank-r rose, i.e. a signed edge symbol. Positive k is
// the oriented edge E_k (letter 'a'+k-1), negative k its reverse (uppercase).
// 0 is never a valid direction.
using Dir = int;

inline constexpr int kMaxRank = 26;

constexpr Dir rev(Dir d) noexcept { return -d; }
constexpr int edge_index(Dir d) noexcept { return d < 0 ? -d : d; }
constexpr bool positive(Dir d) noexcept { return d > 0; }

// Dense slot in [0, 2r): a=0, A=1, b=2, B=3, ...
constexpr int slot(Dir d) noexcept {
  return 2 * (edge_index(d) - 1) + (d < 0 ? 1 : 0);
}
constexpr Dir dir_from_slot(int s) noexcept {
  Dir e = s / 2 + 1;
  return (s % 2) ? -e : e;
}

inline bool valid_dir(Dir d, int rank) {
  int e = edge_index(d);
  return d != 0 && e >= 1 && e <= rank;
}

char dir_to_char(Dir d);
Dir dir_from_char(char c);          // throws on non-letter
std::string dirs_to_string(std::span<const Dir> w);

class WordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A freely reduced word in the edge symbols. Reduction is eager: every
// constructor cancels adjacent inverse pairs, so a Word never holds d,-d.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Dir> raw);
  static Word single(Dir d) { return Word(std::vector<Dir>{d}); }
  static Word from_string(const std::string& s, int rank = kMaxRank);

  bool empty() const noexcept { return letters_.empty(); }
  std::size_t size() const noexcept { return letters_.size(); }
  Dir operator[](std::size_t i) const { return letters_[i]; }
  Dir front() const { return letters_.front(); }
  Dir back() const { return letters_.back(); }
  const std::vector<Dir>& letters() const noexcept { return letters_; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  Word reversed() const;
  std::string str() const { return dirs_to_string(letters_); }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

  // w is a prefix of this word.
  bool has_prefix(const Word& w) const;

 private:
  std::vector<Dir> letters_;
};

// Free reduction of a raw letter sequence; the one place cancellation happens.
std::vector<Dir> tighten(std::span<const Dir> raw);

Word concat(const Word& a, const Word& b);

// Longest common prefix length of two words.
std::size_t common_prefix_len(const Word& a, const Word& b);

}  // namespace ttforge
