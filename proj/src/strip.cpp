#include "ctpotts/strip.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctpotts {

void Strip::validate() const {
  if (lower_width < 1 || upper_width < 1)
    throw std::domain_error("strip widths must be >= 1");
  if (static_cast<int>(word.size()) != lower_width + upper_width)
    throw StructureError("strip word length != lower_width + upper_width");
  int ups = static_cast<int>(std::count(word.begin(), word.end(), Tri::Up));
  if (ups != lower_width)
    throw StructureError("strip word has wrong up-triangle count");
  if (mark < 0 || mark >= length() || word[mark] != Tri::Up)
    throw StructureError("strip mark must index an up-triangle");
}

BigInt count_strips(int lower_width, int upper_width) {
  if (lower_width < 1 || upper_width < 1)
    throw std::domain_error("strip widths must be >= 1");
  return binomial(lower_width + upper_width - 1, lower_width - 1);
}

std::vector<Strip> enumerate_strips(int lower_width, int upper_width) {
  if (lower_width < 1 || upper_width < 1)
    throw std::domain_error("strip widths must be >= 1");
  const int m = lower_width + upper_width;
  std::vector<Strip> out;
  // Rooting fixes the marked up-triangle at position 0; the remaining
  // lower_width-1 ups are placed freely among m-1 slots. Recursive descent
  // with Up chosen before Down gives lexicographic order.
  std::vector<Tri> word(static_cast<std::size_t>(m), Tri::Down);
  word[0] = Tri::Up;
  auto rec = [&](auto&& self, int pos, int ups_left) -> void {
    if (pos == m) {
      if (ups_left == 0) out.push_back(Strip{lower_width, upper_width, word, 0});
      return;
    }
    int slots_left = m - pos;
    if (ups_left > 0) {
      word[pos] = Tri::Up;
      self(self, pos + 1, ups_left - 1);
    }
    if (slots_left > ups_left) {
      word[pos] = Tri::Down;
      self(self, pos + 1, ups_left);
    }
  };
  rec(rec, 1, lower_width - 1);
  return out;
}

std::string word_to_string(const std::vector<Tri>& word) {
  std::string s;
  s.reserve(word.size());
  for (Tri t : word) s.push_back(t == Tri::Up ? 'U' : 'D');
  return s;
}

std::vector<Tri> word_from_string(const std::string& s) {
  std::vector<Tri> w;
  w.reserve(s.size());
  for (char c : s) {
    if (c == 'U')
      w.push_back(Tri::Up);
    else if (c == 'D')
      w.push_back(Tri::Down);
    else
      throw StructureError(std::string("bad word character '") + c + "'");
  }
  return w;
}

}  // namespace ctpotts
