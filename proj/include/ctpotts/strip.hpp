#pragma once

#include "ctpotts/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ctpotts {

enum class Tri : std::uint8_t { Up, Down };

/// One layer of a causal triangulation: a cyclic word of up/down triangles
/// between two circular slices, with one marked up-triangle fixing the
/// rotational frame. lower_width up-triangles (base below), upper_width
/// down-triangles (base above).
struct Strip {
  int lower_width = 0;
  int upper_width = 0;
  std::vector<Tri> word;  // length lower_width + upper_width, word[mark] == Up
  int mark = 0;

  int length() const { return lower_width + upper_width; }

  /// Throws StructureError if the invariants do not hold.
  void validate() const;

  bool operator==(const Strip&) const = default;
};

/// Cyclic sequence of slice widths (n^0, ..., n^{N-1}); index N wraps to 0.
struct WidthSequence {
  std::vector<int> widths;

  int size() const { return static_cast<int>(widths.size()); }
  int at(int i) const { return widths[((i % size()) + size()) % size()]; }
};

/// All distinct strips with the given widths under the rooting convention
/// (mark at word position 0). Count is C(n + n' - 1, n - 1). Lexicographic
/// order with Up < Down.
std::vector<Strip> enumerate_strips(int lower_width, int upper_width);

/// Exact strip count C(n + n' - 1, n - 1).
BigInt count_strips(int lower_width, int upper_width);

std::string word_to_string(const std::vector<Tri>& word);
std::vector<Tri> word_from_string(const std::string& s);

}  // namespace ctpotts
