#pragma once

// Pseudo-canonization of simplified positions.
//
// Two strings stand for the same position when they differ only by the first
// vertex of a boundary, the order of boundaries, regions or lands, the
// orientation of whole regions, or a renaming of letters. The canonizer picks
// a deterministic representative: boundaries are rotated to their smallest
// form (lower-case letters renamed by appearance), each region takes its
// smaller orientation, boundaries and regions are sorted, then upper-case
// letters are renamed by appearance and the whole thing is repeated. The
// sequence of land strings this produces ends in a cycle; the key is the
// smallest string of that cycle. Ordering of characters:
//
//   0 < 1 < 2 < a < ... < z < A < ... < Z < . < } < ] < !

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sprouts/position.hpp"

namespace sprouts {

struct CanonicalKey {
  std::string text;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

/// Strict order of the canonization alphabet, applied character by character.
bool canonical_less(std::string_view a, std::string_view b);

/// Key of one land, terminated by ']'.
CanonicalKey canonize_land(const Land& land);

/// Key of a whole position: canonized lands, sorted, followed by '!'.
CanonicalKey canonize(const Position& p);

/// Sorted land keys of `p`, each terminated by ']'.
std::vector<std::string> canonical_land_keys(const Position& p);

/// parse(canonize(p).text).
Position canonical_form(const Position& p);

/// Number of distinct keys met while developing the complete game tree of the
/// p-spot game, root included. Throws BudgetExceeded past `max_positions`.
std::uint64_t count_complete_tree(int spots, std::uint64_t max_positions = 5'000'000);

}  // namespace sprouts
