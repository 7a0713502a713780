#pragma once

// Game-preserving reductions of position strings. Each step is exposed on its
// own for inspection; simplify() chains them until nothing changes.

#include "sprouts/position.hpp"

namespace sprouts {

/// Removes letters seen 3 times, then empty boundaries, then regions with at
/// most one life. Survivors of a deleted region keep a phantom occurrence.
Position delete_dead(const Position& p);

/// Replaces letters by generic vertices: '0' for a lone spot, '1' for a
/// single occurrence in a longer boundary, '2' for a letter doubled in a row
/// or a letter whose other occurrence died with its region.
Position genericize(const Position& p);

/// Groups regions sharing letters into lands. Output is land-terminated.
Position split_lands(const Position& p);

/// Lower-case letters for vertices seen twice in one boundary, named from 'a'
/// per boundary; upper-case for vertices shared by two regions, named from
/// 'A' per land, both in order of appearance.
Position rename_letters(const Position& p);

/// Concatenates the boundaries of every region holding 3 lives or less.
Position merge_small_regions(const Position& p);

/// Full pipeline to a fixpoint.
Position simplify(const Position& p);

}  // namespace sprouts
