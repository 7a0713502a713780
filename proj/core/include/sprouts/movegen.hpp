#pragma once

#include <string>
#include <vector>

#include "sprouts/position.hpp"

namespace sprouts {

/// Raw position equivalent to `p` where every generic vertex is a letter:
/// '0' and '1' become a letter seen once, '2' a letter doubled in place.
/// Letters of a simplified position are renamed to fresh upper-case letters.
Position materialize(const Position& p);

/// Move 1: link a vertex of one boundary to a vertex of another boundary of
/// the same region. Every ordered pair of boundaries is tried, so each move
/// shows up twice. Generic vertices are materialized first.
std::vector<Position> two_boundary_moves(const Position& p);

/// Move 2: link two vertices of the same boundary (or a spot to itself) and
/// split the other boundaries of the region between both sides in all 2^k ways.
std::vector<Position> one_boundary_moves(const Position& p);

/// All children of `p`, simplified and canonized, without duplicates, in
/// canonical key order.
std::vector<Position> children(const Position& p);

/// Canonical keys of children(p), same order.
std::vector<std::string> child_keys(const Position& p);

}  // namespace sprouts
