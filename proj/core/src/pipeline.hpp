#pragma once

// Work-level entry points of the simplifier and move generator, used by the
// modules that chain them without round-tripping through Position.

#include <vector>

#include "work.hpp"

namespace sprouts::detail {

bool delete_dead(Work& w);
bool genericize(Work& w);
void split_lands(Work& w);
void rename_letters(Work& w);
bool merge_small_regions(Work& w);
void simplify_in_place(Work& w);

/// Replaces every generic vertex by letters with the same lives. Inner and
/// Link vertices keep their vertex index; the result is a raw Work.
Work materialize(const Work& w);

/// Raw children of a materialized Work, both move kinds.
void two_boundary_moves(const Work& w, std::vector<Work>& out);
void one_boundary_moves(const Work& w, std::vector<Work>& out);

}  // namespace sprouts::detail
