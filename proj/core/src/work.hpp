#pragma once

// Flat working form shared by the simplifier, the move generator and the
// lives accounting. Every symbol occurrence refers to a vertex index so that
// letter scoping rules (global for raw positions, per-boundary / per-land for
// simplified ones) are resolved once.

#include <vector>

#include "sprouts/position.hpp"

namespace sprouts::detail {

struct WorkVertex {
  int generic = -1;  // 0, 1, 2 for generic symbols, -1 for letters
  VertexSym label{};
  int phantom = 0;
  // untouched spot: degree 0, seen once, 3 lives
  bool spot = false;
};

struct WorkRegion {
  std::vector<std::vector<int>> boundaries;
  int land = 0;
};

struct Work {
  std::vector<WorkRegion> regions;
  std::vector<WorkVertex> vertices;
  Stage stage = Stage::Raw;
};

Work to_work(const Position& p);
Position from_work(const Work& w);

std::vector<int> occurrence_counts(const Work& w);

/// Lives per vertex index.
std::vector<int> vertex_lives(const Work& w);

int region_lives(const Work& w, std::size_t region, const std::vector<int>& lives);

int total_lives(const Work& w, const std::vector<int>& lives);

}  // namespace sprouts::detail
