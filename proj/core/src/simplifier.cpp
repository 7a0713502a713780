#include "sprouts/simplifier.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>

#include "pipeline.hpp"

namespace sprouts {

namespace detail {

namespace {

bool is_letter(const Work& w, int v) { return w.vertices[static_cast<std::size_t>(v)].generic < 0; }

struct Occurrence {
  int region = -1;
  int boundary = -1;
  int index = -1;
};

// First two occurrences of every vertex.
std::vector<std::array<Occurrence, 2>> first_occurrences(const Work& w, std::vector<int>& counts) {
  counts.assign(w.vertices.size(), 0);
  std::vector<std::array<Occurrence, 2>> occ(w.vertices.size());
  for (std::size_t r = 0; r < w.regions.size(); ++r) {
    const auto& bs = w.regions[r].boundaries;
    for (std::size_t b = 0; b < bs.size(); ++b) {
      for (std::size_t i = 0; i < bs[b].size(); ++i) {
        const auto v = static_cast<std::size_t>(bs[b][i]);
        if (counts[v] < 2) {
          occ[v][static_cast<std::size_t>(counts[v])] =
              Occurrence{static_cast<int>(r), static_cast<int>(b), static_cast<int>(i)};
        }
        ++counts[v];
      }
    }
  }
  return occ;
}

}  // namespace

bool delete_dead(Work& w) {
  bool changed = false;
  const std::vector<int> counts = occurrence_counts(w);
  for (WorkRegion& r : w.regions) {
    for (auto& b : r.boundaries) {
      const auto before = b.size();
      std::erase_if(b, [&](int v) {
        const auto& wv = w.vertices[static_cast<std::size_t>(v)];
        return wv.generic < 0 && counts[static_cast<std::size_t>(v)] + wv.phantom >= 3;
      });
      changed |= b.size() != before;
    }
    changed |= std::erase_if(r.boundaries, [](const auto& b) { return b.empty(); }) > 0;
  }
  changed |= std::erase_if(w.regions, [](const WorkRegion& r) { return r.boundaries.empty(); }) > 0;

  for (;;) {
    const std::vector<int> lives = vertex_lives(w);
    std::vector<char> dead(w.regions.size(), 0);
    bool any = false;
    for (std::size_t r = 0; r < w.regions.size(); ++r) {
      if (region_lives(w, r, lives) <= 1) {
        dead[r] = 1;
        any = true;
      }
    }
    if (!any) break;
    for (std::size_t r = 0; r < w.regions.size(); ++r) {
      if (!dead[r]) continue;
      for (const auto& b : w.regions[r].boundaries) {
        for (int v : b) {
          if (is_letter(w, v)) ++w.vertices[static_cast<std::size_t>(v)].phantom;
        }
      }
    }
    std::size_t r = 0;
    std::erase_if(w.regions, [&](const WorkRegion&) { return dead[r++] != 0; });
    changed = true;
  }
  return changed;
}

bool genericize(Work& w) {
  std::vector<int> counts;
  const auto occ = first_occurrences(w, counts);
  bool changed = false;
  // (region, boundary, index) of second occurrences folded into a '2'
  std::vector<Occurrence> removals;
  for (std::size_t v = 0; v < w.vertices.size(); ++v) {
    WorkVertex& wv = w.vertices[v];
    if (wv.generic >= 0) continue;
    if (counts[v] == 1) {
      wv.generic = wv.phantom > 0 ? 2 : (wv.spot ? 0 : 1);
      wv.phantom = 0;
      wv.spot = false;
      changed = true;
    } else if (counts[v] == 2) {
      const Occurrence& a = occ[v][0];
      const Occurrence& b = occ[v][1];
      if (a.region != b.region || a.boundary != b.boundary) continue;
      const int n = static_cast<int>(
          w.regions[static_cast<std::size_t>(a.region)].boundaries[static_cast<std::size_t>(a.boundary)].size());
      const bool adjacent = b.index == a.index + 1 || (a.index == 0 && b.index == n - 1);
      if (!adjacent) continue;
      wv.generic = 2;
      wv.phantom = 0;
      removals.push_back(b);
      changed = true;
    }
  }
  std::sort(removals.begin(), removals.end(), [](const Occurrence& x, const Occurrence& y) {
    return std::tie(x.region, x.boundary, y.index) < std::tie(y.region, y.boundary, x.index);
  });
  for (const Occurrence& o : removals) {
    auto& b = w.regions[static_cast<std::size_t>(o.region)].boundaries[static_cast<std::size_t>(o.boundary)];
    b.erase(b.begin() + o.index);
  }
  return changed;
}

void split_lands(Work& w) {
  const std::size_t nr = w.regions.size();
  std::vector<std::size_t> parent(nr);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> first_region(w.vertices.size(), -1);
  for (std::size_t r = 0; r < nr; ++r) {
    for (const auto& b : w.regions[r].boundaries) {
      for (int v : b) {
        if (!is_letter(w, v)) continue;
        int& fr = first_region[static_cast<std::size_t>(v)];
        if (fr < 0) {
          fr = static_cast<int>(r);
        } else {
          const std::size_t x = find(static_cast<std::size_t>(fr));
          const std::size_t y = find(r);
          if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
      }
    }
  }
  std::vector<int> land_of_root(nr, -1);
  int lands = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    int& id = land_of_root[find(r)];
    if (id < 0) id = lands++;
    w.regions[r].land = id;
  }
  std::stable_sort(w.regions.begin(), w.regions.end(),
                   [](const WorkRegion& a, const WorkRegion& b) { return a.land < b.land; });

  if (w.stage == Stage::Raw) {
    // raw lower-case letters become upper-case ones above every used id
    std::uint16_t next = 0;
    for (const WorkVertex& wv : w.vertices) {
      if (wv.generic < 0 && wv.label.kind == SymKind::Link) next = std::max<std::uint16_t>(next, wv.label.id + 1);
    }
    for (WorkVertex& wv : w.vertices) {
      if (wv.generic < 0 && wv.label.kind == SymKind::Inner) wv.label = VertexSym::link(next++);
    }
    w.stage = Stage::Simplified;
  }
}

void rename_letters(Work& w) {
  std::vector<int> counts;
  const auto occ = first_occurrences(w, counts);
  std::vector<char> assigned(w.vertices.size(), 0);
  int current_land = -1;
  std::uint16_t next_link = 0;
  for (std::size_t r = 0; r < w.regions.size(); ++r) {
    if (w.regions[r].land != current_land) {
      current_land = w.regions[r].land;
      next_link = 0;
    }
    for (std::size_t b = 0; b < w.regions[r].boundaries.size(); ++b) {
      std::uint16_t next_inner = 0;
      for (int v : w.regions[r].boundaries[b]) {
        const auto vi = static_cast<std::size_t>(v);
        WorkVertex& wv = w.vertices[vi];
        if (wv.generic >= 0 || assigned[vi]) continue;
        assigned[vi] = 1;
        const bool same_boundary = counts[vi] == 2 && occ[vi][0].region == occ[vi][1].region &&
                                   occ[vi][0].boundary == occ[vi][1].boundary;
        wv.label = same_boundary ? VertexSym::inner(next_inner++) : VertexSym::link(next_link++);
      }
    }
  }
}

bool merge_small_regions(Work& w) {
  const std::vector<int> lives = vertex_lives(w);
  bool changed = false;
  for (std::size_t r = 0; r < w.regions.size(); ++r) {
    auto& bs = w.regions[r].boundaries;
    if (bs.size() < 2 || region_lives(w, r, lives) > 3) continue;
    for (std::size_t b = 1; b < bs.size(); ++b) bs[0].insert(bs[0].end(), bs[b].begin(), bs[b].end());
    bs.resize(1);
    changed = true;
  }
  return changed;
}

void simplify_in_place(Work& w) {
  for (;;) {
    delete_dead(w);
    genericize(w);
    split_lands(w);
    rename_letters(w);
    if (!merge_small_regions(w)) break;
  }
}

}  // namespace detail

namespace {

template <typename Step>
Position apply(const Position& p, Step step) {
  detail::Work w = detail::to_work(p);
  step(w);
  return detail::from_work(w);
}

}  // namespace

Position delete_dead(const Position& p) {
  return apply(p, [](detail::Work& w) { detail::delete_dead(w); });
}

Position genericize(const Position& p) {
  return apply(p, [](detail::Work& w) { detail::genericize(w); });
}

Position split_lands(const Position& p) {
  return apply(p, [](detail::Work& w) { detail::split_lands(w); });
}

Position rename_letters(const Position& p) {
  return apply(p, [](detail::Work& w) { detail::rename_letters(w); });
}

Position merge_small_regions(const Position& p) {
  return apply(p, [](detail::Work& w) {
    if (detail::merge_small_regions(w) && w.stage == Stage::Simplified) detail::rename_letters(w);
  });
}

Position simplify(const Position& p) {
  return apply(p, [](detail::Work& w) { detail::simplify_in_place(w); });
}

}  // namespace sprouts
