#include "sprouts/movegen.hpp"

#include <algorithm>
#include <unordered_set>

#include "pipeline.hpp"
#include "sprouts/canonizer.hpp"

namespace sprouts {

namespace detail {

namespace {

int fresh_link_id(const Work& w) {
  int next = 0;
  for (const WorkVertex& v : w.vertices) {
    if (v.generic < 0 && v.label.kind == SymKind::Link) next = std::max(next, v.label.id + 1);
  }
  return next;
}

int add_vertex(Work& w, int& next_label) {
  w.vertices.push_back(WorkVertex{-1, VertexSym::link(static_cast<std::uint16_t>(next_label++)), 0});
  return static_cast<int>(w.vertices.size()) - 1;
}

}  // namespace

Work materialize(const Work& w) {
  Work out = w;
  out.stage = Stage::Raw;
  int next_label = 0;
  if (w.stage == Stage::Raw) {
    next_label = fresh_link_id(w);
  } else {
    // scoped letters of a simplified position need globally unique names
    std::vector<char> named(w.vertices.size(), 0);
    for (const WorkRegion& r : out.regions) {
      for (const auto& b : r.boundaries) {
        for (int v : b) {
          auto& wv = out.vertices[static_cast<std::size_t>(v)];
          if (wv.generic >= 0 || named[static_cast<std::size_t>(v)]) continue;
          named[static_cast<std::size_t>(v)] = 1;
          wv.label = VertexSym::link(static_cast<std::uint16_t>(next_label++));
        }
      }
    }
  }
  for (WorkRegion& r : out.regions) {
    r.land = 0;
    for (auto& b : r.boundaries) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        auto& wv = out.vertices[static_cast<std::size_t>(b[i])];
        if (wv.generic < 0) continue;
        const int g = wv.generic;
        wv.generic = -1;
        wv.spot = g == 0;
        wv.label = VertexSym::link(static_cast<std::uint16_t>(next_label++));
        if (g == 2) {
          const int v = b[i];
          b.insert(b.begin() + static_cast<std::ptrdiff_t>(i) + 1, v);
          ++i;
        }
      }
    }
  }
  return out;
}

void two_boundary_moves(const Work& w, std::vector<Work>& out) {
  const std::vector<int> lives = vertex_lives(w);
  auto alive = [&](int v) { return lives[static_cast<std::size_t>(v)] >= 1; };
  auto spot = [&](int v) { return w.vertices[static_cast<std::size_t>(v)].spot; };
  const int label = fresh_link_id(w);
  for (std::size_t r = 0; r < w.regions.size(); ++r) {
    const auto& bs = w.regions[r].boundaries;
    for (std::size_t bx = 0; bx < bs.size(); ++bx) {
      for (std::size_t by = 0; by < bs.size(); ++by) {
        if (bx == by) continue;
        const auto& x = bs[bx];
        const auto& y = bs[by];
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (!alive(x[i])) continue;
          for (std::size_t j = 0; j < y.size(); ++j) {
            if (!alive(y[j])) continue;
            Work child = w;
            int next_label = label;
            const int z = add_vertex(child, next_label);
            std::vector<int> merged;
            merged.reserve(x.size() + y.size() + 4);
            merged.insert(merged.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            merged.push_back(z);
            // a spot is walked once, so its boundary has no tail
            if (!spot(y[j])) merged.insert(merged.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
            merged.insert(merged.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            merged.push_back(z);
            if (!spot(x[i])) merged.insert(merged.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
            child.vertices[static_cast<std::size_t>(x[i])].spot = false;
            child.vertices[static_cast<std::size_t>(y[j])].spot = false;
            auto& cbs = child.regions[r].boundaries;
            cbs[bx] = std::move(merged);
            cbs.erase(cbs.begin() + static_cast<std::ptrdiff_t>(by));
            out.push_back(std::move(child));
          }
        }
      }
    }
  }
}

void one_boundary_moves(const Work& w, std::vector<Work>& out) {
  const std::vector<int> lives = vertex_lives(w);
  auto life = [&](int v) { return lives[static_cast<std::size_t>(v)]; };
  const int label = fresh_link_id(w);
  for (std::size_t r = 0; r < w.regions.size(); ++r) {
    const auto& bs = w.regions[r].boundaries;
    const std::size_t others = bs.size() - 1;
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const auto& x = bs[b];
      const std::size_t n = x.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (life(x[i]) < 1) continue;
        for (std::size_t j = i; j < n; ++j) {
          if (life(x[j]) < 1) continue;
          // a vertex linked to itself needs two lives
          if (i == j && life(x[i]) < 2) continue;
          if (i != j && x[i] == x[j]) continue;

          Work base = w;
          int next_label = label;
          const int z = add_vertex(base, next_label);
          base.vertices[static_cast<std::size_t>(x[i])].spot = false;
          base.vertices[static_cast<std::size_t>(x[j])].spot = false;
          std::vector<int> side_a;
          std::vector<int> side_b;
          if (w.vertices[static_cast<std::size_t>(x[i])].spot) {
            side_a = {x[0], z};
            side_b = {x[0], z};
          } else {
            side_a.insert(side_a.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            side_a.push_back(z);
            side_a.insert(side_a.end(), x.begin() + static_cast<std::ptrdiff_t>(j), x.end());
            side_b.insert(side_b.end(), x.begin() + static_cast<std::ptrdiff_t>(i),
                          x.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            side_b.push_back(z);
          }
          const std::size_t partitions = std::size_t{1} << others;
          for (std::size_t mask = 0; mask < partitions; ++mask) {
            Work child = base;
            WorkRegion ra;
            WorkRegion rb;
            ra.boundaries.push_back(side_a);
            rb.boundaries.push_back(side_b);
            std::size_t bit = 0;
            for (std::size_t o = 0; o < bs.size(); ++o) {
              if (o == b) continue;
              ((mask >> bit) & 1U ? rb : ra).boundaries.push_back(bs[o]);
              ++bit;
            }
            child.regions[r] = std::move(ra);
            child.regions.insert(child.regions.begin() + static_cast<std::ptrdiff_t>(r) + 1, std::move(rb));
            out.push_back(std::move(child));
          }
        }
      }
    }
  }
}

}  // namespace detail

namespace {

Position relabel_by_appearance(detail::Work w) {
  std::vector<int> name(w.vertices.size(), -1);
  std::uint16_t next = 0;
  for (const auto& r : w.regions) {
    for (const auto& b : r.boundaries) {
      for (int v : b) {
        if (name[static_cast<std::size_t>(v)] < 0) name[static_cast<std::size_t>(v)] = next++;
      }
    }
  }
  for (std::size_t v = 0; v < w.vertices.size(); ++v) {
    if (name[v] >= 0) w.vertices[v].label = VertexSym::link(static_cast<std::uint16_t>(name[v]));
  }
  return detail::from_work(w);
}

detail::Work materialized_work(const Position& p) {
  return detail::materialize(detail::to_work(p));
}

std::vector<Position> to_positions(const std::vector<detail::Work>& ws) {
  std::vector<Position> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(detail::from_work(w));
  return out;
}

}  // namespace

Position materialize(const Position& p) {
  detail::Work w = materialized_work(p);
  if (p.stage == Stage::Simplified) return relabel_by_appearance(std::move(w));
  return detail::from_work(w);
}

std::vector<Position> two_boundary_moves(const Position& p) {
  std::vector<detail::Work> out;
  detail::two_boundary_moves(materialized_work(p), out);
  return to_positions(out);
}

std::vector<Position> one_boundary_moves(const Position& p) {
  std::vector<detail::Work> out;
  detail::one_boundary_moves(materialized_work(p), out);
  return to_positions(out);
}

std::vector<std::string> child_keys(const Position& p) {
  const detail::Work m = materialized_work(p);
  std::vector<detail::Work> raw;
  detail::two_boundary_moves(m, raw);
  detail::one_boundary_moves(m, raw);
  std::unordered_set<std::string> seen;
  std::vector<std::string> keys;
  for (detail::Work& w : raw) {
    detail::simplify_in_place(w);
    std::string key = canonize(detail::from_work(w)).text;
    if (seen.insert(key).second) keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) { return canonical_less(a, b); });
  return keys;
}

std::vector<Position> children(const Position& p) {
  std::vector<Position> out;
  for (const std::string& key : child_keys(p)) out.push_back(parse(key));
  return out;
}

}  // namespace sprouts
