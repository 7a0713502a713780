#include "sprouts/position.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "sprouts/error.hpp"
#include "work.hpp"

namespace sprouts {

namespace {

bool is_symbol_char(char c) {
  return (c >= '0' && c <= '2') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

VertexSym symbol_from_char(char c) {
  if (c >= '0' && c <= '2') return VertexSym::generic(c - '0');
  if (c >= 'a' && c <= 'z') return VertexSym::inner(static_cast<std::uint16_t>(c - 'a'));
  return VertexSym::link(static_cast<std::uint16_t>(c - 'A'));
}

char symbol_char(const VertexSym& v) {
  switch (v.kind) {
    case SymKind::Generic0: return '0';
    case SymKind::Generic1: return '1';
    case SymKind::Generic2: return '2';
    case SymKind::Inner:
      if (v.id >= 26) throw RenderError("more than 26 lower-case letters in one boundary");
      return static_cast<char>('a' + v.id);
    case SymKind::Link:
      if (v.id >= 26) throw RenderError("more than 26 upper-case letters in one land");
      return static_cast<char>('A' + v.id);
  }
  return '?';
}

void render_land(const Land& land, std::string& out) {
  for (const Region& r : land.regions) {
    for (const Boundary& b : r.boundaries) {
      for (const VertexSym& v : b.symbols) out.push_back(symbol_char(v));
      out.push_back('.');
    }
    out.push_back('}');
  }
}

void check_occurrences(const Position& p, std::string_view text) {
  // key: (land, region, boundary, kind, id) with the scope fields zeroed
  // where the stage makes the letter wider in scope
  std::map<std::tuple<int, int, int, int, int>, int> seen;
  int li = 0;
  for (const Land& land : p.lands) {
    int ri = 0;
    for (const Region& r : land.regions) {
      int bi = 0;
      for (const Boundary& b : r.boundaries) {
        for (const VertexSym& v : b.symbols) {
          if (!v.is_letter()) continue;
          std::tuple<int, int, int, int, int> key;
          if (p.stage == Stage::Raw) {
            key = {0, 0, 0, static_cast<int>(v.kind), v.id};
          } else if (v.kind == SymKind::Inner) {
            key = {li, ri, bi, 0, v.id};
          } else {
            key = {li, 0, 0, 1, v.id};
          }
          if (++seen[key] > 3) {
            throw ParseError("letter occurs more than 3 times", text.size());
          }
        }
        ++bi;
      }
      ++ri;
    }
    ++li;
  }
}

}  // namespace

std::size_t Position::region_count() const noexcept {
  std::size_t n = 0;
  for (const Land& l : lands) n += l.regions.size();
  return n;
}

Position parse(std::string_view text) {
  Position p;
  const bool land_marked = text.find(']') != std::string_view::npos;
  p.stage = land_marked ? Stage::Simplified : Stage::Raw;

  Boundary boundary;
  Region region;
  Land land;
  bool finished = false;

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (finished) throw ParseError("characters after end-of-position", i);
    if (is_symbol_char(c)) {
      boundary.symbols.push_back(symbol_from_char(c));
      continue;
    }
    switch (c) {
      case '.':
        if (boundary.symbols.empty()) throw ParseError("empty boundary", i);
        region.boundaries.push_back(std::move(boundary));
        boundary = {};
        break;
      case '}':
        if (!boundary.symbols.empty()) throw ParseError("missing end-of-boundary", i);
        if (region.boundaries.empty()) throw ParseError("empty region", i);
        land.regions.push_back(std::move(region));
        region = {};
        break;
      case ']':
        if (!boundary.symbols.empty()) throw ParseError("missing end-of-boundary", i);
        if (!region.boundaries.empty()) throw ParseError("missing end-of-region", i);
        if (land.regions.empty()) throw ParseError("empty land", i);
        p.lands.push_back(std::move(land));
        land = {};
        break;
      case '!':
        if (!boundary.symbols.empty()) throw ParseError("missing end-of-boundary", i);
        if (!region.boundaries.empty()) throw ParseError("missing end-of-region", i);
        if (!land.regions.empty()) {
          if (land_marked) throw ParseError("missing end-of-land", i);
          p.lands.push_back(std::move(land));
          land = {};
        }
        finished = true;
        break;
      default:
        throw ParseError(std::string("character outside the alphabet '") + c + "'", i);
    }
  }
  if (!finished) throw ParseError("missing end-of-position", text.size());
  if (p.lands.empty()) p.stage = Stage::Simplified;
  check_occurrences(p, text);
  return p;
}

std::string render(const Position& p) {
  std::string out;
  for (const Land& land : p.lands) {
    render_land(land, out);
    if (p.stage == Stage::Simplified) out.push_back(']');
  }
  out.push_back('!');
  return out;
}

std::string render(const Land& land) {
  std::string out;
  render_land(land, out);
  out.push_back(']');
  return out;
}

Position single_land(Land land) {
  Position p;
  p.lands.push_back(std::move(land));
  return p;
}

Position start_position(int spots) {
  Position p;
  p.stage = Stage::Raw;
  if (spots <= 0) {
    p.stage = Stage::Simplified;
    return p;
  }
  Region r;
  for (int i = 0; i < spots; ++i) {
    r.boundaries.push_back(Boundary{{VertexSym::link(static_cast<std::uint16_t>(i))}});
  }
  p.lands.push_back(Land{{std::move(r)}});
  return p;
}

int lives(const VertexSym& v, const Position& context) {
  switch (v.kind) {
    case SymKind::Generic0: return 3;
    case SymKind::Generic1: return 2;
    case SymKind::Generic2: return 1;
    default: break;
  }
  if (context.stage == Stage::Simplified) return 1;
  int count = 0;
  int phantom = 0;
  bool alone = false;
  for (const Land& land : context.lands) {
    for (const Region& r : land.regions) {
      for (const Boundary& b : r.boundaries) {
        for (const VertexSym& s : b.symbols) {
          if (s.kind == v.kind && s.id == v.id) {
            ++count;
            phantom += s.phantom;
            alone = b.symbols.size() == 1;
          }
        }
      }
    }
  }
  if (count == 1 && phantom == 0 && alone) return 3;
  return std::max(0, 3 - count - phantom);
}

int total_lives(const Position& p) {
  const detail::Work w = detail::to_work(p);
  return detail::total_lives(w, detail::vertex_lives(w));
}

int region_lives(const Position& context, std::size_t region_index) {
  const detail::Work w = detail::to_work(context);
  return detail::region_lives(w, region_index, detail::vertex_lives(w));
}

namespace detail {

Work to_work(const Position& p) {
  Work w;
  w.stage = p.stage;
  std::map<std::tuple<int, int, int, int, int>, int> index;
  int li = 0;
  for (const Land& land : p.lands) {
    int ri = 0;
    for (const Region& r : land.regions) {
      WorkRegion wr;
      wr.land = p.stage == Stage::Raw ? 0 : li;
      int bi = 0;
      for (const Boundary& b : r.boundaries) {
        std::vector<int> wb;
        wb.reserve(b.symbols.size());
        for (const VertexSym& v : b.symbols) {
          if (v.is_generic()) {
            wb.push_back(static_cast<int>(w.vertices.size()));
            w.vertices.push_back(WorkVertex{v.generic_index(), v, 0});
            continue;
          }
          std::tuple<int, int, int, int, int> key;
          if (p.stage == Stage::Raw) {
            key = {0, 0, 0, static_cast<int>(v.kind), v.id};
          } else if (v.kind == SymKind::Inner) {
            key = {li, ri, bi, 0, v.id};
          } else {
            key = {li, 0, 0, 1, v.id};
          }
          auto [it, inserted] = index.try_emplace(key, static_cast<int>(w.vertices.size()));
          if (inserted) {
            VertexSym label = v;
            label.phantom = 0;
            w.vertices.push_back(WorkVertex{-1, label, 0});
          }
          w.vertices[static_cast<std::size_t>(it->second)].phantom += v.phantom;
          wb.push_back(it->second);
        }
        wr.boundaries.push_back(std::move(wb));
        ++bi;
      }
      w.regions.push_back(std::move(wr));
      ++ri;
    }
    ++li;
  }
  if (p.stage == Stage::Raw) {
    // a raw letter seen once, alone in its boundary, is a spot
    const std::vector<int> counts = occurrence_counts(w);
    for (const WorkRegion& r : w.regions) {
      for (const auto& b : r.boundaries) {
        if (b.size() != 1) continue;
        WorkVertex& wv = w.vertices[static_cast<std::size_t>(b[0])];
        if (wv.generic < 0 && wv.phantom == 0 && counts[static_cast<std::size_t>(b[0])] == 1) wv.spot = true;
      }
    }
  }
  return w;
}

Position from_work(const Work& w) {
  Position p;
  p.stage = w.stage;
  if (w.regions.empty()) {
    p.stage = Stage::Simplified;
    return p;
  }
  // phantom marks go on the first surviving occurrence
  std::vector<char> phantom_placed(w.vertices.size(), 0);
  auto convert = [&](const WorkRegion& wr) {
    Region r;
    for (const auto& wb : wr.boundaries) {
      Boundary b;
      b.symbols.reserve(wb.size());
      for (int v : wb) {
        const WorkVertex& wv = w.vertices[static_cast<std::size_t>(v)];
        if (wv.generic >= 0) {
          b.symbols.push_back(VertexSym::generic(wv.generic));
        } else {
          VertexSym s = wv.label;
          s.phantom = 0;
          if (wv.phantom > 0 && !phantom_placed[static_cast<std::size_t>(v)]) {
            s.phantom = static_cast<std::uint8_t>(wv.phantom);
            phantom_placed[static_cast<std::size_t>(v)] = 1;
          }
          b.symbols.push_back(s);
        }
      }
      r.boundaries.push_back(std::move(b));
    }
    return r;
  };
  if (w.stage == Stage::Raw) {
    Land land;
    for (const WorkRegion& wr : w.regions) land.regions.push_back(convert(wr));
    p.lands.push_back(std::move(land));
    return p;
  }
  int max_land = 0;
  for (const WorkRegion& wr : w.regions) max_land = std::max(max_land, wr.land);
  p.lands.resize(static_cast<std::size_t>(max_land) + 1);
  for (const WorkRegion& wr : w.regions) {
    p.lands[static_cast<std::size_t>(wr.land)].regions.push_back(convert(wr));
  }
  std::erase_if(p.lands, [](const Land& l) { return l.regions.empty(); });
  return p;
}

std::vector<int> occurrence_counts(const Work& w) {
  std::vector<int> counts(w.vertices.size(), 0);
  for (const WorkRegion& r : w.regions) {
    for (const auto& b : r.boundaries) {
      for (int v : b) ++counts[static_cast<std::size_t>(v)];
    }
  }
  return counts;
}

std::vector<int> vertex_lives(const Work& w) {
  const std::size_t n = w.vertices.size();
  const std::vector<int> counts = occurrence_counts(w);
  std::vector<int> result(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const WorkVertex& wv = w.vertices[v];
    if (counts[v] == 0) continue;
    if (wv.generic >= 0) {
      result[v] = 3 - wv.generic;
    } else if (wv.spot) {
      result[v] = 3;
    } else {
      result[v] = std::max(0, 3 - counts[v] - wv.phantom);
    }
  }
  return result;
}

int region_lives(const Work& w, std::size_t region, const std::vector<int>& lives) {
  // distinct vertices: a region rarely holds more than a few dozen symbols
  std::vector<int> seen;
  int total = 0;
  for (const auto& b : w.regions[region].boundaries) {
    for (int v : b) {
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
      seen.push_back(v);
      total += lives[static_cast<std::size_t>(v)];
    }
  }
  return total;
}

int total_lives(const Work& w, const std::vector<int>& lives) {
  (void)w;
  int total = 0;
  for (int l : lives) total += l;
  return total;
}

}  // namespace detail

}  // namespace sprouts
