#include "sprouts/canonizer.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_set>

#include "sprouts/error.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/simplifier.hpp"

namespace sprouts {

namespace {

// Byte codes whose natural order is the canonization order.
constexpr unsigned char kGeneric = 1;   // '0' '1' '2' -> 1 2 3
constexpr unsigned char kInner = 4;     // 'a'..'z' -> 4..29
constexpr unsigned char kLink = 30;     // 'A'..'Z' -> 30..55
constexpr unsigned char kBoundaryEnd = 56;
constexpr unsigned char kRegionEnd = 57;
constexpr unsigned char kLandEnd = 58;
constexpr unsigned char kPositionEnd = 59;
// inner letters before renaming
constexpr unsigned char kRawInner = 100;
constexpr int kAlphabet = 26;

constexpr std::array<unsigned char, 256> make_rank() {
  std::array<unsigned char, 256> rank{};
  for (auto& r : rank) r = 255;
  for (int g = 0; g < 3; ++g) rank['0' + g] = static_cast<unsigned char>(kGeneric + g);
  for (int k = 0; k < kAlphabet; ++k) {
    rank['a' + k] = static_cast<unsigned char>(kInner + k);
    rank['A' + k] = static_cast<unsigned char>(kLink + k);
  }
  rank['.'] = kBoundaryEnd;
  rank['}'] = kRegionEnd;
  rank[']'] = kLandEnd;
  rank['!'] = kPositionEnd;
  return rank;
}

constexpr std::array<unsigned char, 256> kRank = make_rank();

char decode(unsigned char c) {
  if (c >= kGeneric && c < kInner) return static_cast<char>('0' + (c - kGeneric));
  if (c >= kInner && c < kLink) return static_cast<char>('a' + (c - kInner));
  if (c >= kLink && c < kBoundaryEnd) return static_cast<char>('A' + (c - kLink));
  switch (c) {
    case kBoundaryEnd: return '.';
    case kRegionEnd: return '}';
    case kLandEnd: return ']';
    default: return '!';
  }
}

using Code = std::string;  // byte string in canonization order
using EncodedRegion = std::vector<Code>;
using EncodedLand = std::vector<EncodedRegion>;

// Smallest rotation of one boundary, lower-case letters renamed by
// appearance from 'a' for each candidate rotation.
Code normalize_boundary(const Code& b, bool reversed) {
  const std::size_t n = b.size();
  Code seq = b;
  if (reversed) std::reverse(seq.begin(), seq.end());
  Code best;
  Code candidate(n, '\0');
  std::array<unsigned char, 128> names{};
  for (std::size_t r = 0; r < n; ++r) {
    names.fill(0xFF);
    unsigned char next = 0;
    bool worse = false;
    bool better = best.empty();
    for (std::size_t t = 0; t < n; ++t) {
      auto c = static_cast<unsigned char>(seq[(r + t) % n]);
      if (c >= kRawInner) {
        unsigned char& name = names[c - kRawInner];
        if (name == 0xFF) name = next++;
        c = static_cast<unsigned char>(kInner + name);
      }
      candidate[t] = static_cast<char>(c);
      if (!better) {
        const auto o = static_cast<unsigned char>(best[t]);
        if (c < o) {
          better = true;
        } else if (c > o) {
          worse = true;
          break;
        }
      }
    }
    if (!worse && better) best = candidate;
  }
  return best;
}

// Boundaries are compared together with their terminator.
bool boundary_less(const Code& a, const Code& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[i]);
  }
  // a prefix is followed by '.', which is larger than any vertex
  return a.size() > b.size();
}

Code normalize_region(const EncodedRegion& region) {
  Code best;
  for (const bool reversed : {false, true}) {
    std::vector<Code> bs;
    bs.reserve(region.size());
    for (const Code& b : region) bs.push_back(normalize_boundary(b, reversed));
    std::sort(bs.begin(), bs.end(), boundary_less);
    Code s;
    for (const Code& b : bs) {
      s += b;
      s.push_back(static_cast<char>(kBoundaryEnd));
    }
    s.push_back(static_cast<char>(kRegionEnd));
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

Code normalize_land(const EncodedLand& land) {
  std::vector<Code> regions;
  regions.reserve(land.size());
  for (const EncodedRegion& r : land) regions.push_back(normalize_region(r));
  std::sort(regions.begin(), regions.end());
  Code s;
  for (const Code& r : regions) s += r;
  s.push_back(static_cast<char>(kLandEnd));
  return s;
}

// Parses a normalized land string back, renaming upper-case letters by their
// order of appearance and turning lower-case letters into raw inner codes.
EncodedLand relabel(const Code& s) {
  std::array<unsigned char, kAlphabet> names{};
  names.fill(0xFF);
  unsigned char next = 0;
  EncodedLand land;
  EncodedRegion region;
  Code boundary;
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c == kBoundaryEnd) {
      region.push_back(std::move(boundary));
      boundary.clear();
    } else if (c == kRegionEnd) {
      land.push_back(std::move(region));
      region.clear();
    } else if (c == kLandEnd) {
      break;
    } else if (c >= kLink) {
      unsigned char& name = names[c - kLink];
      if (name == 0xFF) name = next++;
      boundary.push_back(static_cast<char>(kLink + name));
    } else if (c >= kInner) {
      boundary.push_back(static_cast<char>(kRawInner + (c - kInner)));
    } else {
      boundary.push_back(static_cast<char>(c));
    }
  }
  return land;
}

EncodedLand encode(const Land& land) {
  EncodedLand out;
  out.reserve(land.regions.size());
  for (const Region& r : land.regions) {
    EncodedRegion er;
    er.reserve(r.boundaries.size());
    for (const Boundary& b : r.boundaries) {
      Code code;
      code.reserve(b.symbols.size());
      for (const VertexSym& v : b.symbols) {
        switch (v.kind) {
          case SymKind::Generic0:
          case SymKind::Generic1:
          case SymKind::Generic2:
            code.push_back(static_cast<char>(kGeneric + v.generic_index()));
            break;
          case SymKind::Inner:
            if (v.id >= kAlphabet) throw RenderError("more than 26 lower-case letters in one boundary");
            code.push_back(static_cast<char>(kRawInner + v.id));
            break;
          case SymKind::Link:
            if (v.id >= kAlphabet) throw RenderError("more than 26 upper-case letters in one land");
            code.push_back(static_cast<char>(kLink + v.id));
            break;
        }
      }
      er.push_back(std::move(code));
    }
    out.push_back(std::move(er));
  }
  return out;
}

constexpr int kMaxIterations = 32;

Code canonize_encoded(const Land& land) {
  std::vector<Code> seen;
  Code current = normalize_land(encode(land));
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const auto hit = std::find(seen.begin(), seen.end(), current);
    if (hit != seen.end()) return *std::min_element(hit, seen.end());
    seen.push_back(current);
    current = normalize_land(relabel(current));
  }
  return *std::min_element(seen.begin(), seen.end());
}

std::string decode_all(const Code& c) {
  std::string out(c.size(), '\0');
  std::transform(c.begin(), c.end(), out.begin(), [](char ch) { return decode(static_cast<unsigned char>(ch)); });
  return out;
}

}  // namespace

bool canonical_less(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ra = kRank[static_cast<unsigned char>(a[i])];
    const auto rb = kRank[static_cast<unsigned char>(b[i])];
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

CanonicalKey canonize_land(const Land& land) { return CanonicalKey{decode_all(canonize_encoded(land))}; }

std::vector<std::string> canonical_land_keys(const Position& p) {
  std::vector<Code> lands;
  lands.reserve(p.lands.size());
  for (const Land& l : p.lands) lands.push_back(canonize_encoded(l));
  std::sort(lands.begin(), lands.end());
  std::vector<std::string> out;
  out.reserve(lands.size());
  for (const Code& c : lands) out.push_back(decode_all(c));
  return out;
}

CanonicalKey canonize(const Position& p) {
  std::string text;
  for (const std::string& l : canonical_land_keys(p)) text += l;
  text.push_back('!');
  return CanonicalKey{std::move(text)};
}

Position canonical_form(const Position& p) { return parse(canonize(p).text); }

std::uint64_t count_complete_tree(int spots, std::uint64_t max_positions) {
  const std::string root = canonize(simplify(start_position(spots))).text;
  std::unordered_set<std::string> seen{root};
  std::deque<std::string> queue{root};
  while (!queue.empty()) {
    const Position p = parse(queue.front());
    queue.pop_front();
    for (std::string& key : child_keys(p)) {
      if (seen.insert(key).second) {
        if (seen.size() > max_positions) throw BudgetExceeded("complete tree exceeds the position budget");
        queue.push_back(std::move(key));
      }
    }
  }
  return seen.size();
}

}  // namespace sprouts
