#pragma once

// Position model of a Sprouts game and its string serialization.
//
// A position is a list of lands; a land is a list of regions; a region is a
// list of boundaries; a boundary is the cyclic walk of vertex symbols along
// one side of a connected curve component. The text form terminates each
// level with a dedicated character:
//
//   boundary '.'   region '}'   land ']'   position '!'
//
// Raw positions (as produced by moves) carry no land terminators and name
// vertices with plain letters. Simplified positions are split into lands and
// use generic vertices '0' '1' '2', lower-case letters for vertices seen twice
// in one boundary and upper-case letters for vertices shared by two regions.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sprouts {

enum class SymKind : std::uint8_t { Generic0, Generic1, Generic2, Inner, Link };

struct VertexSym {
  SymKind kind = SymKind::Generic0;
  std::uint16_t id = 0;
  // Occurrences of this vertex that disappeared together with a dead region.
  // Only meaningful on raw positions; never rendered.
  std::uint8_t phantom = 0;

  static constexpr VertexSym generic(int g) noexcept {
    return VertexSym{static_cast<SymKind>(g), 0, 0};
  }
  static constexpr VertexSym inner(std::uint16_t id) noexcept { return VertexSym{SymKind::Inner, id, 0}; }
  static constexpr VertexSym link(std::uint16_t id) noexcept { return VertexSym{SymKind::Link, id, 0}; }

  constexpr bool is_generic() const noexcept { return kind <= SymKind::Generic2; }
  constexpr bool is_letter() const noexcept { return !is_generic(); }
  constexpr int generic_index() const noexcept { return static_cast<int>(kind); }

  friend constexpr bool operator==(const VertexSym&, const VertexSym&) = default;
};

struct Boundary {
  std::vector<VertexSym> symbols;
  friend bool operator==(const Boundary&, const Boundary&) = default;
};

struct Region {
  std::vector<Boundary> boundaries;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Land {
  std::vector<Region> regions;
  friend bool operator==(const Land&, const Land&) = default;
};

/// Raw positions hold at most one land and render without ']'.
enum class Stage : std::uint8_t { Raw, Simplified };

struct Position {
  std::vector<Land> lands;
  Stage stage = Stage::Simplified;

  bool empty() const noexcept { return lands.empty(); }
  std::size_t region_count() const noexcept;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Parses the exact text grammar. The structure mirrors the text: no
/// normalization happens, so render(parse(s)) == s.
/// Throws ParseError.
Position parse(std::string_view text);

/// Throws RenderError when a letter id has no character in the alphabet.
std::string render(const Position& p);
std::string render(const Land& land);  // "<regions>]"

/// Position made of a single land (stage Simplified).
Position single_land(Land land);

/// The p-spot starting position "A.B.C.}!" (raw, letters A, B, C, ...).
Position start_position(int spots);

/// Lives of the vertex named by `v` in `context`. Letters of a raw position
/// count 3 minus their occurrences (a letter alone in its boundary and seen
/// once is an untouched spot with 3 lives).
int lives(const VertexSym& v, const Position& context);

/// Sum of lives over distinct vertices.
int total_lives(const Position& p);

/// Sum of lives over distinct vertices occurring in the region. A vertex
/// shared with another region contributes its life to both regions.
/// `region_index` is the flat index of the region across all lands of `context`.
int region_lives(const Position& context, std::size_t region_index);

}  // namespace sprouts
