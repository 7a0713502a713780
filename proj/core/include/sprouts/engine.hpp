#pragma once

// Couple-based search. A couple (P+n) is the sum of position P and a nim heap
// of size n; it is losing exactly when the nimber of P is n. Multi-land
// positions are reduced by computing the nimbers of all lands but the largest
// and folding them into the nim part; single lands are searched depth-first
// over ordered children, and every losing couple is recorded in the store.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sprouts/oracle.hpp"
#include "sprouts/position.hpp"
#include "sprouts/store.hpp"

namespace sprouts {

/// `position` is a canonical key (see canonize()).
struct Couple {
  std::string position;
  int nim_part = 0;

  friend bool operator==(const Couple&, const Couple&) = default;
};

/// Simplifies and canonizes `p`.
Couple make_couple(const Position& p, int nim_part);
std::string to_string(const Couple& c);  // "<position>+<n>"
/// Inverse of to_string. Throws ParseError.
Couple parse_couple(std::string_view text);

int xor_merge(int a, int b);

/// Single-land position key "<land>]!" of every land of a canonical key.
std::vector<std::string> split_land_keys(std::string_view position_key);

/// Per region: sum over boundaries of (symbols in it)^2 * 2^(other boundaries),
/// plus the sum over boundary pairs of the product of their symbol counts.
std::uint64_t estimate_children(const Position& p);

/// Land keys sorted by lives, then by key. The last one stays in the couple,
/// the others get their nimber computed first.
std::vector<std::string> land_schedule(const Position& p);

/// Children of a single-land couple: (child(P)+n) for every position child and
/// (P+m) for m < n, in search order.
std::vector<Couple> couple_children(const Couple& c);

/// Stable sort by lives + nim part ascending, land count descending,
/// estimated children ascending, then key.
std::vector<Couple> order_children(std::vector<Couple> cs);

enum class Phase : std::uint8_t { Expanding, TryingNimber };

const char* to_string(Phase p);

/// One level of the search stack, the couple at level 0 being the root.
struct LevelView {
  int level = 0;
  std::string position;
  int nim_part = 0;
  Phase phase = Phase::Expanding;
  int trying = 0;  // candidate nimber when phase is TryingNimber
  int tried = 0;
  int total = 0;
  /// Remaining children; the first is the one being searched right now.
  std::vector<std::string> untried;
  /// Lands waiting for their nimber; the first is the one being computed.
  std::vector<std::string> lands;
};

struct Redirect {
  enum class Kind : std::uint8_t { Child, Land };
  Kind kind = Kind::Child;
  int level = 0;
  int ordinal = 0;
  /// When set, the level must still hold this couple position.
  std::optional<std::string> expect_position;
};

enum class RedirectStatus : std::uint8_t { Ok, NoOp, Stale, Invalid };

struct RedirectCheck {
  RedirectStatus status = RedirectStatus::Ok;
  std::string message;
};

class Engine;

/// Read access to the live search stack, valid during Steering::on_node.
class SearchView {
 public:
  explicit SearchView(const Engine& engine) : engine_(engine) {}
  std::size_t depth() const;
  std::uint64_t nodes() const;
  std::vector<LevelView> levels() const;
  RedirectCheck check(const Redirect& r) const;

 private:
  const Engine& engine_;
};

/// Hook called at every node entry, after the new level is pushed and before
/// the node counter moves. It may block (pause) and may ask for a redirect,
/// which the engine applies when check() reports Ok.
class Steering {
 public:
  virtual ~Steering() = default;
  virtual std::optional<Redirect> on_node(const SearchView& view) = 0;
};

struct EngineOptions {
  /// Maximum number of nodes, 0 for no limit.
  std::uint64_t budget = 0;
  /// Lands whose ordered position children are kept in memory.
  std::size_t child_cache = 1u << 16;
};

class Engine {
 public:
  explicit Engine(Store& store, EngineOptions options = {}, Steering* steering = nullptr);

  /// Throws BudgetExceeded, SearchDefect, StoreError, SearchAborted.
  Outcome compute_win_loss(const Couple& c);
  Outcome compute_win_loss(const Position& p, int nim_part);
  /// Least n with (p+n) losing. A sum of lands never exceeds its lives.
  int nimber_of(const Land& l);
  int nimber_of(const Position& p);

  std::uint64_t nodes() const { return nodes_; }
  Store& store() { return store_; }

 private:
  friend class SearchView;

  struct ChildInfo {
    std::string key;
    int lives = 0;
    int lands = 0;
    std::uint64_t estimate = 0;
  };

  struct Frame {
    std::string position;
    int nim = 0;
    Phase phase = Phase::Expanding;
    int trying = 0;
    std::vector<std::string> lands;
    std::vector<Couple> children;
    std::size_t current = 0;
  };

  struct Unwind {
    std::size_t level;
  };

  class FrameGuard;

  Outcome solve(std::string position, int nim, std::size_t level);
  int land_nimber(const std::string& land, std::size_t level);
  void enter_node();
  const std::vector<ChildInfo>& position_children(const std::string& land);
  std::vector<Couple> ordered_children(const std::string& land, int nim);
  int land_lives(const std::string& land);
  void apply(const Redirect& r);

  Store& store_;
  EngineOptions options_;
  Steering* steering_;
  std::uint64_t nodes_ = 0;
  std::vector<Frame> frames_;
  std::unordered_map<std::string, std::vector<ChildInfo>> child_cache_;
  std::unordered_map<std::string, int> lives_cache_;
};

}  // namespace sprouts
