#pragma once

// Brute-force reference solver for small positions. It uses the same move
// generator, simplifier and canonizer as the engine but none of its land
// decomposition, ordering or storage: the nimber of a position is the mex of
// the nimbers of all its children, memoized by whole-position key.

#include <cstdint>
#include <string>
#include <unordered_map>

#include "sprouts/position.hpp"

namespace sprouts {

enum class Outcome : std::uint8_t { Loss, Win };

const char* to_string(Outcome o);

class Oracle {
 public:
  static constexpr int kDefaultMaxLives = 15;

  explicit Oracle(int max_lives = kDefaultMaxLives) : max_lives_(max_lives) {}

  /// Throws BudgetExceeded when `p` holds more lives than the bound.
  int nimber(const Position& p);
  Outcome outcome(const Position& p, int nim_part);

  /// Longest game from `p` in moves, through simplified children.
  int longest_game(const Position& p);

  std::size_t memo_size() const { return nimbers_.size(); }

 private:
  int nimber_of_key(const std::string& key);
  int longest_of_key(const std::string& key);

  int max_lives_;
  std::unordered_map<std::string, int> nimbers_;
  std::unordered_map<std::string, int> lengths_;
};

int brute_nimber(const Position& p, int max_lives = Oracle::kDefaultMaxLives);
Outcome brute_outcome(const Position& p, int nim_part, int max_lives = Oracle::kDefaultMaxLives);

/// Nimber computed on raw strings only: raw moves, no simplification, no
/// canonization, memoized on letters renamed by appearance. Used to check
/// that simplification preserves nimbers. Tiny positions only.
int raw_nimber(const Position& raw);

}  // namespace sprouts
