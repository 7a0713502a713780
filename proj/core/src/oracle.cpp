#include "sprouts/oracle.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "sprouts/canonizer.hpp"
#include "sprouts/error.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/simplifier.hpp"

namespace sprouts {

const char* to_string(Outcome o) { return o == Outcome::Win ? "Win" : "Loss"; }

namespace {

int mex(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  int m = 0;
  for (const int v : values) {
    if (v == m) ++m;
    else if (v > m) break;
  }
  return m;
}

std::string key_of(const Position& p) { return canonize(simplify(p)).text; }

}  // namespace

int Oracle::nimber(const Position& p) {
  if (total_lives(p) > max_lives_) {
    throw BudgetExceeded("position has " + std::to_string(total_lives(p)) + " lives, oracle bound is " +
                         std::to_string(max_lives_));
  }
  return nimber_of_key(key_of(p));
}

Outcome Oracle::outcome(const Position& p, int nim_part) {
  return nimber(p) == nim_part ? Outcome::Loss : Outcome::Win;
}

int Oracle::nimber_of_key(const std::string& key) {
  if (const auto it = nimbers_.find(key); it != nimbers_.end()) return it->second;
  std::vector<int> values;
  for (const std::string& child : child_keys(parse(key))) values.push_back(nimber_of_key(child));
  const int n = mex(std::move(values));
  nimbers_.emplace(key, n);
  return n;
}

int Oracle::longest_game(const Position& p) {
  if (total_lives(p) > max_lives_) throw BudgetExceeded("position exceeds the oracle lives bound");
  return longest_of_key(key_of(p));
}

int Oracle::longest_of_key(const std::string& key) {
  if (const auto it = lengths_.find(key); it != lengths_.end()) return it->second;
  int best = 0;
  for (const std::string& child : child_keys(parse(key))) best = std::max(best, 1 + longest_of_key(child));
  lengths_.emplace(key, best);
  return best;
}

int brute_nimber(const Position& p, int max_lives) { return Oracle(max_lives).nimber(p); }

Outcome brute_outcome(const Position& p, int nim_part, int max_lives) {
  return Oracle(max_lives).outcome(p, nim_part);
}

namespace {

// Letters renamed by first appearance; the raw string is otherwise untouched.
std::string raw_key(const Position& p) {
  Position q = p;
  std::vector<int> name;
  std::uint16_t next = 0;
  for (Land& l : q.lands) {
    for (Region& r : l.regions) {
      for (Boundary& b : r.boundaries) {
        for (VertexSym& v : b.symbols) {
          if (!v.is_letter()) continue;
          if (v.id >= name.size()) name.resize(v.id + 1u, -1);
          if (name[v.id] < 0) name[v.id] = next++;
          v = VertexSym::link(static_cast<std::uint16_t>(name[v.id]));
        }
      }
    }
  }
  return render(q);
}

int raw_nimber_memo(const Position& p, std::unordered_map<std::string, int>& memo) {
  const std::string key = raw_key(p);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<int> values;
  for (const Position& c : two_boundary_moves(p)) values.push_back(raw_nimber_memo(c, memo));
  for (const Position& c : one_boundary_moves(p)) values.push_back(raw_nimber_memo(c, memo));
  const int n = mex(std::move(values));
  memo.emplace(key, n);
  return n;
}

}  // namespace

int raw_nimber(const Position& raw) {
  if (raw.stage != Stage::Raw) throw Error("raw_nimber needs a raw position");
  std::unordered_map<std::string, int> memo;
  return raw_nimber_memo(raw, memo);
}

}  // namespace sprouts
