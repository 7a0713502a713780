#include "sprouts/engine.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "sprouts/canonizer.hpp"
#include "sprouts/error.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/simplifier.hpp"

namespace sprouts {

namespace {

struct SortKey {
  int weight;  // lives + nim part
  int lands;
  std::uint64_t estimate;
  const std::string* key;
  int nim;
};

bool key_less(const SortKey& a, const SortKey& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.lands != b.lands) return a.lands > b.lands;
  if (a.estimate != b.estimate) return a.estimate < b.estimate;
  if (*a.key != *b.key) return canonical_less(*a.key, *b.key);
  return a.nim < b.nim;
}

int count_lands(std::string_view key) { return static_cast<int>(std::count(key.begin(), key.end(), ']')); }

}  // namespace

Couple make_couple(const Position& p, int nim_part) { return Couple{canonize(simplify(p)).text, nim_part}; }

std::string to_string(const Couple& c) { return c.position + "+" + std::to_string(c.nim_part); }

Couple parse_couple(std::string_view text) {
  const auto plus = text.rfind('+');
  if (plus == std::string_view::npos) throw ParseError("missing '+' in couple", text.size());
  const std::string_view number = text.substr(plus + 1);
  int n = -1;
  const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), n);
  if (ec != std::errc{} || end != number.data() + number.size() || n < 0 || number.empty()) {
    throw ParseError("bad nim part in couple", plus + 1);
  }
  parse(text.substr(0, plus));
  return Couple{std::string(text.substr(0, plus)), n};
}

int xor_merge(int a, int b) { return a ^ b; }

const char* to_string(Phase p) { return p == Phase::Expanding ? "expanding" : "trying-nimber"; }

std::vector<std::string> split_land_keys(std::string_view position_key) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < position_key.size(); ++i) {
    if (position_key[i] == ']') {
      std::string land(position_key.substr(start, i + 1 - start));
      land.push_back('!');
      out.push_back(std::move(land));
      start = i + 1;
    }
  }
  return out;
}

std::uint64_t estimate_children(const Position& p) {
  std::uint64_t total = 0;
  for (const Land& l : p.lands) {
    for (const Region& r : l.regions) {
      const std::size_t k = r.boundaries.size();
      for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t ni = r.boundaries[i].symbols.size();
        total += ni * ni * (std::uint64_t{1} << std::min<std::size_t>(k - 1, 63));
        for (std::size_t j = i + 1; j < k; ++j) total += ni * r.boundaries[j].symbols.size();
      }
    }
  }
  return total;
}

std::vector<std::string> land_schedule(const Position& p) {
  std::vector<std::pair<int, std::string>> lands;
  for (const Land& l : p.lands) {
    const Position single = single_land(l);
    lands.emplace_back(total_lives(single), canonize(single).text);
  }
  std::sort(lands.begin(), lands.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return canonical_less(a.second, b.second);
  });
  std::vector<std::string> out;
  for (auto& [lives, key] : lands) out.push_back(std::move(key));
  return out;
}

std::vector<Couple> order_children(std::vector<Couple> cs) {
  struct Item {
    SortKey key;
    std::size_t index;
  };
  std::vector<Item> items;
  items.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Position p = parse(cs[i].position);
    items.push_back(Item{SortKey{total_lives(p) + cs[i].nim_part, count_lands(cs[i].position), estimate_children(p),
                                 &cs[i].position, cs[i].nim_part},
                         i});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return key_less(a.key, b.key); });
  std::vector<Couple> out;
  out.reserve(cs.size());
  for (const Item& it : items) out.push_back(cs[it.index]);
  return out;
}

std::vector<Couple> couple_children(const Couple& c) {
  std::vector<Couple> out;
  for (std::string& k : child_keys(parse(c.position))) out.push_back(Couple{std::move(k), c.nim_part});
  for (int m = 0; m < c.nim_part; ++m) out.push_back(Couple{c.position, m});
  return order_children(std::move(out));
}

// ---------------------------------------------------------------------------

std::size_t SearchView::depth() const { return engine_.frames_.size(); }

std::uint64_t SearchView::nodes() const { return engine_.nodes_; }

std::vector<LevelView> SearchView::levels() const {
  std::vector<LevelView> out;
  out.reserve(engine_.frames_.size());
  for (std::size_t i = 0; i < engine_.frames_.size(); ++i) {
    const auto& f = engine_.frames_[i];
    LevelView v;
    v.level = static_cast<int>(i);
    v.position = f.position;
    v.nim_part = f.nim;
    v.phase = f.phase;
    v.trying = f.trying;
    v.tried = static_cast<int>(f.current);
    v.total = static_cast<int>(f.children.size());
    for (std::size_t c = f.current; c < f.children.size(); ++c) v.untried.push_back(to_string(f.children[c]));
    v.lands = f.lands;
    out.push_back(std::move(v));
  }
  return out;
}

RedirectCheck SearchView::check(const Redirect& r) const {
  const auto& frames = engine_.frames_;
  if (r.level < 0 || r.ordinal < 0) return {RedirectStatus::Invalid, "negative level or ordinal"};
  // the deepest level has not been expanded yet
  if (static_cast<std::size_t>(r.level) + 1 >= frames.size()) {
    return {RedirectStatus::Stale, "level " + std::to_string(r.level) + " is not open"};
  }
  const auto& f = frames[static_cast<std::size_t>(r.level)];
  if (r.expect_position && *r.expect_position != f.position) {
    return {RedirectStatus::Stale, "level " + std::to_string(r.level) + " holds another couple"};
  }
  const auto ordinal = static_cast<std::size_t>(r.ordinal);
  if (r.kind == Redirect::Kind::Child) {
    if (f.phase != Phase::Expanding) return {RedirectStatus::Invalid, "level is computing land nimbers"};
    if (ordinal >= f.children.size() - f.current) return {RedirectStatus::Invalid, "child ordinal out of range"};
  } else {
    if (f.phase != Phase::TryingNimber) return {RedirectStatus::Invalid, "level is not in a land phase"};
    if (ordinal >= f.lands.size()) return {RedirectStatus::Invalid, "land ordinal out of range"};
  }
  if (ordinal == 0) return {RedirectStatus::NoOp, "already searching it"};
  return {RedirectStatus::Ok, {}};
}

// ---------------------------------------------------------------------------

class Engine::FrameGuard {
 public:
  FrameGuard(Engine& e, std::string position, int nim) : e_(e) {
    Frame f;
    f.position = std::move(position);
    f.nim = nim;
    e_.frames_.push_back(std::move(f));
  }
  ~FrameGuard() { e_.frames_.pop_back(); }
  FrameGuard(const FrameGuard&) = delete;
  FrameGuard& operator=(const FrameGuard&) = delete;

 private:
  Engine& e_;
};

Engine::Engine(Store& store, EngineOptions options, Steering* steering)
    : store_(store), options_(options), steering_(steering) {}

Outcome Engine::compute_win_loss(const Couple& c) {
  frames_.clear();
  return solve(c.position, c.nim_part, 0);
}

Outcome Engine::compute_win_loss(const Position& p, int nim_part) { return compute_win_loss(make_couple(p, nim_part)); }

int Engine::nimber_of(const Position& p) {
  const Couple c = make_couple(p, 0);
  const int cap = total_lives(parse(c.position));
  for (int n = 0; n <= cap; ++n) {
    if (compute_win_loss(Couple{c.position, n}) == Outcome::Loss) return n;
  }
  throw SearchDefect("no nimber up to the lives of " + c.position);
}

int Engine::nimber_of(const Land& l) { return nimber_of(single_land(l)); }

int Engine::land_lives(const std::string& land) {
  if (const auto it = lives_cache_.find(land); it != lives_cache_.end()) return it->second;
  if (lives_cache_.size() > options_.child_cache * 4) lives_cache_.clear();
  const int lives = total_lives(parse(land));
  lives_cache_.emplace(land, lives);
  return lives;
}

void Engine::enter_node() {
  if (steering_) {
    const SearchView view(*this);
    if (const auto r = steering_->on_node(view)) {
      if (view.check(*r).status == RedirectStatus::Ok) apply(*r);
    }
  }
  ++nodes_;
  if (options_.budget != 0 && nodes_ > options_.budget) {
    throw BudgetExceeded("node budget of " + std::to_string(options_.budget) + " exhausted");
  }
}

void Engine::apply(const Redirect& r) {
  const auto level = static_cast<std::size_t>(r.level);
  Frame& f = frames_[level];
  const auto ordinal = static_cast<std::size_t>(r.ordinal);
  if (r.kind == Redirect::Kind::Child) {
    const auto from = f.children.begin() + static_cast<std::ptrdiff_t>(f.current + ordinal);
    std::rotate(f.children.begin() + static_cast<std::ptrdiff_t>(f.current), from, from + 1);
  } else {
    const auto from = f.lands.begin() + static_cast<std::ptrdiff_t>(ordinal);
    std::rotate(f.lands.begin(), from, from + 1);
    f.trying = 0;
  }
  throw Unwind{level};
}

const std::vector<Engine::ChildInfo>& Engine::position_children(const std::string& land) {
  if (const auto it = child_cache_.find(land); it != child_cache_.end()) return it->second;
  if (child_cache_.size() >= options_.child_cache) child_cache_.clear();
  std::vector<ChildInfo> infos;
  for (std::string& key : child_keys(parse(land))) {
    const Position p = parse(key);
    infos.push_back(ChildInfo{std::move(key), total_lives(p), static_cast<int>(p.lands.size()), estimate_children(p)});
  }
  return child_cache_.emplace(land, std::move(infos)).first->second;
}

std::vector<Couple> Engine::ordered_children(const std::string& land, int nim) {
  const std::vector<ChildInfo>& infos = position_children(land);
  const int lives = land_lives(land);
  const std::uint64_t estimate = estimate_children(parse(land));
  std::vector<SortKey> keys;
  keys.reserve(infos.size() + static_cast<std::size_t>(nim));
  for (const ChildInfo& c : infos) keys.push_back(SortKey{c.lives + nim, c.lands, c.estimate, &c.key, nim});
  for (int m = 0; m < nim; ++m) keys.push_back(SortKey{lives + m, 1, estimate, &land, m});
  std::stable_sort(keys.begin(), keys.end(), key_less);
  std::vector<Couple> out;
  out.reserve(keys.size());
  for (const SortKey& k : keys) out.push_back(Couple{*k.key, k.nim});
  return out;
}

int Engine::land_nimber(const std::string& land, std::size_t level) {
  if (const auto v = store_.get(land)) return *v;
  const int cap = land_lives(land);
  for (int n = 0; n <= cap; ++n) {
    frames_[level].trying = n;
    if (solve(land, n, level + 1) == Outcome::Loss) return n;
  }
  throw SearchDefect("no nimber up to the lives of " + land);
}

Outcome Engine::solve(std::string position, int nim, std::size_t level) {
  FrameGuard guard(*this, position, nim);
  enter_node();

  std::vector<std::string> unknown;
  for (std::string& land : split_land_keys(position)) {
    if (const auto v = store_.get(land)) nim ^= *v;
    else unknown.push_back(std::move(land));
  }
  if (unknown.empty()) return nim == 0 ? Outcome::Loss : Outcome::Win;

  if (unknown.size() == 1) {
    position = std::move(unknown.front());
  } else {
    std::sort(unknown.begin(), unknown.end(), [this](const std::string& a, const std::string& b) {
      const int la = land_lives(a);
      const int lb = land_lives(b);
      if (la != lb) return la < lb;
      return canonical_less(a, b);
    });
    // the last land stays; it can still be reached by a land redirect
    frames_[level].phase = Phase::TryingNimber;
    frames_[level].lands = std::move(unknown);
    while (frames_[level].lands.size() > 1) {
      try {
        const std::string land = frames_[level].lands.front();
        nim ^= land_nimber(land, level);
        frames_[level].lands.erase(frames_[level].lands.begin());
      } catch (const Unwind& u) {
        if (u.level != level) throw;
      }
    }
    position = std::move(frames_[level].lands.front());
    frames_[level].lands.clear();
    if (const auto v = store_.get(position)) return (*v ^ nim) == 0 ? Outcome::Loss : Outcome::Win;
  }

  Frame& f = frames_[level];
  f.phase = Phase::Expanding;
  f.position = position;
  f.nim = nim;
  f.children = ordered_children(position, nim);
  f.current = 0;
  while (frames_[level].current < frames_[level].children.size()) {
    try {
      const Couple child = frames_[level].children[frames_[level].current];
      if (solve(child.position, child.nim_part, level + 1) == Outcome::Loss) return Outcome::Win;
      ++frames_[level].current;
    } catch (const Unwind& u) {
      if (u.level != level) throw;
    }
  }
  store_.put(position, nim);
  return Outcome::Loss;
}

}  // namespace sprouts
