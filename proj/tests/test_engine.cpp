#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "sprouts/canonizer.hpp"
#include "sprouts/engine.hpp"
#include "sprouts/error.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/oracle.hpp"
#include "sprouts/simplifier.hpp"

using namespace sprouts;

namespace {

int nimber(const std::string& s) {
  Store store;
  Engine e(store);
  return e.nimber_of(parse(s));
}

Outcome outcome(const std::string& s, int n) {
  Store store;
  Engine e(store);
  return e.compute_win_loss(parse(s), n);
}

}  // namespace

TEST(Engine, ComputeWinLossExamples) {
  EXPECT_EQ(outcome("A.B.}!", 0), Outcome::Loss);
  EXPECT_EQ(outcome("!", 0), Outcome::Loss);
  EXPECT_EQ(outcome("!", 5), Outcome::Win);
  EXPECT_EQ(outcome("AB.}AB.}]!", 1), Outcome::Loss);
  EXPECT_EQ(outcome("AB.}AB.}]!", 0), Outcome::Win);
}

TEST(Engine, NimberExamples) {
  EXPECT_EQ(nimber("1AB.}AB.}]!"), 3);
  EXPECT_EQ(nimber("22.}]!"), 1);
  EXPECT_EQ(nimber("12.}]!"), 0);
}

TEST(Engine, NimberOfSum) {
  EXPECT_EQ(nimber("1AB.}AB.}]22.}]!"), 2);
  EXPECT_EQ(outcome("1AB.}AB.}]22.}]!", 2), Outcome::Loss);
}

TEST(Engine, XorMerge) {
  EXPECT_EQ(xor_merge(3, 1), 2);
  EXPECT_EQ(xor_merge(7, 0), 7);
  EXPECT_EQ(xor_merge(5, 5), 0);
}

TEST(Engine, StartOutcomes) {
  const Outcome expected[] = {Outcome::Loss, Outcome::Loss, Outcome::Loss, Outcome::Win, Outcome::Win, Outcome::Win};
  for (int p = 0; p <= 5; ++p) EXPECT_EQ(outcome(render(start_position(p)), 0), expected[p]) << p;
}

TEST(Engine, LandKeysAndSchedule) {
  EXPECT_EQ(split_land_keys("22.}]AB.}AB.}]!"), (std::vector<std::string>{"22.}]!", "AB.}AB.}]!"}));
  EXPECT_TRUE(split_land_keys("!").empty());
  // 2 lives before 4 lives
  EXPECT_EQ(land_schedule(parse("0.A.}1A.}]22.}]!")), (std::vector<std::string>{"22.}]!", "0.A.}1A.}]!"}));
  EXPECT_EQ(land_schedule(parse("22.}]!")).size(), 1u);
  // equal lives: key order
  EXPECT_EQ(land_schedule(parse("AB.}AB.}]22.}]!")), (std::vector<std::string>{"22.}]!", "AB.}AB.}]!"}));
}

TEST(Engine, EstimateChildren) {
  // "AB.CD.}": 2*2*2 + 2*2*2 one-boundary terms plus 2*2
  EXPECT_EQ(estimate_children(parse("AB.CD.}AB.}CD.}]!")), 20u + 4u + 4u);
  EXPECT_EQ(estimate_children(parse("0.}]!")), 1u);
  EXPECT_EQ(estimate_children(parse("!")), 0u);
}

TEST(Engine, CoupleChildren) {
  const auto kids = couple_children(Couple{"0.}]!", 2});
  const std::set<std::pair<std::string, int>> got = [&] {
    std::set<std::pair<std::string, int>> s;
    for (const Couple& c : kids) s.emplace(c.position, c.nim_part);
    return s;
  }();
  EXPECT_EQ(got, (std::set<std::pair<std::string, int>>{{"AB.}AB.}]!", 2}, {"0.}]!", 0}, {"0.}]!", 1}}));
  EXPECT_EQ(couple_children(Couple{"!", 1}), (std::vector<Couple>{{"!", 0}}));
  for (const Couple& c : couple_children(Couple{"0.0.}]!", 0})) EXPECT_EQ(c.nim_part, 0);
}

TEST(Engine, OrderChildrenRules) {
  // lives + nim part first
  auto v = order_children({{"0.0.}]!", 0}, {"22.}]!", 0}});
  EXPECT_EQ(v.front().position, "22.}]!");
  // more lands first on equal weight, 4 lives each
  v = order_children({{"0.2.}]!", 0}, {"22.}]22.}]!", 0}});
  EXPECT_EQ(v.front().position, "22.}]22.}]!");
  // full tie: key order
  v = order_children({{"AB.}AB.}]!", 0}, {"22.}]!", 0}});
  EXPECT_EQ(v.front().position, "22.}]!");
}

TEST(Engine, OrderChildrenIsPermutation) {
  std::vector<Couple> in = couple_children(Couple{"0.0.0.}]!", 3});
  std::vector<Couple> out = order_children(in);
  auto less = [](const Couple& a, const Couple& b) {
    return std::tie(a.position, a.nim_part) < std::tie(b.position, b.nim_part);
  };
  std::sort(in.begin(), in.end(), less);
  std::sort(out.begin(), out.end(), less);
  EXPECT_EQ(in, out);
}

TEST(Engine, CoupleText) {
  EXPECT_EQ(to_string(Couple{"22.}]!", 1}), "22.}]!+1");
  EXPECT_EQ(parse_couple("22.}]!+1"), (Couple{"22.}]!", 1}));
  EXPECT_EQ(parse_couple("!+0"), (Couple{"!", 0}));
  EXPECT_THROW(parse_couple("22.}]!"), ParseError);
  EXPECT_THROW(parse_couple("22.}]!+x"), ParseError);
  EXPECT_THROW(parse_couple("22.}+1"), ParseError);
}

TEST(Engine, AgreesWithOracleNearThreeSpots) {
  Oracle oracle;
  std::set<std::string> layer = {canonize(simplify(start_position(3))).text};
  std::set<std::string> all = layer;
  for (int depth = 0; depth < 2; ++depth) {
    std::set<std::string> next;
    for (const std::string& k : layer)
      for (std::string& c : child_keys(parse(k))) next.insert(std::move(c));
    all.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  Store store;
  Engine e(store);
  for (const std::string& k : all) {
    const int truth = oracle.nimber(parse(k));
    for (int n = 0; n <= 3; ++n) {
      EXPECT_EQ(e.compute_win_loss(Couple{k, n}) == Outcome::Loss, truth == n) << k << "+" << n;
    }
  }
}

TEST(Engine, MexConsistency) {
  Oracle oracle;
  for (const char* s : {"0.0.0.}]!", "1AB.}AB.}]!", "0.AB.}1CD.}AB.CD.}]!", "0.A.}ABC.}BC.}]!"}) {
    std::set<int> kids;
    for (const std::string& c : child_keys(parse(s))) kids.insert(oracle.nimber(parse(c)));
    int mex = 0;
    while (kids.count(mex)) ++mex;
    EXPECT_EQ(nimber(s), mex) << s;
  }
}

TEST(Engine, StoredRecordsAreLosing) {
  Store store;
  Engine e(store);
  e.compute_win_loss(start_position(4), 0);
  Oracle oracle;
  for (const Record& r : store.records()) EXPECT_EQ(oracle.nimber(parse(r.key)), r.nimber) << r.key;
}

TEST(Engine, Deterministic) {
  Store a;
  Store b;
  Engine ea(a);
  Engine eb(b);
  ea.compute_win_loss(start_position(5), 0);
  eb.compute_win_loss(start_position(5), 0);
  EXPECT_EQ(ea.nodes(), eb.nodes());
  EXPECT_EQ(a.to_text(), b.to_text());
}

TEST(Engine, BudgetExceeded) {
  Store store;
  EngineOptions options;
  options.budget = 10;
  Engine e(store, options);
  EXPECT_THROW(e.compute_win_loss(start_position(5), 0), BudgetExceeded);
}

TEST(Engine, TinyCachesStillCorrect) {
  Store store;
  EngineOptions options;
  options.child_cache = 2;
  Engine e(store, options);
  EXPECT_EQ(e.compute_win_loss(start_position(6), 0), Outcome::Loss);
}

TEST(Engine, StoreConflictSurfaces) {
  Store store;
  store.put("22.}]!", 0);  // wrong on purpose
  Engine e(store);
  EXPECT_EQ(e.compute_win_loss(parse("22.}]!"), 0), Outcome::Loss);  // trusts the store
}

// ---------------------------------------------------------------------------

namespace {

struct Recorder : Steering {
  std::vector<std::vector<LevelView>> seen;
  std::optional<Redirect> next;
  std::vector<RedirectCheck> checks;
  std::optional<Redirect> on_node(const SearchView& view) override {
    seen.push_back(view.levels());
    if (next && view.depth() > static_cast<std::size_t>(next->level) + 1) {
      checks.push_back(view.check(*next));
      return std::exchange(next, std::nullopt);
    }
    return std::nullopt;
  }
};

}  // namespace

TEST(Steering, LevelsMirrorTheStack) {
  Store store;
  Recorder rec;
  Engine e(store, {}, &rec);
  e.compute_win_loss(start_position(3), 0);
  ASSERT_FALSE(rec.seen.empty());
  EXPECT_EQ(rec.seen.front().size(), 1u);
  EXPECT_EQ(rec.seen.front()[0].position, "0.0.0.}]!");
  // every level below the root holds the current child of the level above
  for (const auto& levels : rec.seen) {
    for (std::size_t i = 1; i < levels.size(); ++i) {
      const LevelView& up = levels[i - 1];
      if (up.phase == Phase::Expanding) {
        ASSERT_FALSE(up.untried.empty());
        // a child reduces itself to its unknown land once stored lands are folded in
        const Couple c = parse_couple(up.untried.front());
        const auto lands = split_land_keys(c.position);
        const bool same = c.position == levels[i].position && c.nim_part == levels[i].nim_part;
        const bool reduced = std::find(lands.begin(), lands.end(), levels[i].position) != lands.end();
        EXPECT_TRUE(same || reduced) << c.position << " vs " << levels[i].position;
      } else {
        ASSERT_FALSE(up.lands.empty());
        EXPECT_EQ(up.lands.front(), levels[i].position);
        EXPECT_EQ(up.trying, levels[i].nim_part);
      }
    }
  }
}

TEST(Steering, RedirectChecks) {
  Store store;
  Recorder rec;
  Engine e(store, {}, &rec);
  rec.next = Redirect{Redirect::Kind::Child, 0, 1, std::nullopt};
  e.compute_win_loss(start_position(3), 0);
  ASSERT_EQ(rec.checks.size(), 1u);
  EXPECT_EQ(rec.checks[0].status, RedirectStatus::Ok);

  Store s2;
  Recorder r2;
  Engine e2(s2, {}, &r2);
  r2.next = Redirect{Redirect::Kind::Child, 0, 0, std::nullopt};
  e2.compute_win_loss(start_position(3), 0);
  EXPECT_EQ(r2.checks.at(0).status, RedirectStatus::NoOp);

  Store s3;
  Recorder r3;
  Engine e3(s3, {}, &r3);
  r3.next = Redirect{Redirect::Kind::Child, 0, 999, std::nullopt};
  e3.compute_win_loss(start_position(3), 0);
  EXPECT_EQ(r3.checks.at(0).status, RedirectStatus::Invalid);

  Store s4;
  Recorder r4;
  Engine e4(s4, {}, &r4);
  r4.next = Redirect{Redirect::Kind::Land, 0, 0, std::nullopt};
  e4.compute_win_loss(start_position(3), 0);
  EXPECT_EQ(r4.checks.at(0).status, RedirectStatus::Invalid);  // single land

  Store s5;
  Recorder r5;
  Engine e5(s5, {}, &r5);
  r5.next = Redirect{Redirect::Kind::Child, 0, 1, std::string("0.0.}]!")};
  e5.compute_win_loss(start_position(3), 0);
  EXPECT_EQ(r5.checks.at(0).status, RedirectStatus::Stale);
}

TEST(Steering, RedirectKeepsResult) {
  for (int ordinal = 1; ordinal < 6; ++ordinal) {
    Store store;
    Recorder rec;
    Engine e(store, {}, &rec);
    rec.next = Redirect{Redirect::Kind::Child, 0, ordinal, std::nullopt};
    EXPECT_EQ(e.nimber_of(start_position(4)), 1);
  }
}

TEST(Steering, TwelveSpotFirstLevels) {
  struct Stop : Steering {
    std::vector<LevelView> levels;
    std::optional<Redirect> on_node(const SearchView& view) override {
      if (view.depth() == 3) {
        levels = view.levels();
        throw SearchAborted("enough");
      }
      return std::nullopt;
    }
  } stop;
  Store store;
  Engine e(store, {}, &stop);
  EXPECT_THROW(e.compute_win_loss(start_position(12), 0), SearchAborted);
  ASSERT_EQ(stop.levels.size(), 3u);
  EXPECT_EQ(stop.levels[1].position, "0.0.0.0.0.0.AB.}0.0.0.0.0.AB.}]!");
  EXPECT_EQ(stop.levels[1].nim_part, 0);
  EXPECT_EQ(stop.levels[2].position, "0.0.0.0.0.}]0.0.0.A.}0.0.0.A.}]!");
  EXPECT_EQ(stop.levels[2].nim_part, 0);
}
