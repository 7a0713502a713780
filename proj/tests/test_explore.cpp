#include <gtest/gtest.h>

#include <random>

#include "sprouts/error.hpp"
#include "sprouts/explore.hpp"
#include "sprouts/oracle.hpp"

using namespace sprouts;
using namespace std::chrono_literals;

namespace {

SessionConfig config_for(int spots, bool paused, bool nimber = false) {
  SessionConfig c;
  c.root = make_couple(start_position(spots), 0);
  c.start_paused = paused;
  c.nimber = nimber;
  return c;
}

}  // namespace

TEST(Session, RunsToCompletion) {
  Session s(1, config_for(4, false, true));
  const SessionResult r = s.wait();
  EXPECT_TRUE(r.error.empty());
  EXPECT_EQ(r.nimber, 1);
  EXPECT_EQ(r.outcome, Outcome::Win);
  const SessionSnapshot snap = s.snapshot();
  EXPECT_EQ(snap.status, SessionStatus::Done);
  EXPECT_GT(snap.nodes, 0u);
  EXPECT_EQ(snap.records, s.store().size());
  EXPECT_TRUE(snap.levels.empty());
}

TEST(Session, EmptyPositionIsDoneImmediately) {
  SessionConfig c;
  c.root = Couple{"!", 0};
  Session s(1, c);
  EXPECT_TRUE(s.wait_for(5s));
  EXPECT_EQ(s.wait().outcome, Outcome::Loss);
  EXPECT_EQ(s.pause().status, AckStatus::Error);
  EXPECT_EQ(s.resume().status, AckStatus::Error);
  EXPECT_EQ(s.step().status, AckStatus::Error);
  EXPECT_EQ(s.redirect_wait(Redirect{}).status, AckStatus::Stale);
}

TEST(Session, StartPausedAndStep) {
  Session s(1, config_for(5, true));
  EXPECT_EQ(s.pause().status, AckStatus::NoOp);
  // parked before the first node
  while (s.snapshot().levels.empty()) std::this_thread::sleep_for(1ms);
  SessionSnapshot a = s.snapshot();
  EXPECT_EQ(a.status, SessionStatus::Paused);
  EXPECT_EQ(a.nodes, 0u);
  EXPECT_EQ(a.levels.size(), 1u);

  for (int i = 1; i <= 5; ++i) {
    EXPECT_EQ(s.step().status, AckStatus::Ok);
    const SessionSnapshot b = s.snapshot();
    EXPECT_EQ(b.nodes, static_cast<std::uint64_t>(i));
    EXPECT_GT(b.version, a.version);
    EXPECT_EQ(b.status, SessionStatus::Paused);
    a = b;
  }
  EXPECT_EQ(s.resume().status, AckStatus::Ok);
  EXPECT_EQ(s.resume().status, AckStatus::NoOp);
  EXPECT_EQ(s.step().status, AckStatus::Error);  // not paused
  EXPECT_EQ(s.wait().outcome, Outcome::Win);
}

TEST(Session, PauseParksTheWorker) {
  Session s(1, config_for(9, false));
  std::this_thread::sleep_for(20ms);
  ASSERT_EQ(s.pause().status, AckStatus::Ok);
  const SessionSnapshot a = s.snapshot();
  EXPECT_EQ(a.status, SessionStatus::Paused);
  std::this_thread::sleep_for(30ms);
  const SessionSnapshot b = s.snapshot();
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.version, b.version);
  s.cancel();
  EXPECT_NE(s.wait().error.find("cancel"), std::string::npos);
}

TEST(Session, RedirectStatuses) {
  Session s(1, config_for(6, true));
  for (int i = 0; i < 3; ++i) s.step();
  const SessionSnapshot snap = s.snapshot();
  ASSERT_GE(snap.levels.size(), 2u);
  const LevelView& root = snap.levels[0];
  ASSERT_GE(root.untried.size(), 2u);

  EXPECT_EQ(s.redirect_wait(Redirect{Redirect::Kind::Child, 0, 0, std::nullopt}).status, AckStatus::NoOp);
  EXPECT_EQ(s.redirect_wait(Redirect{Redirect::Kind::Child, 0, 10000, std::nullopt}).status, AckStatus::Error);
  EXPECT_EQ(s.redirect_wait(Redirect{Redirect::Kind::Child, 50, 1, std::nullopt}).status, AckStatus::Stale);
  EXPECT_EQ(s.redirect_wait(Redirect{Redirect::Kind::Child, 0, 1, std::string("0.}]!")}).status, AckStatus::Stale);
  EXPECT_EQ(s.redirect_wait(Redirect{Redirect::Kind::Land, 0, 1, std::nullopt}).status, AckStatus::Error);

  const std::string target = root.untried[1];
  EXPECT_EQ(s.redirect_wait(Redirect{Redirect::Kind::Child, 0, 1, root.position}).status, AckStatus::Ok);
  const SessionSnapshot after = s.snapshot();
  ASSERT_GE(after.levels.size(), 2u);
  EXPECT_EQ(after.levels[0].untried.front(), target);
  EXPECT_EQ(s.command_log().size(), 1u);
  s.resume();
  EXPECT_EQ(s.wait().outcome, Outcome::Loss);
}

TEST(Session, TwelveSpotLevels) {
  Session s(1, config_for(12, true));
  s.step();
  s.step();
  const SessionSnapshot snap = s.snapshot();
  ASSERT_GE(snap.levels.size(), 3u);
  EXPECT_EQ(snap.levels[1].position, "0.0.0.0.0.0.AB.}0.0.0.0.0.AB.}]!");
  EXPECT_EQ(snap.levels[2].position, "0.0.0.0.0.}]0.0.0.A.}0.0.0.A.}]!");
  s.cancel();
}

TEST(Session, ReplayReproducesRun) {
  std::mt19937 rng(7);
  for (int run = 0; run < 5; ++run) {
    const SessionConfig cfg = config_for(5, true, true);
    Session s(1, cfg);
    for (int k = 0; k < 30; ++k) {
      s.step();
      const SessionSnapshot snap = s.snapshot();
      if (snap.status == SessionStatus::Done || snap.levels.empty()) break;
      const int level = static_cast<int>(rng() % snap.levels.size());
      const LevelView& l = snap.levels[level];
      const int width = static_cast<int>(l.phase == Phase::Expanding ? l.untried.size() : l.lands.size());
      if (width > 1) {
        const auto kind = l.phase == Phase::Expanding ? Redirect::Kind::Child : Redirect::Kind::Land;
        s.redirect_wait(Redirect{kind, level, static_cast<int>(rng() % width), l.position});
      }
    }
    s.resume();
    const SessionResult r = s.wait();
    EXPECT_EQ(r.nimber, 1);
    std::uint64_t nodes = 0;
    const SessionResult again = replay(cfg, s.command_log(), &nodes);
    EXPECT_EQ(again.nimber, 1);
    EXPECT_EQ(nodes, s.snapshot().nodes);
  }
}

TEST(Session, SteeredRecordsAreTrue) {
  Session s(1, config_for(4, true));
  std::mt19937 rng(3);
  for (int k = 0; k < 40; ++k) {
    s.step();
    const SessionSnapshot snap = s.snapshot();
    if (snap.status == SessionStatus::Done || snap.levels.empty()) break;
    const LevelView& l = snap.levels.back();
    if (l.untried.size() > 1) {
      s.redirect_wait(Redirect{Redirect::Kind::Child, l.level, static_cast<int>(rng() % l.untried.size()), l.position});
    }
  }
  s.resume();
  s.wait();
  Oracle oracle;
  for (const Record& r : s.store().records()) EXPECT_EQ(oracle.nimber(parse(r.key)), r.nimber) << r.key;
}

TEST(SessionManager, LimitAndLookup) {
  SessionManager m(2);
  const auto a = m.start(config_for(12, true));
  const auto b = m.start(config_for(12, true));
  EXPECT_THROW(m.start(config_for(12, true)), SessionError);
  EXPECT_EQ(m.latest(), b);
  EXPECT_EQ(m.ids().size(), 2u);
  EXPECT_THROW(m.get(999), SessionError);
  m.get(a)->cancel();
  m.get(a)->wait();
  EXPECT_NO_THROW(m.start(config_for(1, false)));
  m.remove(b);
  EXPECT_THROW(m.get(b), SessionError);
}
