#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "sprouts/canonizer.hpp"
#include "sprouts/error.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/oracle.hpp"
#include "sprouts/simplifier.hpp"

using namespace sprouts;
namespace fx = sprouts::fixtures;

namespace {
std::string key(const std::string& s) { return canonize(simplify(parse(s))).text; }
}  // namespace

TEST(CanonicalLess, AlphabetOrder) {
  const std::string order = "012abzABZ.}]!";
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    EXPECT_TRUE(canonical_less(order.substr(i, 1), order.substr(i + 1, 1))) << order[i];
    EXPECT_FALSE(canonical_less(order.substr(i + 1, 1), order.substr(i, 1)));
  }
  EXPECT_TRUE(canonical_less("AB", "ABC"));
}

TEST(Canonize, WorkedExampleMatchesReference) {
  EXPECT_EQ(canonize(parse(fx::kWorkedShuffled)).text, fx::kWorkedCanonical);
  EXPECT_EQ(canonize(parse(fx::kWorkedRenamed)).text, fx::kWorkedCanonical);
}

TEST(Canonize, LandOrder) {
  EXPECT_EQ(canonize(parse("22.}]AB.}AB.}]!")), canonize(parse("AB.}AB.}]22.}]!")));
}

TEST(Canonize, Empty) { EXPECT_EQ(canonize(parse("!")).text, "!"); }

TEST(Canonize, SingleLandKey) {
  const Position p = parse("0.A.}1A.}]!");
  EXPECT_EQ(canonize(p).text, canonize_land(p.lands[0]).text + "!");
}

TEST(Canonize, Idempotent) {
  for (const std::string& s : fx::all_strings()) {
    const std::string k = key(s);
    EXPECT_EQ(canonize(parse(k)).text, k) << s;
    EXPECT_EQ(render(canonical_form(parse(k))), k);
  }
}

TEST(Canonize, RotationAndBoundaryOrder) {
  EXPECT_EQ(key("ABC.}BCA.}]!"), key("ABC.}ABC.}]!"));
  EXPECT_EQ(key("0.1ab1bc2ca.ABC.}0.2ABC.}]!"), key("0.2ABC.}1bc2ca1ab.ABC.0.}]!"));
}

TEST(Canonize, RegionOrientation) {
  // whole region reversed
  EXPECT_EQ(key("0.AB.}1CD.}AB.CD.}]!"), key("0.BA.}1DC.}BA.DC.}]!"));
}

// The pseudo-canonization is allowed to leave equivalent strings apart, but
// such keys must still hold the same game value.
TEST(Canonize, PseudoCanonicalPairSameValue) {
  const std::string a = key("0.AB.CD.}0.AB.}CD.}]!");
  const std::string b = key("0.AB.CD.}0.CD.}AB.}]!");
  EXPECT_EQ(brute_nimber(parse(a)), brute_nimber(parse(b)));
}

TEST(Canonize, FiveEquivalentStringsAtMostFiveKeys) {
  std::set<std::string> keys;
  int nimber = -1;
  for (const char* s : {"ABCDEF.}ABCDEG.}FG.}]!", "ABCDEF.}ABCDGF.}EG.}]!", "ABCDEF.}ABCGEF.}DG.}]!",
                        "ABCDEF.}ABGDEF.}CG.}]!", "ABCDEF.}BCDEFG.}AG.}]!"}) {
    keys.insert(key(s));
    const int n = brute_nimber(parse(key(s)));
    if (nimber < 0) nimber = n;
    EXPECT_EQ(n, nimber) << s;
  }
  EXPECT_LE(keys.size(), 5u);
}

TEST(Canonize, PreservesNimber) {
  for (const fx::AppendixRow& row : fx::appendix()) {
    const Position p = parse(row.position);
    if (total_lives(p) > 9) continue;
    EXPECT_EQ(brute_nimber(canonical_form(p)), brute_nimber(p)) << row.position;
  }
}

TEST(Canonize, Deterministic) {
  for (const std::string& s : fx::all_strings()) EXPECT_EQ(key(s), key(s));
}

TEST(CountTree, SmallGames) {
  EXPECT_EQ(count_complete_tree(0), 1u);
  EXPECT_EQ(count_complete_tree(1), 3u);
  EXPECT_EQ(count_complete_tree(2), 18u);
  EXPECT_EQ(count_complete_tree(3), 172u);
}

TEST(CountTree, Budget) { EXPECT_THROW(count_complete_tree(4, 100), BudgetExceeded); }
