#pragma once

// Position strings and values quoted from the reference tables, shared by the
// unit tests and the acceptance runner.

#include <string>
#include <vector>

namespace sprouts::fixtures {

struct AppendixRow {
  int row;
  const char* position;
  // exact nimber, or -1 when only excluded values are known
  int nimber;
  std::vector<int> excluded;
};

inline const std::vector<AppendixRow>& appendix() {
  static const std::vector<AppendixRow> rows = {
      {0, "0.0.0.0.}]!", -1, {0}},
      {1, "0.0.AB.}0.AB.}]!", 0, {}},
      {2, "0.0.2.}]0.}]!", -1, {0}},
      {3, "0.0.AB.}AB.CD.}CD.}]!", -1, {0}},
      {4, "0.0.A.}1aAa.}]!", -1, {0}},
      {5, "0.0.}]0.2.}]!", -1, {0}},
      {6, "0.1aAa.}0.A.}]!", -1, {0}},
      {7, "0.AB.CD.}0.AB.}CD.}]!", -1, {0}},
      {8, "0.AB.}0.CD.}AB.CD.}]!", -1, {0}},
      {9, "0.AB.}1a1a.AB.}]!", -1, {0}},
      {10, "0.A.}0.A.}]0.}]!", -1, {0}},
      {11, "0.0.}]!", 0, {}},
      {12, "0.AB.}AB.}]!", -1, {0}},
      {13, "1a1a.}]!", -1, {0}},
      {14, "0.}]!", 0, {}},
      {15, "AB.}AB.}]!", 1, {}},
      {16, "!", 0, {}},
      {17, "ABCD.}ABCD.}]!", 0, {}},
      {18, "2AB.}AB.}]!", -1, {0, 1}},
      {19, "AB.}AC.}BC.}]!", -1, {0}},
      {20, "0.2.}]!", 1, {}},
      {21, "12.}]!", 0, {}},
      {22, "22.}]!", 1, {}},
      {23, "0.A.}0.A.}]!", 1, {}},
      {24, "0.}]12.}]!", 0, {}},
      {25, "0.AB.}2AB.}]!", 0, {}},
      {26, "0.0.2.}]!", -1, {0}},
      {27, "0.A.}2A.}]!", -1, {0}},
      {28, "0.}]22.}]!", -1, {0}},
      {29, "1aAa.}2A.}]!", -1, {0}},
      {30, "2AB.}AB.CD.}CD.}]!", -1, {0}},
      {31, "22.}]AB.}AB.}]!", 0, {}},
      {32, "0.0.}]12.}]!", 0, {}},
      {33, "0.A.}1A.}]0.}]!", 0, {}},
      {34, "0.A.}1A.}]!", 0, {}},
      {35, "0.}]AB.}AB.}]!", -1, {0}},
      {36, "12.}]1.}]!", -1, {0}},
      {37, "1A.}ABC.}BC.}]!", -1, {0}},
      {38, "1.}]!", 1, {}},
      {39, "0.AB.}2AB.}]0.}]!", 0, {}},
      {40, "0.A.}0.A.}]AB.}AB.}]!", 0, {}},
      {41, "0.A.}ABC.}BC.}]!", 0, {}},
      {42, "0.A.}ABC.}BC.}]0.}]!", 0, {}},
      {43, "12.}]AB.}AB.}]!", -1, {0}},
      {44, "ABC.}ADE.}BC.}DE.}]!", -1, {0}},
      {45, "0.AB.}1CD.}AB.CD.}]!", 0, {}},
      {46, "0.2.}]1AB.}AB.}]!", -1, {0}},
      {47, "0.AB.}2AB.}]1.}]!", -1, {0}},
      {48, "0.AB.}2CD.}AB.CD.}]!", -1, {0}},
      {49, "0.AB.}ABC.}CDE.}DE.}]!", -1, {0}},
      {50, "0.AB.}AB.}]12.}]!", -1, {0}},
      {51, "0.A.}1B.}aAaB.}]!", -1, {0}},
      {52, "0.}]1AB.}2AB.}]!", -1, {0}},
      {53, "1aAa.}1BC.}ABC.}]!", -1, {0}},
      {54, "1AB.}AB.CD.}CD.EF.}EF.}]!", -1, {0}},
      {55, "1AB.}AB.}]!", -1, {1}},
      {56, "1AB.}2AB.}]!", 1, {}},
      {57, "1.}]22.}]!", 0, {}},
      {58, "0.}]1.}]AB.}AB.}]!", 0, {}},
      {59, "12.}]1A.}2A.}]!", 0, {}},
      {60, "1A.}2A.}]!", 0, {}},
      {61, "2A.}2A.}]!", -1, {0}},
      {62, "1AB.}2AB.}]AB.}AB.}]!", 0, {}},
      {63, "2AB.}2AB.}]!", -1, {1}},
      {64, "2A.}ABC.}BC.}]!", -1, {1}},
  };
  return rows;
}

/// Simplification chain of the worked 11-spot example.
inline constexpr const char* kWorkedRaw = "AL.}AL.BNMCMN.}D.COFPGQFOCM.}E.HRISJSIUKTKUIR.FQGP.}KT.}!";
inline constexpr const char* kWorkedDead = "AL.}AL.BNN.}D.OPGQO.}E.HRSJSUTUR.QGP.}!";
inline constexpr const char* kWorkedGeneric = "AL.}AL.12.}0.2PGQ.}0.1RS1SU2UR.QGP.}!";
inline constexpr const char* kWorkedLands = "AL.}AL.12.}]0.2PGQ.}0.1RS1SU2UR.QGP.}]!";
inline constexpr const char* kWorkedRenamed = "AB.}AB.12.}]0.2ABC.}0.1ab1bc2ca.CBA.}]!";
inline constexpr const char* kWorkedShuffled = "BA2C.0.}0.2ca1ab1bc.CBA.}]AB.21.}AB.}]!";
inline constexpr const char* kWorkedCanonical = "0.1ab1bc2ca.ABC.}0.2ABC.}]12.AB.}AB.}]!";

/// Nimbers of "22.}]!", "222.}]!", ... (one more '2' each time).
inline const std::vector<int>& two_chain() {
  static const std::vector<int> v = {1, 0, 2, 1, 0, 3, 1, 0, 5};
  return v;
}

/// Distinct keys of the complete game tree for p = 2..6.
struct TreeCount {
  int spots;
  long count;
};

inline const std::vector<TreeCount>& complete_tree_reference() {
  static const std::vector<TreeCount> v = {{2, 18}, {3, 157}, {4, 1796}, {5, 24784}, {6, 393103}};
  return v;
}

/// Every well-formed string quoted anywhere, for round-trip tests.
inline std::vector<std::string> all_strings() {
  std::vector<std::string> out = {
      "A.}!", "A.B.}!", "A.B.C.}!", "A.BDCD.}!", "BDCDBE.}BE.A.}!", "A.EB.}DCDBEB.}!", kWorkedRaw, kWorkedDead,
      kWorkedGeneric, kWorkedLands, kWorkedRenamed, kWorkedShuffled, kWorkedCanonical,
      "122a2a.22.2AB.}2A.}2C.}BC.}]1122.}]!", "122a2a.22.2BA.}2A.}2C.}BC.}]1122.}]!", "0.AB.CD.}0.AB.}CD.}]!",
      "0.AB.CD.}0.CD.}AB.}]!", "ABCDEF.}ABCDEG.}FG.}]!", "ABCDEF.}ABCDGF.}EG.}]!", "ABCDEF.}ABCGEF.}DG.}]!",
      "ABCDEF.}ABGDEF.}CG.}]!", "ABCDEF.}BCDEFG.}AG.}]!", "1AB.}AB.}]22.}]!", "0.22.}]!", "0.0.0.0.0.0.0.22.}]!",
      "0.0.0.0.0.0.AB.}0.0.0.0.0.AB.}]!", "0.0.0.0.0.}]0.0.0.A.}0.0.0.A.}]!", "0.0.0.0.0.}]!",
      "0.0.0.0.AB.}AB.}]!", "0.0.0.0.}]!", "0.0.1a1a.}]!", "0.0.A.}0.0.A.}]!", "0.0.0.A.}0.0.0.A.}]!"};
  for (const AppendixRow& r : appendix()) out.emplace_back(r.position);
  return out;
}

}  // namespace sprouts::fixtures
