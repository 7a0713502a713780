#pragma once

// Check computation: a reproducible re-traversal of a solved game guided by a
// reference store. At a losing couple every child is expanded again; at a
// winning couple only the first child, in search order, that the store proves
// losing is followed. The result is a solution tree (a DAG, shared couples
// appear once) and the minimized store of the losing couples it uses.
//
// Text form of a solution:
//
//   sprouts-solution v1
//   root <position>+<n>
//   <position>+<n> <kind> <outcome> <child>+<m> ...      (sorted)
//
// kind: T terminal, L all children searched, W one losing child, S several
// lands (children are the scheduled land couples, the residual couple last).

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sprouts/engine.hpp"
#include "sprouts/store.hpp"

namespace sprouts {

enum class NodeKind : char { Terminal = 'T', Loss = 'L', Win = 'W', Sum = 'S' };

struct SolutionNode {
  Couple couple;
  NodeKind kind = NodeKind::Terminal;
  Outcome outcome = Outcome::Loss;
  std::vector<Couple> children;
};

struct Solution {
  Couple root;
  /// Keyed by (position, nim part).
  std::map<std::pair<std::string, int>, SolutionNode> nodes;

  const SolutionNode* find(const Couple& c) const;
};

struct CheckResult {
  Solution solution;
  Store minimized;
};

/// Throws CheckError when the reference store cannot prove a node or when a
/// stored record turns out wrong.
CheckResult check_compute(const Couple& root, const Store& reference);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Re-derives child sets with the move generator only and checks every node.
VerifyReport verify_solution(const Solution& s);

std::string solution_to_text(const Solution& s);
/// Throws CheckError on malformed text.
Solution solution_from_text(std::string_view text);

enum class DotLabels { Full, ReferenceNumbers };

struct DotExport {
  std::string dot;
  /// With reference numbers: one row per drawn node, "<ref> <position> <k>"
  /// when the couple is losing (its nimber is k) and "<ref> <position> != <k>"
  /// when it is winning.
  std::string legend;
  std::size_t node_count = 0;
};

/// Keeps nodes whose position holds at least `min_lives` lives. Losing couples
/// are ellipses, multi-land couples boxes, the others plain text.
DotExport export_dot(const Solution& s, int min_lives, DotLabels labels);

}  // namespace sprouts
