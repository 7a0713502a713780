#include "sprouts/checker.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include "sprouts/canonizer.hpp"
#include "sprouts/error.hpp"
#include "sprouts/position.hpp"

namespace sprouts {

const SolutionNode* Solution::find(const Couple& c) const {
  const auto it = nodes.find({c.position, c.nim_part});
  return it == nodes.end() ? nullptr : &it->second;
}

namespace {

int land_count(std::string_view key) { return static_cast<int>(std::count(key.begin(), key.end(), ']')); }

// Lands sorted as the engine schedules them, the residual last.
std::vector<std::string> scheduled_lands(const std::string& position) {
  return land_schedule(parse(position));
}

class Checker {
 public:
  explicit Checker(const Store& reference) : ref_(reference) {}

  Outcome visit(const Couple& c) {
    if (const SolutionNode* n = out_.solution.find(c)) return n->outcome;
    if (on_path_.count({c.position, c.nim_part})) throw CheckError("cycle through " + to_string(c));
    on_path_.insert({c.position, c.nim_part});
    SolutionNode node = build(c);
    on_path_.erase({c.position, c.nim_part});
    const Outcome o = node.outcome;
    if (o == Outcome::Loss && node.kind == NodeKind::Loss) out_.minimized.put(c.position, c.nim_part);
    out_.solution.nodes.emplace(std::make_pair(c.position, c.nim_part), std::move(node));
    return o;
  }

  CheckResult take(const Couple& root) {
    out_.solution.root = root;
    return std::move(out_);
  }

 private:
  std::optional<int> nimber(const std::string& land) const { return ref_.get(land); }

  // True when every land of the child is known and their nimbers cancel n.
  bool certified_loss(const Couple& c) const {
    int x = c.nim_part;
    for (const std::string& land : split_land_keys(c.position)) {
      const auto v = nimber(land);
      if (!v) return false;
      x ^= *v;
    }
    return x == 0;
  }

  SolutionNode build(const Couple& c) {
    SolutionNode node;
    node.couple = c;
    const std::vector<std::string> lands = split_land_keys(c.position);
    if (lands.empty()) {
      node.kind = NodeKind::Terminal;
      node.outcome = c.nim_part == 0 ? Outcome::Loss : Outcome::Win;
      return node;
    }
    if (lands.size() > 1) {
      node.kind = NodeKind::Sum;
      std::vector<std::string> order = scheduled_lands(c.position);
      // the search only left the last unknown land without a nimber
      const auto unknown = std::stable_partition(order.begin(), order.end(),
                                                 [&](const std::string& l) { return nimber(l).has_value(); });
      if (order.end() - unknown > 1) throw CheckError("reference store lacks the nimber of " + *unknown);
      int n = c.nim_part;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto v = nimber(order[i]);
        if (!v) throw CheckError("reference store lacks the nimber of " + order[i]);
        const Couple land{order[i], *v};
        if (visit(land) != Outcome::Loss) throw CheckError("stored nimber of " + order[i] + " does not check");
        node.children.push_back(land);
        n ^= *v;
      }
      const Couple residual{order.back(), n};
      node.outcome = visit(residual);
      node.children.push_back(residual);
      return node;
    }
    // without a record the couple can only be winning
    const auto v = nimber(c.position);
    const std::vector<Couple> children = couple_children(c);
    if (v && *v == c.nim_part) {
      node.kind = NodeKind::Loss;
      node.outcome = Outcome::Loss;
      for (const Couple& child : children) {
        if (visit(child) != Outcome::Win) {
          throw CheckError("stored record " + to_string(c) + " fails: child " + to_string(child) + " is losing");
        }
        node.children.push_back(child);
      }
      return node;
    }
    node.kind = NodeKind::Win;
    node.outcome = Outcome::Win;
    for (const Couple& child : children) {
      if (!certified_loss(child)) continue;
      if (visit(child) != Outcome::Loss) throw CheckError("child " + to_string(child) + " does not check as losing");
      node.children.push_back(child);
      return node;
    }
    throw CheckError("reference store proves no losing child of " + to_string(c));
  }

  const Store& ref_;
  CheckResult out_;
  std::set<std::pair<std::string, int>> on_path_;
};

}  // namespace

CheckResult check_compute(const Couple& root, const Store& reference) {
  Checker checker(reference);
  checker.visit(root);
  return checker.take(root);
}

// ---------------------------------------------------------------------------

VerifyReport verify_solution(const Solution& s) {
  VerifyReport report;
  auto fail = [&](const Couple& c, const std::string& why) {
    report.ok = false;
    report.failures.push_back(to_string(c) + ": " + why);
  };
  if (!s.find(s.root)) {
    report.ok = false;
    report.failures.push_back("root " + to_string(s.root) + " missing");
  }
  for (const auto& [key, node] : s.nodes) {
    const Couple& c = node.couple;
    if (c.position != key.first || c.nim_part != key.second) {
      fail(c, "node stored under another key");
      continue;
    }
    std::vector<Outcome> child_outcomes;
    bool missing = false;
    for (const Couple& child : node.children) {
      const SolutionNode* n = s.find(child);
      if (!n) {
        fail(c, "child " + to_string(child) + " missing");
        missing = true;
      } else {
        child_outcomes.push_back(n->outcome);
      }
    }
    if (missing) continue;
    const std::vector<std::string> lands = split_land_keys(c.position);
    switch (node.kind) {
      case NodeKind::Terminal: {
        if (!lands.empty()) fail(c, "terminal node with lands");
        if (!node.children.empty()) fail(c, "terminal node with children");
        const Outcome expect = c.nim_part == 0 ? Outcome::Loss : Outcome::Win;
        if (node.outcome != expect) fail(c, "wrong terminal outcome");
        break;
      }
      case NodeKind::Loss: {
        if (lands.size() != 1) {
          fail(c, "losing node must be a single land");
          break;
        }
        if (node.outcome != Outcome::Loss) fail(c, "kind L with outcome Win");
        std::vector<Couple> expected = couple_children(c);
        std::vector<Couple> got = node.children;
        auto less = [](const Couple& a, const Couple& b) {
          return std::tie(a.position, a.nim_part) < std::tie(b.position, b.nim_part);
        };
        std::sort(expected.begin(), expected.end(), less);
        std::sort(got.begin(), got.end(), less);
        if (expected != got) fail(c, "children differ from the move generator");
        for (std::size_t i = 0; i < child_outcomes.size(); ++i) {
          if (child_outcomes[i] != Outcome::Win) fail(c, "child " + to_string(node.children[i]) + " is not winning");
        }
        break;
      }
      case NodeKind::Win: {
        if (node.outcome != Outcome::Win) fail(c, "kind W with outcome Loss");
        if (node.children.size() != 1) {
          fail(c, "winning node needs exactly one child");
          break;
        }
        if (child_outcomes[0] != Outcome::Loss) fail(c, "child " + to_string(node.children[0]) + " is not losing");
        const std::vector<Couple> all = couple_children(c);
        if (std::find(all.begin(), all.end(), node.children[0]) == all.end()) {
          fail(c, to_string(node.children[0]) + " is not a child");
        }
        break;
      }
      case NodeKind::Sum: {
        if (lands.size() < 2) {
          fail(c, "sum node needs several lands");
          break;
        }
        if (node.children.size() != lands.size()) {
          fail(c, "sum node needs one child per land");
          break;
        }
        std::vector<std::string> got;
        int n = c.nim_part;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          const Couple& child = node.children[i];
          got.push_back(child.position);
          if (i + 1 < node.children.size()) {
            if (child_outcomes[i] != Outcome::Loss) fail(c, "land " + to_string(child) + " is not losing");
            n ^= child.nim_part;
          }
        }
        std::vector<std::string> want = lands;
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got) fail(c, "children are not the lands of the position");
        if (node.children.back().nim_part != n) fail(c, "residual nim part is not the xor of the others");
        if (node.outcome != child_outcomes.back()) fail(c, "outcome differs from the residual couple");
        break;
      }
    }
  }
  // every node reachable from the root, and no cycles
  std::set<std::pair<std::string, int>> done;
  std::set<std::pair<std::string, int>> path;
  std::function<void(const Couple&)> walk = [&](const Couple& c) {
    const auto key = std::make_pair(c.position, c.nim_part);
    if (done.count(key)) return;
    if (path.count(key)) {
      fail(c, "cycle");
      return;
    }
    const SolutionNode* n = s.find(c);
    if (!n) return;
    path.insert(key);
    for (const Couple& child : n->children) walk(child);
    path.erase(key);
    done.insert(key);
  };
  walk(s.root);
  for (const auto& [key, node] : s.nodes) {
    if (!done.count(key)) fail(node.couple, "not reachable from the root");
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string solution_to_text(const Solution& s) {
  std::string out = "sprouts-solution v1\nroot " + to_string(s.root) + "\n";
  std::vector<std::string> lines;
  for (const auto& [key, node] : s.nodes) {
    std::string line = to_string(node.couple);
    line += ' ';
    line += static_cast<char>(node.kind);
    line += ' ';
    line += node.outcome == Outcome::Win ? 'W' : 'L';
    for (const Couple& child : node.children) {
      line += ' ';
      line += to_string(child);
    }
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

Solution solution_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "sprouts-solution v1") throw CheckError("missing 'sprouts-solution v1' header");
  if (!std::getline(in, line) || line.rfind("root ", 0) != 0) throw CheckError("missing root line");
  Solution s;
  try {
    s.root = parse_couple(line.substr(5));
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string couple;
      std::string kind;
      std::string outcome;
      fields >> couple >> kind >> outcome;
      if (kind.size() != 1 || std::string("TLWS").find(kind[0]) == std::string::npos || outcome.size() != 1 ||
          (outcome[0] != 'W' && outcome[0] != 'L')) {
        throw CheckError("line " + std::to_string(line_no) + ": bad kind or outcome");
      }
      SolutionNode node;
      node.couple = parse_couple(couple);
      node.kind = static_cast<NodeKind>(kind[0]);
      node.outcome = outcome[0] == 'W' ? Outcome::Win : Outcome::Loss;
      std::string child;
      while (fields >> child) node.children.push_back(parse_couple(child));
      const auto key = std::make_pair(node.couple.position, node.couple.nim_part);
      if (!s.nodes.emplace(key, std::move(node)).second) {
        throw CheckError("line " + std::to_string(line_no) + ": duplicate node");
      }
    }
  } catch (const ParseError& e) {
    throw CheckError(std::string("bad couple: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (const char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

DotExport export_dot(const Solution& s, int min_lives, DotLabels labels) {
  std::map<std::pair<std::string, int>, std::size_t> ids;
  std::vector<const SolutionNode*> kept;
  for (const auto& [key, node] : s.nodes) {
    if (total_lives(parse(key.first)) < min_lives) continue;
    ids.emplace(key, kept.size() + 1);
    kept.push_back(&node);
  }
  DotExport out;
  out.node_count = kept.size();
  std::ostringstream dot;
  dot << "digraph solution {\n";
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const SolutionNode& n = *kept[i];
    const char* shape = "plaintext";
    if (land_count(n.couple.position) > 1) shape = "box";
    else if (n.outcome == Outcome::Loss) shape = "ellipse";
    const std::string label = labels == DotLabels::Full ? to_string(n.couple) : std::to_string(i + 1);
    dot << "  n" << i + 1 << " [shape=" << shape << ", label=\"" << dot_escape(label) << "\"];\n";
    if (labels == DotLabels::ReferenceNumbers) {
      // like the Appendix: the nimber when losing, "!= n" when winning
      out.legend += std::to_string(i + 1) + ' ' + n.couple.position + ' ' +
                    (n.outcome == Outcome::Loss ? "" : "!= ") + std::to_string(n.couple.nim_part) + '\n';
    }
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (const Couple& child : kept[i]->children) {
      const auto it = ids.find({child.position, child.nim_part});
      if (it != ids.end()) dot << "  n" << i + 1 << " -> n" << it->second << ";\n";
    }
  }
  dot << "}\n";
  out.dot = dot.str();
  return out;
}

}  // namespace sprouts
