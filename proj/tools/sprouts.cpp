// Command-line front end: solving, queries, pipeline introspection, check
// computation and the explore service.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "sprouts/canonizer.hpp"
#include "sprouts/checker.hpp"
#include "sprouts/engine.hpp"
#include "sprouts/error.hpp"
#include "sprouts/explore.hpp"
#include "sprouts/movegen.hpp"
#include "sprouts/simplifier.hpp"
#include "sprouts/store.hpp"
#include "sprouts/wire.hpp"

namespace fs = std::filesystem;
using namespace sprouts;

namespace {

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParse = 3,
  kBudget = 4,
  kStore = 5,
  kCheck = 6,
  kSession = 7,
  kOther = 8,
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error("cannot write " + path);
}

std::shared_ptr<Store> open_store(const std::string& db) {
  auto store = std::make_shared<Store>();
  if (!db.empty() && fs::exists(db)) store->import_text(db);
  return store;
}

struct Options {
  int spots = 0;
  std::string position;
  int nim = 0;
  std::string db;
  std::uint64_t budget = 0;
  int serve = -1;
  std::string out;
  std::string dot;
  std::string legend;
  std::string minimized;
  int min_lives = 0;
  std::string labels = "full";
  std::string solution;
};

int cmd_solve(const Options& o) {
  auto store = open_store(o.db);
  EngineOptions engine;
  engine.budget = o.budget;
  const Position start = start_position(o.spots);
  int nimber = 0;
  std::uint64_t nodes = 0;
  if (o.serve >= 0) {
    SessionManager sessions(1);
    ExploreServer server(sessions, static_cast<std::uint16_t>(o.serve), engine);
    server.start();
    std::cerr << "explore service on 127.0.0.1:" << server.port() << "\n";
    SessionConfig config;
    config.root = make_couple(start, 0);
    config.nimber = true;
    config.engine = engine;
    config.store = store;
    const auto session = sessions.get(sessions.start(config));
    const SessionResult r = session->wait();
    nodes = session->snapshot().nodes;
    server.stop();
    if (!r.error.empty()) throw SearchAborted(r.error);
    nimber = *r.nimber;
  } else {
    Engine e(*store, engine);
    nimber = e.nimber_of(start);
    nodes = e.nodes();
  }
  if (!o.db.empty()) store->export_text(o.db);
  std::cout << to_string(nimber == 0 ? Outcome::Loss : Outcome::Win) << ", nimber " << nimber << "\n";
  std::cout << "nodes " << nodes << "\n";
  std::cout << "records " << store->size() << "\n";
  return kOk;
}

int cmd_nimber(const Options& o) {
  auto store = open_store(o.db);
  EngineOptions engine;
  engine.budget = o.budget;
  Engine e(*store, engine);
  std::cout << e.nimber_of(parse(o.position)) << "\n";
  if (!o.db.empty()) store->export_text(o.db);
  return kOk;
}

int cmd_outcome(const Options& o) {
  auto store = open_store(o.db);
  EngineOptions engine;
  engine.budget = o.budget;
  Engine e(*store, engine);
  std::cout << to_string(e.compute_win_loss(parse(o.position), o.nim)) << "\n";
  if (!o.db.empty()) store->export_text(o.db);
  return kOk;
}

int cmd_check(const Options& o) {
  const auto store = open_store(o.db);
  if (store->size() == 0) throw CheckError("reference store " + o.db + " is empty or missing");
  const Couple root = make_couple(start_position(o.spots), 0);
  const CheckResult r = check_compute(root, *store);
  write_file(o.out, solution_to_text(r.solution));
  if (!o.minimized.empty()) r.minimized.export_text(o.minimized);
  if (!o.dot.empty()) {
    const DotExport d =
        export_dot(r.solution, o.min_lives, o.labels == "full" ? DotLabels::Full : DotLabels::ReferenceNumbers);
    write_file(o.dot, d.dot);
    if (!d.legend.empty()) write_file(o.legend.empty() ? o.dot + ".legend" : o.legend, d.legend);
  }
  const SolutionNode* top = r.solution.find(root);
  std::cout << to_string(top->outcome) << "\n";
  std::cout << "nodes " << r.solution.nodes.size() << "\n";
  std::cout << "records " << r.minimized.size() << "\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  const Solution s = solution_from_text(read_file(o.solution));
  const VerifyReport report = verify_solution(s);
  if (report.ok) {
    std::cout << "pass " << s.nodes.size() << " nodes\n";
    return kOk;
  }
  for (const std::string& f : report.failures) std::cout << "fail " << f << "\n";
  std::cerr << "sprouts: verification failed (" << report.failures.size() << " problems)\n";
  return kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sprouts solver"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Outcome and nimber of the p-spot start");
  solve->add_option("--spots", o.spots, "Number of spots")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--db", o.db, "Store file, read when present and written at the end");
  solve->add_option("--budget", o.budget, "Node budget, 0 for none");
  solve->add_option("--serve", o.serve, "Serve the explore protocol on this port while solving (0 = any)")
      ->check(CLI::Range(0, 65535));

  auto* nimber = app.add_subcommand("nimber", "Nimber of a position");
  nimber->add_option("--position", o.position)->required();
  nimber->add_option("--db", o.db);
  nimber->add_option("--budget", o.budget);

  auto* outcome = app.add_subcommand("outcome", "Outcome of the couple position+nimber");
  outcome->add_option("--position", o.position)->required();
  outcome->add_option("--nimber", o.nim, "Nim part")->required()->check(CLI::NonNegativeNumber);
  outcome->add_option("--db", o.db);
  outcome->add_option("--budget", o.budget);

  auto* canon = app.add_subcommand("canonize", "Canonical key of a position");
  canon->add_option("--position", o.position)->required();
  auto* kids = app.add_subcommand("children", "Children of a position, one key per line");
  kids->add_option("--position", o.position)->required();
  auto* simp = app.add_subcommand("simplify", "Simplified form of a position");
  simp->add_option("--position", o.position)->required();

  auto* check = app.add_subcommand("check", "Check computation from a store");
  check->add_option("--spots", o.spots)->required()->check(CLI::NonNegativeNumber);
  check->add_option("--db", o.db, "Reference store")->required();
  check->add_option("--out", o.out, "Solution tree file")->required();
  check->add_option("--minimized", o.minimized, "Write the minimized store here");
  check->add_option("--dot", o.dot, "Graphviz output");
  check->add_option("--min-lives", o.min_lives, "Draw only positions with at least this many lives");
  check->add_option("--labels", o.labels)->check(CLI::IsMember({"full", "reference-numbers"}));
  check->add_option("--legend", o.legend, "Legend file for reference numbers (default DOT.legend)");

  auto* verify = app.add_subcommand("verify", "Verify a solution tree");
  verify->add_option("--solution", o.solution)->required();

  auto* count = app.add_subcommand("count-tree", "Distinct positions of the complete game tree");
  count->add_option("--spots", o.spots)->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*nimber) return cmd_nimber(o);
    if (*outcome) return cmd_outcome(o);
    if (*canon) {
      std::cout << canonize(simplify(parse(o.position))).text << "\n";
    } else if (*kids) {
      for (const std::string& k : child_keys(simplify(parse(o.position)))) std::cout << k << "\n";
    } else if (*simp) {
      std::cout << render(simplify(parse(o.position))) << "\n";
    } else if (*check) {
      return cmd_check(o);
    } else if (*verify) {
      return cmd_verify(o);
    } else if (*count) {
      std::cout << count_complete_tree(o.spots) << "\n";
    }
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "sprouts: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "sprouts: " << e.what() << "\n";
    return kBudget;
  } catch (const StoreError& e) {
    std::cerr << "sprouts: store error: " << e.what() << "\n";
    return kStore;
  } catch (const CheckError& e) {
    std::cerr << "sprouts: check failed: " << e.what() << "\n";
    return kCheck;
  } catch (const SessionError& e) {
    std::cerr << "sprouts: " << e.what() << "\n";
    return kSession;
  } catch (const std::exception& e) {
    std::cerr << "sprouts: " << e.what() << "\n";
    return kOther;
  }
}
