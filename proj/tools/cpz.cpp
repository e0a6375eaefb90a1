// cpz: command-line front end for the ranking engine.
//
// Exit codes: 0 success / entailed, 1 usage or parse failure,
// 2 inconsistent database, 3 not entailed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpz/cpz.hpp"
#include "cpz/report.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInconsistent = 2, kNotEntailed = 3 };

struct RunConfig {
  std::string input;
  std::string queries;
  std::string method = "kbar";
  std::string format = "table";
  std::string given;
  std::string conclude;
  std::size_t cap = cpz::Vocabulary::kDefaultCap;
  bool quiet = false;
};

/// Thrown after the inconsistency report has been printed.
struct Inconsistent {};

class Runner {
 public:
  explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)) {}

  cpz::DefaultDatabase load() {
    std::ifstream in(cfg_.input);
    if (!in) throw cpz::Error("cannot open '" + cfg_.input + "'");
    try {
      auto db = cpz::parse_database(in, cfg_.cap);
      if (!cfg_.quiet)
        for (const auto& w : db.warnings()) std::cerr << cfg_.input << ": warning: " << w << '\n';
      return db;
    } catch (const cpz::ParseError& e) {
      throw cpz::Error(cfg_.input + ":" + e.what());
    }
  }

  bool structured() const { return cfg_.format == "structured"; }

  void emit(const cpz::report::json& record, const std::string& table) {
    if (structured())
      std::cout << record.dump() << '\n';
    else
      std::cout << table;
  }

  /// Prints the check report and throws when the database is inconsistent.
  void require_consistent(const cpz::DefaultDatabase& db) {
    const auto outcome = cpz::z_partition(db);
    if (outcome.consistent()) return;
    emit(cpz::report::check_record(db, outcome), cpz::report::check_table(db, outcome));
    throw Inconsistent{};
  }

  int check() {
    const auto db = load();
    const auto outcome = cpz::z_partition(db);
    emit(cpz::report::check_record(db, outcome), cpz::report::check_table(db, outcome));
    return outcome.consistent() ? kOk : kInconsistent;
  }

  int rank() {
    const auto db = load();
    require_consistent(db);
    const auto method = cpz::parse_method(cfg_.method);
    const auto r = cpz::compute_ranking(db, method);
    emit(cpz::report::rank_record(r, method), cpz::report::rank_table(r, method));
    return kOk;
  }

  int cp() {
    const auto db = load();
    const auto g = cpz::extract_cp_conditions(db);
    emit(cpz::report::cp_record(g, db), cpz::report::cp_table(g, db));
    return kOk;
  }

  int query() {
    const auto db = load();
    cpz::Query q;
    q.evidence = formula(cfg_.given, db.vocabulary(), "--given");
    q.conclusion = formula(cfg_.conclude, db.vocabulary(), "--conclude");
    q.method = cpz::parse_method(cfg_.method);
    require_consistent(db);
    const auto v = cpz::judge(cpz::compute_ranking(db, q.method), q.evidence, q.conclusion);
    emit(cpz::report::query_record(db.vocabulary(), q, v), cpz::report::query_table(db.vocabulary(), q, v));
    return v.entailed ? kOk : kNotEntailed;
  }

  int compare() {
    const auto db = load();
    std::ifstream in(cfg_.queries);
    if (!in) throw cpz::Error("cannot open '" + cfg_.queries + "'");
    std::vector<cpz::Query> queries;
    try {
      queries = cpz::parse_queries(in, db.vocabulary());
    } catch (const cpz::ParseError& e) {
      throw cpz::Error(cfg_.queries + ":" + e.what());
    }
    require_consistent(db);
    const auto report = cpz::compare_methods(db, queries);
    emit(cpz::report::compare_record(db.vocabulary(), report), cpz::report::compare_table(db.vocabulary(), report));
    return kOk;
  }

 private:
  static cpz::Formula formula(const std::string& text, const cpz::Vocabulary& v, const std::string& flag) {
    try {
      return cpz::parse_formula(text, v);
    } catch (const cpz::ParseError& e) {
      throw cpz::Error(flag + ":" + e.what());
    }
  }

  RunConfig cfg_;
};

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Ranking engine for variable-strength normality defaults with ceteris-paribus conditions"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", "cpz 1.0.0");
  app.add_option("--cap", cfg.cap, "Largest vocabulary enumerated (at most 24)")->check(CLI::Range(0, 24));
  app.add_option("--format", cfg.format, "Output: table or structured (one JSON record per line)")
      ->check(CLI::IsMember({"table", "structured"}));
  app.add_flag("--quiet", cfg.quiet, "Suppress warnings");

  const auto methods = CLI::IsMember({"kplus", "kbar", "witness"});

  auto* check = app.add_subcommand("check", "Decide consistency and print the toleration layers");
  check->add_option("FILE", cfg.input, "Defaults database")->required();

  auto* rank = app.add_subcommand("rank", "Print a ranking grouped by rank");
  rank->add_option("FILE", cfg.input, "Defaults database")->required();
  rank->add_option("--method", cfg.method, "kplus, kbar or witness")->check(methods);

  auto* cp = app.add_subcommand("cp", "List the cp-conditions");
  cp->add_option("FILE", cfg.input, "Defaults database")->required();

  auto* query = app.add_subcommand("query", "Decide GIVEN |~ CONCLUSION under a ranking");
  query->add_option("FILE", cfg.input, "Defaults database")->required();
  query->add_option("--given", cfg.given, "Evidence formula")->required();
  query->add_option("--conclude", cfg.conclude, "Conclusion formula")->required();
  query->add_option("--method", cfg.method, "kplus, kbar or witness")->check(methods);

  auto* compare = app.add_subcommand("compare", "Compare kplus and kbar verdicts for a query file");
  compare->add_option("FILE", cfg.input, "Defaults database")->required();
  compare->add_option("QUERIES", cfg.queries, "One 'GIVEN |~ CONCLUSION' per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Runner runner(cfg);
  try {
    if (*check) return runner.check();
    if (*rank) return runner.rank();
    if (*cp) return runner.cp();
    if (*query) return runner.query();
    if (*compare) return runner.compare();
  } catch (const Inconsistent&) {
    return kInconsistent;
  } catch (const cpz::InconsistentDatabase& e) {
    std::cerr << "cpz: " << e.what() << '\n';
    return kInconsistent;
  } catch (const cpz::Error& e) {
    std::cerr << "cpz: " << e.what() << '\n';
    if (runner.structured()) std::cout << cpz::report::json{{"error", e.what()}}.dump() << '\n';
    return kUsage;
  }
  return kUsage;
}
