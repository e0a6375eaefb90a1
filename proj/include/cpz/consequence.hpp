#pragma once

// Rank-based entailment: `given |~ conclusion` holds under a ranking when the
// conclusion is true in every minimally ranked model of the evidence.

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cpz/cp.hpp"
#include "cpz/defaults.hpp"
#include "cpz/error.hpp"
#include "cpz/parse.hpp"
#include "cpz/ranking.hpp"
#include "cpz/zplus.hpp"

namespace cpz {

enum class Method { KPlus, KBar, Witness };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::KPlus: return "kplus";
    case Method::KBar: return "kbar";
    case Method::Witness: return "witness";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "kplus") return Method::KPlus;
  if (s == "kbar") return Method::KBar;
  if (s == "witness") return Method::Witness;
  throw Error("unknown method '" + std::string(s) + "' (expected kplus, kbar or witness)");
}

inline Ranking compute_ranking(const DefaultDatabase& db, Method m) {
  switch (m) {
    case Method::KPlus: return kappa_plus(db);
    case Method::KBar: return kappa_bar(db);
    case Method::Witness: return witness_ranking(db);
  }
  throw InternalError("unhandled method");
}

struct Query {
  Formula evidence;
  Formula conclusion;
  Method method = Method::KBar;
};

/// The two ranks an entailment verdict compares.
struct Verdict {
  bool entailed = false;
  Rank with_conclusion;     ///< rank(conclusion & evidence)
  Rank without_conclusion;  ///< rank(!conclusion & evidence)
};

inline Verdict judge(const Ranking& r, const Formula& evidence, const Formula& conclusion) {
  Verdict v;
  v.with_conclusion = rank_of(r, conclusion & evidence);
  v.without_conclusion = rank_of(r, (!conclusion) & evidence);
  v.entailed = v.with_conclusion < v.without_conclusion || !rank_of(r, evidence).is_finite();
  return v;
}

/// `r` entails the query iff rank(conclusion & evidence) < rank(!conclusion & evidence)
/// or the evidence has infinite rank. The query's method is not consulted.
inline bool entails(const Ranking& r, const Query& q) { return judge(r, q.evidence, q.conclusion).entailed; }

struct Comparison {
  Formula evidence;
  Formula conclusion;
  Verdict kplus;
  Verdict kbar;
  bool divergent() const noexcept { return kplus.entailed != kbar.entailed; }
};

/// Verdicts of each (evidence, conclusion) pair under kappa-plus and kappa-bar.
inline std::vector<Comparison> compare_methods(const DefaultDatabase& db, const std::vector<Query>& queries) {
  const Ranking plus = kappa_plus(db);
  const Ranking bar = kappa_bar(db);
  std::vector<Comparison> out;
  for (const auto& q : queries)
    out.push_back({q.evidence, q.conclusion, judge(plus, q.evidence, q.conclusion), judge(bar, q.evidence, q.conclusion)});
  return out;
}

/// Reads `GIVEN |~ CONCLUSION` lines; `#` comments and blank lines are skipped.
/// Atoms must belong to `vocab`.
inline std::vector<Query> parse_queries(std::istream& in, const Vocabulary& vocab, Method method = Method::KBar) {
  std::vector<Query> out;
  Vocabulary v = vocab;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::size_t sep = line.find("|~");
    if (sep == std::string_view::npos) throw ParseError(line_no, 1, "expected '|~'");
    Query q;
    q.evidence = parse_formula(line.substr(0, sep), v, AtomPolicy::Fixed, line_no, 1);
    q.conclusion = parse_formula(line.substr(sep + 2), v, AtomPolicy::Fixed, line_no, sep + 3);
    q.method = method;
    out.push_back(std::move(q));
  }
  return out;
}

inline std::vector<Query> parse_queries(std::string_view text, const Vocabulary& vocab, Method method = Method::KBar) {
  std::istringstream in{std::string(text)};
  return parse_queries(in, vocab, method);
}

}  // namespace cpz
