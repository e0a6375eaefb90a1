#pragma once

// Human-readable tables and line-delimited JSON records for engine results.
// Both renderings are produced from the same in-memory values; the JSON
// readers rebuild those values.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cpz/consequence.hpp"
#include "cpz/cp.hpp"
#include "cpz/defaults.hpp"
#include "cpz/ranking.hpp"
#include "cpz/zplus.hpp"

namespace cpz::report {

using json = nlohmann::json;

inline constexpr std::string_view kOrientation =
    "cp-condition 'upper > lower': upper falsifies every witness default, lower verifies every one, "
    "both agree on all other defaults; admissible rankings need rank(upper) > rank(lower) + strength";

inline json rank_json(Rank r) { return r.is_finite() ? json(r.value()) : json("inf"); }

inline Rank rank_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Rank::infinity();
  return Rank(j.get<std::uint64_t>());
}

/// Parses `b !p f` style valuations. Every atom of `v` must appear exactly once.
inline World parse_world(std::string_view text, const Vocabulary& v) {
  std::istringstream in{std::string(text)};
  std::string lit;
  std::uint32_t code = 0;
  std::vector<bool> seen(v.size(), false);
  while (in >> lit) {
    const bool negative = lit.front() == '!';
    const std::string name = negative ? lit.substr(1) : lit;
    auto idx = v.index_of(name);
    if (!idx) throw Error("unknown atom '" + name + "' in world '" + std::string(text) + "'");
    if (seen[*idx]) throw Error("atom '" + name + "' repeated in world '" + std::string(text) + "'");
    seen[*idx] = true;
    if (!negative) code |= std::uint32_t{1} << *idx;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error("world '" + std::string(text) + "' does not assign every atom");
  return World(v.size(), code);
}

/// World codes sorted by rank, then canonical order.
inline std::vector<std::uint32_t> by_rank(const Ranking& r) {
  std::vector<std::uint32_t> codes(r.size());
  for (std::uint32_t i = 0; i < codes.size(); ++i) codes[i] = i;
  std::stable_sort(codes.begin(), codes.end(), [&](auto a, auto b) { return r[a] < r[b]; });
  return codes;
}

inline json header(std::string_view command, const Vocabulary& v) {
  return json{{"command", command}, {"orientation", kOrientation}, {"vocabulary", v.atoms()}};
}

inline json to_json(const Ranking& r) {
  json rows = json::array();
  for (auto code : by_rank(r))
    rows.push_back({{"world", to_string(World(r.vocabulary().size(), code), r.vocabulary())}, {"rank", rank_json(r[code])}});
  return rows;
}

inline Ranking ranking_from_json(const json& record) {
  Vocabulary v(record.at("vocabulary").get<std::vector<std::string>>(), Vocabulary::kMaxCap);
  std::vector<Rank> ranks(v.world_count(), Rank::infinity());
  std::vector<bool> seen(ranks.size(), false);
  for (const auto& row : record.at("ranking")) {
    const World w = parse_world(row.at("world").get<std::string>(), v);
    if (seen[w.code()]) throw Error("world listed twice in ranking record");
    seen[w.code()] = true;
    ranks[w.code()] = rank_from_json(row.at("rank"));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw Error("ranking record does not list every world");
  return Ranking(std::move(v), std::move(ranks));
}

inline json to_json(const CpGraph& g, const DefaultDatabase& db) {
  json rows = json::array();
  for (const auto& e : g.edges()) {
    json witness = json::array();
    for (auto d : e.witness) witness.push_back(db.name(d));
    rows.push_back({{"upper", to_string(e.upper, db.vocabulary())},
                    {"lower", to_string(e.lower, db.vocabulary())},
                    {"strength", e.strength},
                    {"witness", witness}});
  }
  return rows;
}

/// Rebuilds the conditions of a `cp` record; witness names are resolved against `db`.
inline std::vector<CpCondition> cp_conditions_from_json(const json& record, const DefaultDatabase& db) {
  const Vocabulary& v = db.vocabulary();
  if (record.at("vocabulary").get<std::vector<std::string>>() != v.atoms())
    throw VocabularyMismatch("cp record vocabulary differs from database");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < db.size(); ++i) index[db.name(i)] = i;
  std::vector<CpCondition> out;
  for (const auto& row : record.at("conditions")) {
    CpCondition c;
    c.upper = parse_world(row.at("upper").get<std::string>(), v);
    c.lower = parse_world(row.at("lower").get<std::string>(), v);
    c.strength = row.at("strength").get<Strength>();
    for (const auto& name : row.at("witness")) {
      auto it = index.find(name.get<std::string>());
      if (it == index.end()) throw Error("unknown default '" + name.get<std::string>() + "' in cp record");
      c.witness.push_back(it->second);
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline json check_record(const DefaultDatabase& db, const PartitionOutcome& p) {
  json j = header("check", db.vocabulary());
  j["consistent"] = p.consistent();
  json layers = json::array();
  if (p.partition) {
    for (std::size_t i = 0; i < p.partition->layers.size(); ++i) {
      const Layer& l = p.partition->layers[i];
      json names = json::array();
      for (auto d : l.defaults) names.push_back(db.name(d));
      layers.push_back({{"index", i}, {"defaults", names}, {"max_strength", l.max_strength}});
    }
  }
  j["layers"] = layers;
  json residual = json::array();
  for (auto d : p.residual) residual.push_back(db.name(d));
  j["residual"] = residual;
  return j;
}

inline json rank_record(const Ranking& r, Method m) {
  json j = header("rank", r.vocabulary());
  j["method"] = to_string(m);
  j["ranking"] = to_json(r);
  return j;
}

inline json cp_record(const CpGraph& g, const DefaultDatabase& db) {
  json j = header("cp", db.vocabulary());
  j["conditions"] = to_json(g, db);
  return j;
}

inline json verdict_json(const Verdict& v) {
  return {{"entailed", v.entailed}, {"rank_with", rank_json(v.with_conclusion)}, {"rank_without", rank_json(v.without_conclusion)}};
}

inline json query_record(const Vocabulary& vocab, const Query& q, const Verdict& v) {
  json j = header("query", vocab);
  j["method"] = to_string(q.method);
  j["given"] = to_string(q.evidence, vocab);
  j["conclude"] = to_string(q.conclusion, vocab);
  j.update(verdict_json(v));
  return j;
}

inline json compare_record(const Vocabulary& vocab, const std::vector<Comparison>& cs) {
  json j = header("compare", vocab);
  json rows = json::array();
  std::size_t divergent = 0;
  for (const auto& c : cs) {
    divergent += c.divergent() ? 1 : 0;
    rows.push_back({{"given", to_string(c.evidence, vocab)},
                    {"conclude", to_string(c.conclusion, vocab)},
                    {"kplus", verdict_json(c.kplus)},
                    {"kbar", verdict_json(c.kbar)},
                    {"divergent", c.divergent()}});
  }
  j["queries"] = rows;
  j["divergences"] = divergent;
  return j;
}

// ---- tables ----------------------------------------------------------------

inline std::string check_table(const DefaultDatabase& db, const PartitionOutcome& p) {
  std::ostringstream os;
  if (p.consistent()) {
    os << "CONSISTENT (" << p.partition->layers.size() << " layer" << (p.partition->layers.size() == 1 ? "" : "s") << ")\n";
    for (std::size_t i = 0; i < p.partition->layers.size(); ++i) {
      const Layer& l = p.partition->layers[i];
      os << "  layer " << i << " (max strength " << l.max_strength << "):";
      for (std::size_t k = 0; k < l.defaults.size(); ++k) os << (k ? ", " : " ") << db.name(l.defaults[k]);
      os << '\n';
    }
  } else {
    os << "INCONSISTENT\n  no default tolerated among:";
    for (std::size_t k = 0; k < p.residual.size(); ++k) os << (k ? ", " : " ") << db.name(p.residual[k]);
    os << '\n';
  }
  return os.str();
}

inline std::string rank_table(const Ranking& r, Method m) {
  std::ostringstream os;
  os << "ranking " << to_string(m) << "\n";
  os << "rank | worlds\n";
  const auto codes = by_rank(r);
  for (std::size_t i = 0; i < codes.size();) {
    const Rank level = r[codes[i]];
    std::string s = level.to_string();
    os << s << std::string(s.size() < 4 ? 4 - s.size() : 0, ' ') << " |";
    for (bool first = true; i < codes.size() && r[codes[i]] == level; ++i, first = false)
      os << (first ? " " : ", ") << to_string(World(r.vocabulary().size(), codes[i]), r.vocabulary());
    os << '\n';
  }
  return os.str();
}

inline std::string cp_table(const CpGraph& g, const DefaultDatabase& db) {
  std::ostringstream os;
  os << g.size() << " cp-condition" << (g.size() == 1 ? "" : "s") << " (upper falsifies, lower verifies the witness defaults)\n";
  for (const auto& e : g.edges()) {
    os << "  " << to_string(e.upper, db.vocabulary()) << "  >" << e.strength << "  " << to_string(e.lower, db.vocabulary())
       << "   via";
    for (std::size_t k = 0; k < e.witness.size(); ++k) os << (k ? ", " : " ") << db.name(e.witness[k]);
    os << '\n';
  }
  return os.str();
}

inline std::string query_table(const Vocabulary& vocab, const Query& q, const Verdict& v) {
  std::ostringstream os;
  os << (v.entailed ? "ENTAILED" : "NOT-ENTAILED") << "  (" << to_string(q.method) << ")\n"
     << "  rank(" << to_string(q.conclusion & q.evidence, vocab) << ") = " << v.with_conclusion << '\n'
     << "  rank(" << to_string((!q.conclusion) & q.evidence, vocab) << ") = " << v.without_conclusion << '\n';
  return os.str();
}

inline std::string compare_table(const Vocabulary& vocab, const std::vector<Comparison>& cs) {
  std::ostringstream os;
  std::size_t divergent = 0;
  for (const auto& c : cs) {
    divergent += c.divergent() ? 1 : 0;
    os << to_string(c.evidence, vocab) << " |~ " << to_string(c.conclusion, vocab)
       << "   kplus: " << (c.kplus.entailed ? "yes" : "no") << "  kbar: " << (c.kbar.entailed ? "yes" : "no")
       << (c.divergent() ? "  DIVERGENT" : "") << '\n';
  }
  os << cs.size() << " quer" << (cs.size() == 1 ? "y" : "ies") << ", " << divergent << " divergent\n";
  return os.str();
}

}  // namespace cpz::report
