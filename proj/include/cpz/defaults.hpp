#pragma once

// Normality defaults "typically, if antecedent then consequent (strength k)",
// their databases, and the per-world status of a default.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <regex>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpz/error.hpp"
#include "cpz/logic.hpp"
#include "cpz/parse.hpp"

namespace cpz {

using Strength = std::uint32_t;

struct Default {
  Formula antecedent;
  Formula consequent;
  Strength strength = 0;
  std::optional<std::string> label;

  /// Same rule; labels are ignored.
  bool same_rule(const Default& o) const {
    return strength == o.strength && antecedent == o.antecedent && consequent == o.consequent;
  }
};

/// How a world relates to a default: it verifies it (antecedent and
/// consequent hold), falsifies it (antecedent holds, consequent fails), or
/// satisfies it vacuously (antecedent fails).
enum class Status { Verifies, Falsifies, SatisfiesVacuously };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Verifies: return "V";
    case Status::Falsifies: return "F";
    case Status::SatisfiesVacuously: return "N";
  }
  return "?";
}

inline Status status(const World& w, const Default& d) {
  if (!evaluate(w, d.antecedent)) return Status::SatisfiesVacuously;
  return evaluate(w, d.consequent) ? Status::Verifies : Status::Falsifies;
}

/// Ceteris-paribus agreement: both worlds verify `d` alike and falsify it alike.
inline bool agree(const World& w1, const World& w2, const Default& d) {
  if (w1.width() != w2.width()) throw VocabularyMismatch("worlds of different width");
  return status(w1, d) == status(w2, d);
}

/// The classical formula antecedent => consequent.
inline Formula material_counterpart(const Default& d) { return implies(d.antecedent, d.consequent); }

/// True iff `d` can be verified while every default of `others` is materially satisfied.
inline bool is_tolerated(const Default& d, std::span<const Default> others, const Vocabulary& v) {
  std::vector<Formula> parts{d.antecedent, d.consequent};
  for (const auto& o : others) parts.push_back(material_counterpart(o));
  return is_satisfiable(conjunction(parts), v);
}

class DefaultDatabase {
 public:
  DefaultDatabase() = default;
  explicit DefaultDatabase(Vocabulary vocab) : vocab_(std::move(vocab)) {}

  /// Appends `d`. A rule identical to one already present is dropped with a
  /// warning and `false` is returned. Throws on a duplicate label or when a
  /// formula mentions atoms outside the vocabulary.
  bool add(Default d) {
    require_resolves(d.antecedent, vocab_);
    require_resolves(d.consequent, vocab_);
    if (d.label) {
      for (const auto& e : defaults_)
        if (e.label == d.label) throw Error("duplicate default label '" + *d.label + "'");
    }
    for (const auto& e : defaults_) {
      if (e.same_rule(d)) {
        warnings_.push_back("duplicate default '" + describe(d) + "' ignored");
        return false;
      }
    }
    defaults_.push_back(std::move(d));
    return true;
  }

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  Vocabulary& vocabulary() noexcept { return vocab_; }
  const std::vector<Default>& defaults() const noexcept { return defaults_; }
  std::size_t size() const noexcept { return defaults_.size(); }
  bool empty() const noexcept { return defaults_.empty(); }
  const Default& operator[](std::size_t i) const { return defaults_.at(i); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Label if present, otherwise the rule in file syntax.
  std::string name(std::size_t i) const {
    const Default& d = defaults_.at(i);
    return d.label ? *d.label : describe(d);
  }

  std::string describe(const Default& d) const {
    std::string s = to_string(d.antecedent, vocab_) + " -> " + to_string(d.consequent, vocab_);
    if (d.strength != 0) s += " [" + std::to_string(d.strength) + "]";
    return s;
  }

  Strength max_strength() const {
    Strength m = 0;
    for (const auto& d : defaults_) m = std::max(m, d.strength);
    return m;
  }

 private:
  Vocabulary vocab_;
  std::vector<Default> defaults_;
  std::vector<std::string> warnings_;
};

/// Verifier and falsifier sets of every default of a database, as truth tables.
class StatusTable {
 public:
  explicit StatusTable(const DefaultDatabase& db) : vars_(db.vocabulary().size()) {
    db.vocabulary().require_enumerable();
    for (const auto& d : db.defaults()) {
      TruthTable a = TruthTable::of(d.antecedent, vars_);
      TruthTable c = TruthTable::of(d.consequent, vars_);
      verifiers_.push_back(a & c);
      falsifiers_.push_back(a & ~c);
    }
  }

  std::size_t defaults() const noexcept { return verifiers_.size(); }
  std::size_t worlds() const noexcept { return std::size_t{1} << vars_; }
  const TruthTable& verifiers(std::size_t d) const { return verifiers_.at(d); }
  const TruthTable& falsifiers(std::size_t d) const { return falsifiers_.at(d); }

  Status status(std::uint32_t code, std::size_t d) const {
    if (verifiers_[d].test(code)) return Status::Verifies;
    if (falsifiers_[d].test(code)) return Status::Falsifies;
    return Status::SatisfiesVacuously;
  }

 private:
  std::size_t vars_;
  std::vector<TruthTable> verifiers_;
  std::vector<TruthTable> falsifiers_;
};

namespace detail {

inline std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::size_t leading_ws(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace detail

/// Reads a defaults database.
///
///   # comment
///   atoms: b p f            (optional; fixes vocabulary order, must precede defaults)
///   d1: b -> f              (optional label)
///   p -> !f
///   true -> w [1]           (optional strength, default 0)
///
/// Without an `atoms:` line atoms are numbered in order of first appearance.
inline DefaultDatabase parse_database(std::istream& in, std::size_t cap = Vocabulary::kDefaultCap) {
  static const std::regex kLabel(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:)");
  static const std::regex kStrength(R"(\[\s*([0-9]+)\s*\]\s*$)");

  Vocabulary vocab({}, cap);
  DefaultDatabase db;
  std::vector<std::pair<Default, std::size_t>> pending;
  bool fixed_atoms = false;
  std::size_t line_no = 0;
  std::string raw;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim_right(line);
    if (detail::leading_ws(line) == line.size()) continue;

    std::size_t offset = 0;  // column offset of `line` within the raw line
    std::optional<std::string> label;
    std::cmatch m;
    if (std::regex_search(line.data(), line.data() + line.size(), m, kLabel)) {
      std::string name = m[1].str();
      std::string_view rest = line.substr(static_cast<std::size_t>(m.length(0)));
      if (name == "atoms" && rest.find("->") == std::string_view::npos) {
        if (fixed_atoms) throw ParseError(line_no, 1, "second atoms declaration");
        if (!pending.empty() || vocab.size() != 0) throw ParseError(line_no, 1, "atoms declaration must precede defaults");
        std::istringstream names{std::string(rest)};
        std::string atom;
        while (names >> atom) {
          try {
            vocab.add(atom);
          } catch (const Error& e) {
            throw ParseError(line_no, static_cast<std::size_t>(m.length(0)) + 1 + rest.find(atom), e.what());
          }
        }
        fixed_atoms = true;
        continue;
      }
      label = std::move(name);
      offset = static_cast<std::size_t>(m.length(0));
      line = line.substr(offset);
    }

    Strength strength = 0;
    if (std::regex_search(line.data(), line.data() + line.size(), m, kStrength)) {
      const std::string digits = m[1].str();
      if (digits.size() > 9) throw ParseError(line_no, offset + static_cast<std::size_t>(m.position(1)) + 1, "strength too large");
      strength = static_cast<Strength>(std::stoul(digits));
      line = line.substr(0, static_cast<std::size_t>(m.position(0)));
    }

    const std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError(line_no, offset + detail::leading_ws(line) + 1, "expected '->'");
    if (line.find("->", arrow + 2) != std::string_view::npos)
      throw ParseError(line_no, offset + line.find("->", arrow + 2) + 1, "more than one '->'");

    const AtomPolicy policy = fixed_atoms ? AtomPolicy::Fixed : AtomPolicy::Extend;
    Default d;
    d.antecedent = parse_formula(line.substr(0, arrow), vocab, policy, line_no, offset + 1);
    d.consequent = parse_formula(line.substr(arrow + 2), vocab, policy, line_no, offset + arrow + 3);
    d.strength = strength;
    d.label = std::move(label);
    pending.emplace_back(std::move(d), line_no);
  }

  db = DefaultDatabase(std::move(vocab));
  for (auto& [d, at] : pending) {
    try {
      db.add(std::move(d));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(at, 1, e.what());
    }
  }
  return db;
}

inline DefaultDatabase parse_database(std::string_view text, std::size_t cap = Vocabulary::kDefaultCap) {
  std::istringstream in{std::string(text)};
  return parse_database(in, cap);
}

}  // namespace cpz
