#pragma once

// Propositional language over a small named vocabulary: formulas, worlds,
// evaluation and enumeration-based model finding.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpz/error.hpp"

namespace cpz {

/// Ordered set of distinct atom names. Enumeration operations refuse
/// vocabularies larger than `cap()`.
class Vocabulary {
 public:
  static constexpr std::size_t kDefaultCap = 20;
  static constexpr std::size_t kMaxCap = 24;

  Vocabulary() = default;

  explicit Vocabulary(std::vector<std::string> atoms, std::size_t cap = kDefaultCap) : cap_(checked_cap(cap)) {
    for (auto& a : atoms) add(std::move(a));
  }

  static bool is_valid_name(std::string_view name) {
    if (name.empty() || name == "true" || name == "false") return false;
    auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    return head(name.front()) && std::all_of(name.begin() + 1, name.end(), tail);
  }

  /// Appends a new atom and returns its index.
  std::size_t add(std::string name) {
    if (!is_valid_name(name)) throw Error("invalid atom name '" + name + "'");
    if (index_of(name)) throw Error("duplicate atom '" + name + "'");
    if (atoms_.size() >= kMaxCap) throw VocabularyTooLarge(atoms_.size() + 1, kMaxCap);
    atoms_.push_back(std::move(name));
    return atoms_.size() - 1;
  }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - atoms_.begin());
  }

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::string& name(std::size_t i) const { return atoms_.at(i); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }

  std::size_t cap() const noexcept { return cap_; }
  void set_cap(std::size_t cap) { cap_ = checked_cap(cap); }

  void require_enumerable() const {
    if (atoms_.size() > cap_) throw VocabularyTooLarge(atoms_.size(), cap_);
  }

  /// Number of worlds, 2^size. Throws when the vocabulary exceeds the cap.
  std::size_t world_count() const {
    require_enumerable();
    return std::size_t{1} << atoms_.size();
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.atoms_ == b.atoms_; }

 private:
  static std::size_t checked_cap(std::size_t cap) {
    if (cap > kMaxCap) throw Error("vocabulary cap " + std::to_string(cap) + " exceeds " + std::to_string(kMaxCap));
    return cap;
  }

  std::vector<std::string> atoms_;
  std::size_t cap_ = kDefaultCap;
};

/// A total truth assignment. Bit i of `code()` is the value of atom i, so the
/// integer encoding is also the canonical iteration order.
class World {
 public:
  World() = default;
  World(std::size_t width, std::uint32_t code) : code_(code), width_(static_cast<std::uint32_t>(width)) {
    if (width > Vocabulary::kMaxCap) throw VocabularyTooLarge(width, Vocabulary::kMaxCap);
    if (width < 32 && (code >> width) != 0) throw Error("world code out of range for width " + std::to_string(width));
  }

  std::uint32_t code() const noexcept { return code_; }
  std::size_t width() const noexcept { return width_; }
  bool operator[](std::size_t atom) const noexcept { return ((code_ >> atom) & 1u) != 0; }

  World with(std::size_t atom, bool value) const {
    std::uint32_t bit = std::uint32_t{1} << atom;
    return World(width_, value ? (code_ | bit) : (code_ & ~bit));
  }

  friend auto operator<=>(const World&, const World&) = default;

 private:
  std::uint32_t code_ = 0;
  std::uint32_t width_ = 0;
};

enum class Op { Atom, Top, Bottom, Not, And, Or, Implies, Iff };

namespace detail {
struct FormulaNode;
}

/// Immutable propositional formula; subtrees are shared.
class Formula {
 public:
  Formula();

  static Formula atom(std::size_t index);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula f);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const noexcept;
  std::size_t atom_index() const noexcept;
  /// Operand of a negation, left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;

  /// One past the largest atom index mentioned (0 for a closed formula).
  std::size_t atom_bound() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula(Op op, std::size_t atom, std::optional<Formula> lhs, std::optional<Formula> rhs);

  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  Op op;
  std::size_t atom;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t atom_bound;
};
}  // namespace detail

inline Formula::Formula(Op op, std::size_t atom, std::optional<Formula> lhs, std::optional<Formula> rhs) {
  std::size_t bound = op == Op::Atom ? atom + 1 : 0;
  if (lhs) bound = std::max(bound, lhs->atom_bound());
  if (rhs) bound = std::max(bound, rhs->atom_bound());
  node_ = std::make_shared<const detail::FormulaNode>(detail::FormulaNode{op, atom, std::move(lhs), std::move(rhs), bound});
}

inline Formula::Formula() : Formula(Op::Top, 0, std::nullopt, std::nullopt) {}
inline Formula Formula::atom(std::size_t index) { return Formula(Op::Atom, index, std::nullopt, std::nullopt); }
inline Formula Formula::top() { return Formula(Op::Top, 0, std::nullopt, std::nullopt); }
inline Formula Formula::bottom() { return Formula(Op::Bottom, 0, std::nullopt, std::nullopt); }
inline Formula Formula::negation(Formula f) { return Formula(Op::Not, 0, std::move(f), std::nullopt); }
inline Formula Formula::binary(Op op, Formula lhs, Formula rhs) { return Formula(op, 0, std::move(lhs), std::move(rhs)); }

inline Op Formula::op() const noexcept { return node_->op; }
inline std::size_t Formula::atom_index() const noexcept { return node_->atom; }
inline const Formula& Formula::lhs() const { return *node_->lhs; }
inline const Formula& Formula::rhs() const { return *node_->rhs; }
inline std::size_t Formula::atom_bound() const noexcept { return node_->atom_bound; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Atom: return a.atom_index() == b.atom_index();
    case Op::Top:
    case Op::Bottom: return true;
    case Op::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
inline Formula operator|(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::binary(Op::Iff, std::move(a), std::move(b)); }

/// Conjunction of `fs`; the empty conjunction is top.
inline Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = acc & fs[i];
  return acc;
}

/// Classical truth value of `f` under `w`.
inline bool evaluate(const World& w, const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      if (f.atom_index() >= w.width())
        throw VocabularyMismatch("atom #" + std::to_string(f.atom_index()) + " not in a world of width " +
                                 std::to_string(w.width()));
      return w[f.atom_index()];
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !evaluate(w, f.lhs());
    case Op::And: return evaluate(w, f.lhs()) && evaluate(w, f.rhs());
    case Op::Or: return evaluate(w, f.lhs()) || evaluate(w, f.rhs());
    case Op::Implies: return !evaluate(w, f.lhs()) || evaluate(w, f.rhs());
    case Op::Iff: return evaluate(w, f.lhs()) == evaluate(w, f.rhs());
  }
  return false;
}

inline void require_resolves(const Formula& f, const Vocabulary& v) {
  if (f.atom_bound() > v.size())
    throw VocabularyMismatch("formula mentions atom #" + std::to_string(f.atom_bound() - 1) + " outside a vocabulary of " +
                             std::to_string(v.size()) + " atoms");
}

/// Set of worlds over `vars` atoms stored as one bit per world, world code =
/// bit position.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(std::size_t vars, bool fill = false)
      : vars_(vars), words_(word_count(vars), fill ? ~std::uint64_t{0} : 0) {
    trim();
  }

  static TruthTable of(const Formula& f, std::size_t vars) {
    switch (f.op()) {
      case Op::Atom: {
        if (f.atom_index() >= vars) throw VocabularyMismatch("atom #" + std::to_string(f.atom_index()) + " out of range");
        return projection(f.atom_index(), vars);
      }
      case Op::Top: return TruthTable(vars, true);
      case Op::Bottom: return TruthTable(vars, false);
      case Op::Not: return ~of(f.lhs(), vars);
      case Op::And: return of(f.lhs(), vars) & of(f.rhs(), vars);
      case Op::Or: return of(f.lhs(), vars) | of(f.rhs(), vars);
      case Op::Implies: return ~of(f.lhs(), vars) | of(f.rhs(), vars);
      case Op::Iff: return ~(of(f.lhs(), vars) ^ of(f.rhs(), vars));
    }
    return {};
  }

  std::size_t vars() const noexcept { return vars_; }
  std::size_t worlds() const noexcept { return std::size_t{1} << vars_; }

  bool test(std::uint32_t code) const { return ((words_[code >> 6] >> (code & 63)) & 1u) != 0; }
  void set(std::uint32_t code) { words_[code >> 6] |= std::uint64_t{1} << (code & 63); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

  /// Calls `fn(code)` for each member in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  TruthTable operator~() const {
    TruthTable r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  TruthTable operator&(const TruthTable& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
  TruthTable operator|(const TruthTable& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
  TruthTable operator^(const TruthTable& o) const { return zip(o, [](auto a, auto b) { return a ^ b; }); }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  static std::size_t word_count(std::size_t vars) { return vars <= 6 ? 1 : (std::size_t{1} << (vars - 6)); }

  static TruthTable projection(std::size_t atom, std::size_t vars) {
    static constexpr std::uint64_t kPatterns[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                                   0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    TruthTable t(vars);
    for (std::size_t i = 0; i < t.words_.size(); ++i) {
      if (atom < 6)
        t.words_[i] = kPatterns[atom];
      else
        t.words_[i] = ((i >> (atom - 6)) & 1u) ? ~std::uint64_t{0} : 0;
    }
    t.trim();
    return t;
  }

  void trim() {
    if (vars_ < 6 && !words_.empty()) words_[0] &= (std::uint64_t{1} << (std::size_t{1} << vars_)) - 1;
  }

  template <typename Fn>
  TruthTable zip(const TruthTable& o, Fn fn) const {
    if (o.vars_ != vars_) throw VocabularyMismatch("truth tables over different vocabularies");
    TruthTable r(vars_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = fn(words_[i], o.words_[i]);
    r.trim();
    return r;
  }

  std::size_t vars_ = 0;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

/// Truth table of `f` over `v`, after checking the cap and atom resolution.
inline TruthTable truth_table(const Formula& f, const Vocabulary& v) {
  v.require_enumerable();
  require_resolves(f, v);
  return TruthTable::of(f, v.size());
}

/// All worlds over `v` satisfying `f`, in canonical order.
inline std::vector<World> models(const Formula& f, const Vocabulary& v) {
  std::vector<World> out;
  truth_table(f, v).for_each([&](std::uint32_t code) { out.emplace_back(v.size(), code); });
  return out;
}

/// True iff some world over `v` satisfies `f`; stops at the first model.
inline bool is_satisfiable(const Formula& f, const Vocabulary& v) {
  const std::size_t n = v.world_count();
  require_resolves(f, v);
  for (std::size_t code = 0; code < n; ++code)
    if (evaluate(World(v.size(), static_cast<std::uint32_t>(code)), f)) return true;
  return false;
}

namespace detail {

inline int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    default: return 6;
  }
}

inline void render(const Formula& f, const Vocabulary& v, int min_prec, std::string& out) {
  const int prec = precedence(f.op());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Atom:
      out += f.atom_index() < v.size() ? v.name(f.atom_index()) : "#" + std::to_string(f.atom_index());
      break;
    case Op::Top: out += "true"; break;
    case Op::Bottom: out += "false"; break;
    case Op::Not:
      out += '!';
      render(f.lhs(), v, prec, out);
      break;
    default: {
      // `=>` is right-associative, the others left-associative.
      const bool right = f.op() == Op::Implies;
      render(f.lhs(), v, right ? prec + 1 : prec, out);
      out += f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : f.op() == Op::Implies ? " => " : " <=> ";
      render(f.rhs(), v, right ? prec : prec + 1, out);
    }
  }
  if (parens) out += ')';
}

}  // namespace detail

/// Concrete syntax with minimal parentheses; parses back to an equal formula.
inline std::string to_string(const Formula& f, const Vocabulary& v) {
  std::string out;
  detail::render(f, v, 0, out);
  return out;
}

/// Space-separated literals in vocabulary order, e.g. `b !p f`.
inline std::string to_string(const World& w, const Vocabulary& v) {
  std::string out;
  for (std::size_t i = 0; i < w.width(); ++i) {
    if (i) out += ' ';
    if (!w[i]) out += '!';
    out += i < v.size() ? v.name(i) : "#" + std::to_string(i);
  }
  return out;
}

}  // namespace cpz
