#pragma once

// Recursive-descent parser for the formula syntax:
//   atoms, true, false, !, &, |, => (right-assoc), <=>, parentheses.
// Binding strength from tightest: ! & | => <=>.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "cpz/error.hpp"
#include "cpz/logic.hpp"

namespace cpz {

enum class AtomPolicy {
  Fixed,   ///< unknown atom names are an error
  Extend,  ///< unknown atom names are appended to the vocabulary
};

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, Vocabulary& vocab, AtomPolicy policy, std::size_t line, std::size_t column)
      : text_(text), vocab_(vocab), policy_(policy), line_(line), column_(column) {}

  Formula parse() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula parse_iff() {
    Formula f = parse_implies();
    while (accept("<=>")) f = iff(f, parse_implies());
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (accept("=>")) return implies(f, parse_implies());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = f | parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = f & parse_unary();
    return f;
  }

  Formula parse_unary() {
    if (accept("!")) return !parse_unary();
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of formula");
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "true") return Formula::top();
    if (word == "false") return Formula::bottom();
    if (!Vocabulary::is_valid_name(word)) fail_at(start, "invalid atom name '" + std::string(word) + "'");
    if (auto idx = vocab_.index_of(word)) return Formula::atom(*idx);
    if (policy_ == AtomPolicy::Fixed) fail_at(start, "unknown atom '" + std::string(word) + "'");
    try {
      return Formula::atom(vocab_.add(std::string(word)));
    } catch (const Error& e) {
      fail_at(start, e.what());
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    // `|` must not swallow the first character of `|~`, nor `=` of `=>` inside `<=>`.
    if (tok == "|" && text_.substr(pos_, 2) == "|~") return false;
    pos_ += tok.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(line_, column_ + pos, msg);
  }

  std::string_view text_;
  Vocabulary& vocab_;
  AtomPolicy policy_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` against `vocab`. `line`/`column` locate `text` inside a larger
/// input so that errors point at the right place.
inline Formula parse_formula(std::string_view text, Vocabulary& vocab, AtomPolicy policy = AtomPolicy::Fixed,
                             std::size_t line = 1, std::size_t column = 1) {
  return detail::FormulaParser(text, vocab, policy, line, column).parse();
}

/// Parses against a vocabulary that must already contain every atom.
inline Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  Vocabulary copy = vocab;
  return detail::FormulaParser(text, copy, AtomPolicy::Fixed, 1, 1).parse();
}

}  // namespace cpz
