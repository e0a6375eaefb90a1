#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "cpz/error.hpp"
#include "cpz/logic.hpp"

namespace cpz {

/// Non-negative integer rank or infinity. Addition saturates at infinity.
class Rank {
 public:
  using value_type = std::uint64_t;

  constexpr Rank() = default;
  constexpr Rank(value_type v) : v_(v == kInf ? kInf - 1 : v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Rank infinity() {
    Rank r;
    r.v_ = kInf;
    return r;
  }

  constexpr bool is_finite() const noexcept { return v_ != kInf; }
  constexpr value_type value() const {
    if (!is_finite()) throw Error("value() of an infinite rank");
    return v_;
  }

  friend constexpr Rank operator+(Rank a, Rank b) {
    if (!a.is_finite() || !b.is_finite()) return infinity();
    return Rank(a.v_ + b.v_);
  }

  friend constexpr auto operator<=>(Rank, Rank) = default;

  std::string to_string() const { return is_finite() ? std::to_string(v_) : "inf"; }
  friend std::ostream& operator<<(std::ostream& os, Rank r) { return os << r.to_string(); }

 private:
  static constexpr value_type kInf = std::numeric_limits<value_type>::max();
  value_type v_ = 0;
};

/// Belief ranking: one rank per world of a vocabulary, indexed by world code.
class Ranking {
 public:
  Ranking() = default;
  explicit Ranking(Vocabulary vocab, Rank fill = Rank(0))
      : vocab_(std::move(vocab)), ranks_(vocab_.world_count(), fill) {}
  Ranking(Vocabulary vocab, std::vector<Rank> ranks) : vocab_(std::move(vocab)), ranks_(std::move(ranks)) {
    if (ranks_.size() != vocab_.world_count())
      throw VocabularyMismatch("ranking has " + std::to_string(ranks_.size()) + " entries for " +
                               std::to_string(vocab_.world_count()) + " worlds");
  }

  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  std::size_t size() const noexcept { return ranks_.size(); }

  Rank operator[](std::uint32_t code) const { return ranks_.at(code); }
  Rank operator[](const World& w) const { return at(w); }
  Rank at(const World& w) const {
    if (w.width() != vocab_.size()) throw VocabularyMismatch("world width differs from ranking vocabulary");
    return ranks_[w.code()];
  }
  void set(std::uint32_t code, Rank r) { ranks_.at(code) = r; }
  const std::vector<Rank>& ranks() const noexcept { return ranks_; }

  /// Largest finite rank (0 when every rank is infinite).
  Rank max_finite() const {
    Rank m(0);
    for (Rank r : ranks_)
      if (r.is_finite()) m = std::max(m, r);
    return m;
  }

  /// A belief ranking puts some world at 0 whenever any world is finite.
  bool is_normalized() const {
    bool any_finite = false;
    for (Rank r : ranks_) {
      if (r == Rank(0)) return true;
      any_finite = any_finite || r.is_finite();
    }
    return !any_finite;
  }

  /// Pointwise minimum.
  friend Ranking pointwise_min(const Ranking& a, const Ranking& b) {
    if (!(a.vocab_ == b.vocab_)) throw VocabularyMismatch("rankings over different vocabularies");
    Ranking r = a;
    for (std::size_t i = 0; i < r.ranks_.size(); ++i) r.ranks_[i] = std::min(a.ranks_[i], b.ranks_[i]);
    return r;
  }

  /// True iff this ranking is <= `o` at every world.
  bool dominated_by(const Ranking& o) const {
    if (!(vocab_ == o.vocab_)) throw VocabularyMismatch("rankings over different vocabularies");
    for (std::size_t i = 0; i < ranks_.size(); ++i)
      if (ranks_[i] > o.ranks_[i]) return false;
    return true;
  }

  friend bool operator==(const Ranking& a, const Ranking& b) { return a.vocab_ == b.vocab_ && a.ranks_ == b.ranks_; }

 private:
  Vocabulary vocab_;
  std::vector<Rank> ranks_ = std::vector<Rank>(1, Rank(0));
};

/// Minimum rank over the members of `worlds` (infinity for the empty set).
inline Rank min_rank(const Ranking& r, const TruthTable& worlds) {
  Rank m = Rank::infinity();
  worlds.for_each([&](std::uint32_t code) { m = std::min(m, r[code]); });
  return m;
}

/// Rank of a formula: the minimum over its models, infinity if unsatisfiable.
inline Rank rank_of(const Ranking& r, const Formula& f) { return min_rank(r, truth_table(f, r.vocabulary())); }

/// Rank of `psi` given `phi`: rank(phi & psi) - rank(phi), infinity when
/// either side is infinite.
inline Rank conditional_rank(const Ranking& r, const Formula& psi, const Formula& phi) {
  const Rank given = rank_of(r, phi);
  const Rank joint = rank_of(r, phi & psi);
  if (!given.is_finite() || !joint.is_finite()) return Rank::infinity();
  return Rank(joint.value() - given.value());
}

}  // namespace cpz
