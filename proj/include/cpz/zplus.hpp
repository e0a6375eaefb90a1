#pragma once

// Toleration partition, consistency, admissibility and the minimal
// admissible ranking (kappa-plus).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpz/defaults.hpp"
#include "cpz/error.hpp"
#include "cpz/logic.hpp"
#include "cpz/ranking.hpp"

namespace cpz {

struct Layer {
  std::vector<std::size_t> defaults;  ///< indices into the database
  Strength max_strength = 0;
};

struct Partition {
  std::vector<Layer> layers;

  /// Layer index of every default of the database.
  std::vector<std::size_t> layer_of(std::size_t defaults) const {
    std::vector<std::size_t> out(defaults, 0);
    for (std::size_t i = 0; i < layers.size(); ++i)
      for (auto d : layers[i].defaults) out.at(d) = i;
    return out;
  }
};

/// Result of the toleration layering: a partition, or the residual set of
/// defaults none of which is tolerated by the others.
struct PartitionOutcome {
  std::optional<Partition> partition;
  std::vector<std::size_t> residual;

  bool consistent() const noexcept { return partition.has_value(); }
};

namespace detail {

inline std::vector<Default> select(const DefaultDatabase& db, const std::vector<std::size_t>& idx) {
  std::vector<Default> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(db[i]);
  return out;
}

}  // namespace detail

/// Greedy layering: layer i holds every remaining default tolerated by the
/// remaining set. Fails when a nonempty remainder tolerates none of its members.
inline PartitionOutcome z_partition(const DefaultDatabase& db) {
  db.vocabulary().require_enumerable();
  std::vector<std::size_t> remaining(db.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  Partition partition;
  while (!remaining.empty()) {
    const std::vector<Default> rest = detail::select(db, remaining);
    Layer layer;
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (is_tolerated(rest[k], rest, db.vocabulary())) {
        layer.defaults.push_back(remaining[k]);
        layer.max_strength = std::max(layer.max_strength, rest[k].strength);
      } else {
        next.push_back(remaining[k]);
      }
    }
    if (layer.defaults.empty()) return {std::nullopt, remaining};
    partition.layers.push_back(std::move(layer));
    remaining = std::move(next);
  }
  return {std::move(partition), {}};
}

inline bool is_consistent(const DefaultDatabase& db) { return z_partition(db).consistent(); }

/// Every default has rank(antecedent & !consequent) > rank(antecedent & consequent) + strength.
/// An infinite verifying rank can never be exceeded, so such a default fails.
inline bool is_admissible(const Ranking& r, const DefaultDatabase& db) {
  if (!(r.vocabulary() == db.vocabulary())) throw VocabularyMismatch("ranking and database vocabularies differ");
  const StatusTable table(db);
  for (std::size_t d = 0; d < db.size(); ++d) {
    const Rank verified = min_rank(r, table.verifiers(d));
    if (!verified.is_finite()) return false;
    if (!(min_rank(r, table.falsifiers(d)) > verified + Rank(db[d].strength))) return false;
  }
  return true;
}

namespace detail {

/// Worlds grouped by their status vector over the database.
struct WorldClasses {
  std::vector<std::uint32_t> class_of;              ///< world code -> class id
  std::vector<std::vector<std::uint32_t>> members;  ///< class id -> world codes, ascending
  std::vector<std::vector<Status>> signature;       ///< class id -> status per default
};

/// A cp-condition between whole classes: every world of `upper` sits above
/// every world of `lower`.
struct ClassEdge {
  std::size_t upper;
  std::size_t lower;
  Strength strength;
  std::vector<std::size_t> witness;  ///< defaults on which the classes disagree
};

/// Sweep limit: |worlds| * sum(strength + 1) + 1.
inline std::uint64_t fixpoint_guard(const DefaultDatabase& db) {
  std::uint64_t per_world = 0;
  for (const auto& d : db.defaults()) per_world += std::uint64_t{d.strength} + 1;
  return static_cast<std::uint64_t>(db.vocabulary().world_count()) * per_world + 1;
}

/// Kleene iteration from the all-zero ranking for the admissibility bounds
/// plus optional class edges. Defaults are swept in database order, worlds in
/// canonical order.
inline Ranking least_fixpoint(const DefaultDatabase& db, const StatusTable& table, const WorldClasses* classes,
                              const std::vector<ClassEdge>* edges) {
  Ranking r(db.vocabulary());
  const std::uint64_t guard = fixpoint_guard(db);
  for (std::uint64_t sweep = 0;; ++sweep) {
    if (sweep >= guard) throw InternalError("rank fixpoint did not converge within " + std::to_string(guard) + " sweeps");
    bool changed = false;
    auto raise = [&](std::uint32_t code, Rank bound) {
      if (r[code] < bound) {
        r.set(code, bound);
        changed = true;
      }
    };
    for (std::size_t d = 0; d < db.size(); ++d) {
      const Rank verified = min_rank(r, table.verifiers(d));
      if (!verified.is_finite()) throw InternalError("default '" + db.name(d) + "' has no verifying world");
      const Rank bound = verified + Rank(std::uint64_t{db[d].strength} + 1);
      table.falsifiers(d).for_each([&](std::uint32_t code) { raise(code, bound); });
    }
    if (edges != nullptr) {
      for (const auto& e : *edges) {
        Rank top(0);
        for (auto code : classes->members[e.lower]) top = std::max(top, r[code]);
        const Rank bound = top + Rank(std::uint64_t{e.strength} + 1);
        for (auto code : classes->members[e.upper]) raise(code, bound);
      }
    }
    if (!changed) return r;
  }
}

inline void require_consistent(const DefaultDatabase& db) {
  const PartitionOutcome p = z_partition(db);
  if (!p.consistent()) {
    std::string names;
    for (auto i : p.residual) names += (names.empty() ? "" : ", ") + db.name(i);
    throw InconsistentDatabase("database is inconsistent; no default tolerated among {" + names + "}");
  }
}

}  // namespace detail

/// The pointwise-minimal admissible ranking, as the least fixpoint of the
/// admissibility constraints. Throws InconsistentDatabase on inconsistent input.
inline Ranking kappa_plus(const DefaultDatabase& db) {
  detail::require_consistent(db);
  const StatusTable table(db);
  return detail::least_fixpoint(db, table, nullptr, nullptr);
}

}  // namespace cpz
