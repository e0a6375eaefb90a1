#pragma once

// Ceteris-paribus conditions between worlds and the minimal cp-admissible
// ranking (kappa-bar).
//
// Orientation: in a condition `upper >_k lower` the upper world FALSIFIES
// every default of the witness set and the lower world VERIFIES every one of
// them; the two worlds have the same status on every other default. A
// cp-admissible ranking puts upper strictly more than k above lower.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "cpz/defaults.hpp"
#include "cpz/error.hpp"
#include "cpz/logic.hpp"
#include "cpz/ranking.hpp"
#include "cpz/zplus.hpp"

namespace cpz {

struct CpCondition {
  World upper;  ///< falsifying world, must rank higher
  World lower;  ///< verifying world
  Strength strength = 0;
  std::vector<std::size_t> witness;  ///< defaults the two worlds disagree on, ascending

  friend bool operator==(const CpCondition&, const CpCondition&) = default;
};

/// Listing order: strength descending, then upper, then lower in canonical order.
inline bool listing_order(const CpCondition& a, const CpCondition& b) {
  return std::make_tuple(b.strength, a.upper, a.lower) < std::make_tuple(a.strength, b.upper, b.lower);
}

class CpGraph {
 public:
  CpGraph() = default;
  CpGraph(std::size_t width, std::vector<CpCondition> edges) : width_(width), edges_(std::move(edges)) {
    for (const auto& e : edges_)
      if (e.upper.width() != width_ || e.lower.width() != width_) throw VocabularyMismatch("cp edge of wrong width");
  }

  std::size_t width() const noexcept { return width_; }
  const std::vector<CpCondition>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }

  const CpCondition* find(const World& upper, const World& lower) const {
    for (const auto& e : edges_)
      if (e.upper == upper && e.lower == lower) return &e;
    return nullptr;
  }

 private:
  std::size_t width_ = 0;
  std::vector<CpCondition> edges_;
};

namespace detail {

inline WorldClasses classify(const StatusTable& table) {
  WorldClasses c;
  c.class_of.resize(table.worlds());
  std::map<std::vector<Status>, std::size_t> ids;
  std::vector<Status> sig(table.defaults());
  for (std::uint32_t code = 0; code < table.worlds(); ++code) {
    for (std::size_t d = 0; d < sig.size(); ++d) sig[d] = table.status(code, d);
    auto [it, fresh] = ids.try_emplace(sig, c.members.size());
    if (fresh) {
      c.members.emplace_back();
      c.signature.push_back(sig);
    }
    c.class_of[code] = static_cast<std::uint32_t>(it->second);
    c.members[it->second].push_back(code);
  }
  return c;
}

/// For a pair of worlds the only candidate witness set is the set of defaults
/// on which their statuses differ, so scanning status classes pairwise finds
/// every condition exactly once.
inline std::vector<ClassEdge> class_edges(const WorldClasses& c, const DefaultDatabase& db) {
  std::vector<ClassEdge> out;
  const std::size_t n = c.members.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      ClassEdge e{u, v, 0, {}};
      bool ok = true;
      for (std::size_t d = 0; d < db.size() && ok; ++d) {
        const Status su = c.signature[u][d];
        const Status sv = c.signature[v][d];
        if (su == sv) continue;
        ok = su == Status::Falsifies && sv == Status::Verifies;
        e.witness.push_back(d);
        e.strength = std::max(e.strength, db[d].strength);
      }
      if (ok) out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace detail

/// Every cp-condition of the database, in listing order.
inline CpGraph extract_cp_conditions(const DefaultDatabase& db) {
  const StatusTable table(db);
  const auto classes = detail::classify(table);
  const std::size_t width = db.vocabulary().size();
  std::vector<CpCondition> edges;
  for (const auto& e : detail::class_edges(classes, db))
    for (auto u : classes.members[e.upper])
      for (auto v : classes.members[e.lower]) edges.push_back({World(width, u), World(width, v), e.strength, e.witness});
  std::sort(edges.begin(), edges.end(), listing_order);
  return CpGraph(width, std::move(edges));
}

struct AcyclicityReport {
  bool ok = true;
  std::vector<World> cycle;  ///< closed walk u0 > u1 > ... > u0 when !ok
};

/// Depth-first search for a cycle along upper -> lower edges.
inline AcyclicityReport cp_acyclicity_check(const CpGraph& g) {
  std::map<World, std::vector<World>> next;
  for (const auto& e : g.edges()) next[e.upper].push_back(e.lower);
  for (auto& [w, succ] : next) std::sort(succ.begin(), succ.end());

  enum class Mark { White, Grey, Black };
  std::map<World, Mark> mark;
  for (const auto& [root, unused] : next) {
    if (mark[root] != Mark::White) continue;
    // Explicit stack of (node, next successor index); `path` mirrors the grey nodes.
    std::vector<std::pair<World, std::size_t>> stack{{root, 0}};
    std::vector<World> path{root};
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, i] = stack.back();
      const auto it = next.find(node);
      if (it == next.end() || i >= it->second.size()) {
        mark[node] = Mark::Black;
        stack.pop_back();
        path.pop_back();
        continue;
      }
      const World succ = it->second[i++];
      const Mark m = mark[succ];
      if (m == Mark::Grey) {
        AcyclicityReport r{false, {}};
        auto from = std::find(path.begin(), path.end(), succ);
        r.cycle.assign(from, path.end());
        r.cycle.push_back(succ);
        return r;
      }
      if (m == Mark::White) {
        mark[succ] = Mark::Grey;
        stack.emplace_back(succ, 0);
        path.push_back(succ);
      }
    }
  }
  return {};
}

/// True iff every condition `upper >_k lower` has r(upper) > r(lower) + k.
inline bool satisfies_cp_conditions(const Ranking& r, const CpGraph& g) {
  for (const auto& e : g.edges())
    if (!(r.at(e.upper) > r.at(e.lower) + Rank(e.strength))) return false;
  return true;
}

/// Admissible and strictly respecting every cp-condition of the database.
inline bool is_cp_admissible(const Ranking& r, const DefaultDatabase& db) {
  if (!is_admissible(r, db)) return false;
  const StatusTable table(db);
  const auto classes = detail::classify(table);
  for (const auto& e : detail::class_edges(classes, db)) {
    Rank low_max(0), up_min = Rank::infinity();
    for (auto code : classes.members[e.lower]) low_max = std::max(low_max, r[code]);
    for (auto code : classes.members[e.upper]) up_min = std::min(up_min, r[code]);
    if (!(up_min > low_max + Rank(e.strength))) return false;
  }
  return true;
}

/// The pointwise-minimal cp-admissible ranking: least fixpoint of the
/// admissibility bounds together with the cp-condition bounds.
inline Ranking kappa_bar(const DefaultDatabase& db) {
  detail::require_consistent(db);
  const StatusTable table(db);
  const auto classes = detail::classify(table);
  const auto edges = detail::class_edges(classes, db);
  return detail::least_fixpoint(db, table, &classes, &edges);
}

/// Explicit cp-admissible ranking built from the toleration layers.
///
/// A world's level is one more than the highest layer holding a default it
/// falsifies (level 0 if it falsifies nothing). Each level is peeled into
/// strata by repeatedly removing worlds with no cp-condition pointing down to
/// a remaining world of the same level. With step = max strength + 1, the
/// world in stratum j of level i gets
///
///   rank = j * step + (highest rank of the previous nonempty level) + step
///
/// and the first nonempty level starts at 0.
inline Ranking witness_ranking(const DefaultDatabase& db) {
  detail::require_consistent(db);
  const Partition partition = *z_partition(db).partition;
  const std::vector<std::size_t> layer = partition.layer_of(db.size());
  const StatusTable table(db);
  const auto classes = detail::classify(table);
  const auto edges = detail::class_edges(classes, db);
  const std::size_t n_classes = classes.members.size();

  std::vector<std::size_t> level(n_classes, 0);
  for (std::size_t c = 0; c < n_classes; ++c)
    for (std::size_t d = 0; d < db.size(); ++d)
      if (classes.signature[c][d] == Status::Falsifies) level[c] = std::max(level[c], layer[d] + 1);

  // Peel strata inside each level; an edge only matters when both ends share a level.
  std::vector<std::size_t> pending(n_classes, 0);
  std::vector<std::vector<std::size_t>> uppers(n_classes);
  for (const auto& e : edges) {
    if (level[e.upper] != level[e.lower]) continue;
    ++pending[e.upper];
    uppers[e.lower].push_back(e.upper);
  }
  std::vector<std::size_t> stratum(n_classes, 0);
  std::vector<std::size_t> frontier;
  for (std::size_t c = 0; c < n_classes; ++c)
    if (pending[c] == 0) frontier.push_back(c);
  std::size_t placed = 0;
  for (std::size_t j = 0; !frontier.empty(); ++j) {
    std::vector<std::size_t> next;
    for (auto c : frontier) {
      stratum[c] = j;
      ++placed;
      for (auto u : uppers[c])
        if (--pending[u] == 0) next.push_back(u);
    }
    frontier = std::move(next);
  }
  if (placed != n_classes) throw InternalError("cp-conditions contain a cycle");

  const std::uint64_t step = std::uint64_t{db.max_strength()} + 1;
  const std::size_t levels = partition.layers.size() + 2;
  std::vector<std::uint64_t> top(levels, 0);
  std::vector<bool> occupied(levels, false);
  for (std::size_t c = 0; c < n_classes; ++c) {
    occupied[level[c]] = true;
    top[level[c]] = std::max<std::uint64_t>(top[level[c]], stratum[c]);
  }
  std::vector<std::uint64_t> base(levels, 0);
  bool first = true;
  std::uint64_t previous_top = 0;
  for (std::size_t i = 0; i < levels; ++i) {
    if (!occupied[i]) continue;
    base[i] = first ? 0 : previous_top + step;
    previous_top = base[i] + top[i] * step;
    first = false;
  }

  Ranking r(db.vocabulary());
  for (std::size_t c = 0; c < n_classes; ++c)
    for (auto code : classes.members[c]) r.set(code, Rank(base[level[c]] + stratum[c] * step));
  return r;
}

}  // namespace cpz
