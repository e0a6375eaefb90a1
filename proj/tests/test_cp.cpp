#include <gtest/gtest.h>

#include <random>

#include "cpz/cp.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace cpz {
namespace {

using fixtures::world;

std::set<oracle::Edge> edge_set(const CpGraph& g) {
  std::set<oracle::Edge> out;
  for (const auto& e : g.edges()) out.insert({e.upper.code(), e.lower.code(), e.strength});
  return out;
}

TEST(Extract, PenguinListing) {
  const auto db = fixtures::penguin();
  const auto g = extract_cp_conditions(db);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edges()[0].upper, world(db, "b !p !f"));
  EXPECT_EQ(g.edges()[0].lower, world(db, "b !p f"));
  EXPECT_EQ(g.edges()[0].witness, (std::vector<std::size_t>{0}));
  EXPECT_EQ(g.edges()[1].upper, world(db, "!b p f"));
  EXPECT_EQ(g.edges()[1].lower, world(db, "!b p !f"));
  EXPECT_EQ(g.edges()[1].witness, (std::vector<std::size_t>{1}));
  EXPECT_EQ(edge_set(g), oracle::cp_conditions(db));
}

TEST(Extract, BirdsLegsDiamond) {
  const auto db = fixtures::birds_legs();
  const auto g = extract_cp_conditions(db);
  EXPECT_EQ(g.size(), 5u);
  const auto* composed = g.find(world(db, "b !f !l"), world(db, "b f l"));
  ASSERT_NE(composed, nullptr);
  EXPECT_EQ(composed->witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_NE(g.find(world(db, "b !f !l"), world(db, "b f !l")), nullptr);
  EXPECT_NE(g.find(world(db, "b f !l"), world(db, "b f l")), nullptr);
  EXPECT_EQ(edge_set(g), oracle::cp_conditions(db));
}

TEST(Extract, StrengthIsMaxOverWitness) {
  const auto db = parse_database("atoms: a b c\na -> b [2]\na -> c\n");
  const auto g = extract_cp_conditions(db);
  const auto* e = g.find(world(db, "a !b !c"), world(db, "a b c"));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->strength, 2u);
  EXPECT_EQ(g.edges().front().strength, 2u);
  EXPECT_TRUE(std::is_sorted(g.edges().begin(), g.edges().end(), listing_order));
}

TEST(Extract, EmptyDatabase) { EXPECT_EQ(extract_cp_conditions(parse_database("atoms: a\n")).size(), 0u); }

TEST(Acyclicity, ExtractedGraphsPass) {
  EXPECT_TRUE(cp_acyclicity_check(extract_cp_conditions(fixtures::winged_creatures())).ok);
}

TEST(Acyclicity, HandBuiltCycle) {
  const World u(2, 1), v(2, 2);
  const CpGraph g(2, {{u, v, 0, {}}, {v, u, 0, {}}});
  const auto report = cp_acyclicity_check(g);
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.cycle, (std::vector<World>{u, v, u}));
}

TEST(Acyclicity, LongerCycle) {
  const World a(2, 0), b(2, 1), c(2, 2), d(2, 3);
  const CpGraph g(2, {{a, b, 0, {}}, {b, c, 0, {}}, {c, d, 0, {}}, {d, b, 1, {}}});
  const auto report = cp_acyclicity_check(g);
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.cycle, (std::vector<World>{b, c, d, b}));
}

TEST(CpAdmissible, CounterexampleSatisfiesEdgesButNotAdmissible) {
  const auto db = fixtures::penguin();
  const auto g = extract_cp_conditions(db);
  Ranking r(db.vocabulary());
  for (const auto& e : g.edges()) r.set(e.upper.code(), Rank(1));
  EXPECT_TRUE(satisfies_cp_conditions(r, g));
  EXPECT_FALSE(is_admissible(r, db));
  EXPECT_FALSE(is_cp_admissible(r, db));
}

TEST(CpAdmissible, KappaPlusViolatesPenguinEdge) {
  const auto db = fixtures::penguin();
  const auto r = kappa_plus(db);
  EXPECT_TRUE(is_admissible(r, db));
  EXPECT_FALSE(is_cp_admissible(r, db));
}

TEST(KappaBar, Penguin) {
  const auto db = fixtures::penguin();
  const auto r = kappa_bar(db);
  EXPECT_EQ(oracle::to_ranks(r), (oracle::Ranks{0, 1, 2, 1, 0, 0, 3, 2}));
  EXPECT_EQ(oracle::to_ranks(r), *oracle::least_ranking(db, true));
  EXPECT_TRUE(is_cp_admissible(r, db));
}

TEST(KappaBar, PenguinConditionalRanks) {
  const auto db = fixtures::penguin();
  const auto r = kappa_bar(db);
  const Formula pnb = fixtures::formula(db, "p & !b");
  EXPECT_EQ(conditional_rank(r, fixtures::formula(db, "!f"), pnb), Rank(0));
  EXPECT_EQ(conditional_rank(r, fixtures::formula(db, "f"), pnb), Rank(1));
}

TEST(KappaBar, WingedPenguinMatchesOracle) {
  const auto db = fixtures::winged_penguin();
  const auto r = kappa_bar(db);
  EXPECT_EQ(oracle::to_ranks(r), (oracle::Ranks{0, 2, 2, 2, 0, 1, 3, 3, 0, 1, 2, 1, 0, 0, 3, 2}));
  EXPECT_EQ(oracle::to_ranks(r), *oracle::least_ranking(db, true));
}

TEST(KappaBar, BirdsLegs) {
  const auto db = fixtures::birds_legs();
  EXPECT_EQ(oracle::to_ranks(kappa_bar(db)), (oracle::Ranks{0, 2, 0, 1, 0, 1, 0, 0}));
}

TEST(KappaBar, EmptyIsZero) {
  const auto r = kappa_bar(parse_database("atoms: a b c\n"));
  for (auto k : r.ranks()) EXPECT_EQ(k, Rank(0));
}

TEST(KappaBar, InconsistentThrows) { EXPECT_THROW(kappa_bar(fixtures::contradictory()), InconsistentDatabase); }

TEST(Witness, PenguinDominatesKappaBar) {
  const auto db = fixtures::penguin();
  const auto w = witness_ranking(db);
  EXPECT_TRUE(is_cp_admissible(w, db));
  EXPECT_TRUE(kappa_bar(db).dominated_by(w));
}

TEST(Witness, BirdsLegs) {
  const auto db = fixtures::birds_legs();
  const auto w = witness_ranking(db);
  EXPECT_TRUE(is_cp_admissible(w, db));
  EXPECT_TRUE(kappa_bar(db).dominated_by(w));
}

TEST(Witness, EmptyIsZero) {
  const auto r = witness_ranking(parse_database("atoms: a\n"));
  for (auto k : r.ranks()) EXPECT_EQ(k, Rank(0));
}

TEST(Witness, InconsistentThrows) { EXPECT_THROW(witness_ranking(fixtures::contradictory()), InconsistentDatabase); }

class CpProperties : public ::testing::Test {
 protected:
  std::mt19937 rng{41};
};

TEST_F(CpProperties, ExtractionMatchesSubsetEnumeration) {
  for (int i = 0; i < 500; ++i) {
    const std::size_t atoms = 1 + i % 4;
    const auto db = oracle::random_database(rng, atoms, 4, 2);
    const auto g = extract_cp_conditions(db);
    ASSERT_EQ(edge_set(g), oracle::cp_conditions(db));
    ASSERT_TRUE(std::is_sorted(g.edges().begin(), g.edges().end(), listing_order));
    for (const auto& e : g.edges())
      for (std::size_t d = 0; d < db.size(); ++d) {
        const bool in = std::find(e.witness.begin(), e.witness.end(), d) != e.witness.end();
        ASSERT_EQ(in, status(e.upper, db[d]) != status(e.lower, db[d]));
      }
  }
}

TEST_F(CpProperties, TransitivelyClosed) {
  for (int i = 0; i < 500; ++i) {
    const std::size_t atoms = 1 + i % 4;
    const auto edges = edge_set(extract_cp_conditions(oracle::random_database(rng, atoms, 4, 2)));
    for (const auto& a : edges)
      for (const auto& b : edges)
        if (a.lower == b.upper) {
          ASSERT_TRUE(edges.count({a.upper, b.lower, std::max(a.strength, b.strength)}));
        }
  }
}

TEST_F(CpProperties, Acyclic) {
  for (int i = 0; i < 500; ++i) {
    const auto g = extract_cp_conditions(oracle::random_database(rng, 3, 4, 2));
    ASSERT_TRUE(cp_acyclicity_check(g).ok);
  }
}

TEST_F(CpProperties, MinOfCpAdmissibleIsCpAdmissible) {
  std::uniform_int_distribution<int> bump(0, 2);
  std::size_t pairs = 0;
  for (int i = 0; i < 500; ++i) {
    const auto db = oracle::random_database(rng, 3, 4, 2);
    if (!is_consistent(db)) continue;
    const auto base = kappa_bar(db);
    std::vector<Ranking> found{base, witness_ranking(db)};
    for (int k = 0; k < 40 && found.size() < 6; ++k) {
      Ranking r = base;
      for (std::uint32_t c = 0; c < r.size(); ++c) r.set(c, r[c] + Rank(bump(rng)));
      if (is_cp_admissible(r, db)) found.push_back(std::move(r));
    }
    for (std::size_t a = 0; a < found.size(); ++a)
      for (std::size_t b = a + 1; b < found.size(); ++b) {
        const Ranking m = pointwise_min(found[a], found[b]);
        ASSERT_TRUE(is_cp_admissible(m, db));
        ASSERT_TRUE(oracle::cp_admissible(db, oracle::to_ranks(m)));
        ++pairs;
      }
  }
  EXPECT_GT(pairs, 500u);
}

TEST_F(CpProperties, CpAdmissibleAgreesWithOracle) {
  for (int i = 0; i < 300; ++i) {
    const auto db = oracle::random_database(rng, 3, 4, 2);
    const oracle::Statuses s(db);
    const auto edges = oracle::cp_conditions(db);
    for (int k = 0; k < 20; ++k) {
      const auto r = oracle::random_ranking(rng, db.vocabulary(), 5);
      ASSERT_EQ(is_cp_admissible(r, db), oracle::cp_admissible(s, edges, oracle::to_ranks(r)));
    }
  }
}

TEST_F(CpProperties, ConsistencyEquivalence) {
  for (int i = 0; i < 500; ++i) {
    const auto db = oracle::random_database(rng, 3, 4, 2);
    const bool consistent = is_consistent(db);
    if (!consistent) {
      ASSERT_THROW(kappa_bar(db), InconsistentDatabase);
      continue;
    }
    const auto r = kappa_bar(db);
    ASSERT_TRUE(is_cp_admissible(r, db));
    const auto least = oracle::least_ranking(db, true, 1000);
    ASSERT_TRUE(least.has_value());
    ASSERT_EQ(oracle::to_ranks(r), *least);
  }
}

TEST_F(CpProperties, BoundedSearchOnTwoAtoms) {
  int inconsistent = 0;
  for (int i = 0; i < 300; ++i) {
    const auto db = oracle::random_database(rng, 2, 4, 2);
    const auto found = oracle::search_minimum(db, true, oracle::strength_budget(db));
    ASSERT_EQ(is_consistent(db), found.has_value());
    if (found) {
      ASSERT_EQ(oracle::to_ranks(kappa_bar(db)), *found);
    } else {
      ++inconsistent;
    }
  }
  EXPECT_GT(inconsistent, 0);
}

TEST_F(CpProperties, KappaBarTightDominatedAndAboveKappaPlus) {
  for (int i = 0; i < 500; ++i) {
    const auto db = oracle::random_database(rng, 3, 4, 2);
    if (!is_consistent(db)) continue;
    const oracle::Statuses s(db);
    const auto edges = oracle::cp_conditions(db);
    const auto bar = kappa_bar(db);
    const auto r = oracle::to_ranks(bar);
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (r[c] == 0) continue;
      ASSERT_EQ(r[c], oracle::largest_bound(s, edges, r, c));
      auto lower = r;
      --lower[c];
      ASSERT_FALSE(oracle::cp_admissible(s, edges, lower));
    }
    const auto w = witness_ranking(db);
    ASSERT_TRUE(is_cp_admissible(w, db));
    ASSERT_TRUE(bar.dominated_by(w));
    ASSERT_TRUE(kappa_plus(db).dominated_by(bar));
  }
}

}  // namespace
}  // namespace cpz
