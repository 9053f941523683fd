#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "pirl/error.hpp"
#include "pirl/persistence/discretization.hpp"
#include "pirl/persistence/policy_reuse.hpp"
#include "pirl/persistence/rule_store.hpp"

using namespace pirl;
using namespace pirl::persistence;

namespace {

// Scripted advisor that records how often it was asked.
class CountingAdvisor final : public advice::Advisor {
 public:
  explicit CountingAdvisor(advice::Advice reply) : reply_(reply) {}
  advice::Advice advise(std::span<const double>, Rng&) override {
    ++queries;
    return reply_;
  }
  int queries = 0;

 private:
  advice::Advice reply_;
};

struct Streams {
  Rng reuse{1}, advisor{2}, policy{3};
  SelectionStreams get() { return {reuse, advisor, policy}; }
};

RuleKey key(std::initializer_list<std::uint32_t> bins) { return RuleKey{bins}; }

}  // namespace

TEST(Discretize, BoundaryAndClipping) {
  const DiscretizationScheme s{{{-1.0, 1.0, 4}}};
  EXPECT_EQ(discretize(std::vector<double>{-1.0}, s), key({0}));
  EXPECT_EQ(discretize(std::vector<double>{1.0}, s), key({3}));
  EXPECT_EQ(discretize(std::vector<double>{7.0}, s), key({3}));
  EXPECT_EQ(discretize(std::vector<double>{-7.0}, s), key({0}));
  EXPECT_EQ(discretize(std::vector<double>{-0.5}, s), key({1}));
  EXPECT_EQ(discretize(std::vector<double>{0.49}, s), key({2}));
}

TEST(Discretize, CartPoleZeroStateLandsInUpperMiddleBins) {
  const auto k = discretize(std::vector<double>{0, 0, 0, 0}, DiscretizationScheme::cartpole_default());
  EXPECT_EQ(k, key({5, 5, 5, 5}));
}

TEST(Discretize, DimensionMismatchIsUsageError) {
  EXPECT_THROW(discretize(std::vector<double>{0, 0}, DiscretizationScheme::cartpole_default()), UsageError);
}

TEST(Discretize, IndicesInRangeAndMonotone) {
  const auto scheme = DiscretizationScheme::homenav_default(env::HomeNavParams{});
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> a(12), b(12);
    for (std::size_t d = 0; d < 12; ++d) {
      a[d] = rng.uniform(-15, 15);
      b[d] = a[d] + rng.uniform(0, 3);
    }
    const auto ka = discretize(a, scheme), kb = discretize(b, scheme);
    for (std::size_t d = 0; d < 12; ++d) {
      EXPECT_LT(ka.bins[d], 8u);
      EXPECT_LE(ka.bins[d], kb.bins[d]);
    }
  }
}

TEST(RuleStore, LastWriteWins) {
  RuleStore store;
  store.insert(key({1, 2}), 0);
  EXPECT_EQ(store.size(), 1u);
  store.insert(key({1, 2}), 1);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ(store.lookup(key({1, 2})), 1u);
  EXPECT_EQ(store.find(key({1, 2}))->inserts, 2u);
}

TEST(RuleStore, DistinctKeysGrowTheStore) {
  RuleStore store;
  for (std::uint32_t i = 0; i < 50; ++i) store.insert(key({i, i + 1}), i % 2);
  EXPECT_EQ(store.size(), 50u);
}

TEST(RuleStore, LookupIsExactAndCountsHits) {
  RuleStore store;
  EXPECT_FALSE(store.lookup(key({5, 5, 5, 5})).has_value());
  store.insert(key({5, 5, 5, 5}), 1);
  EXPECT_EQ(store.lookup(key({5, 5, 5, 5})), 1u);
  EXPECT_EQ(store.lookup(key({5, 5, 5, 5})), 1u);
  EXPECT_FALSE(store.lookup(key({5, 5, 4, 5})).has_value());
  EXPECT_FALSE(store.lookup(key({5, 5, 5, 6})).has_value());
  const RuleEntry* e = store.find(key({5, 5, 5, 5}));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->hits, 2u);
  EXPECT_EQ(e->action, 1u);
}

TEST(RuleStore, SizeNeverExceedsCellCount) {
  const DiscretizationScheme s{{{0, 1, 3}, {0, 1, 3}}};
  RuleStore store;
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) store.insert(discretize(std::vector<double>{rng.uniform(-1, 2), rng.uniform(-1, 2)}, s), 0);
  EXPECT_EQ(s.cell_count(), 9u);
  EXPECT_LE(store.size(), s.cell_count());
}

TEST(RuleStore, SnapshotRoundTripPreservesLookups) {
  RuleStore store;
  Rng rng(6);
  const auto scheme = DiscretizationScheme::cartpole_default();
  std::vector<RuleKey> keys;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> obs{rng.uniform(-2.4, 2.4), rng.uniform(-3, 3), rng.uniform(-0.2, 0.2), rng.uniform(-3, 3)};
    keys.push_back(discretize(obs, scheme));
    store.insert(keys.back(), rng.below(2));
    if (i % 3 == 0) store.lookup(keys.back());
  }
  const auto path = std::filesystem::temp_directory_path() / "pirl_rules_roundtrip.json";
  store.save(path);
  RuleStore loaded = RuleStore::load(path);
  std::filesystem::remove(path);
  EXPECT_EQ(loaded, store);
  for (const auto& k : keys) EXPECT_EQ(loaded.lookup(k), store.lookup(k));
  EXPECT_THROW(RuleStore::from_json("{\"not\":\"a list\"}"), ValidationError);
}

TEST(PolicyReuse, ProbabilityScheduleExamples) {
  EXPECT_EQ(ppr_probability({0.8, 0.99}, 0), 0.8);
  for (int e = 0; e < 300; e += 37) EXPECT_EQ(ppr_probability({0.8, 1.0}, e), 0.8);
  // 0.8 * 0.99^100, evaluated directly.
  EXPECT_NEAR(ppr_probability({0.8, 0.99}, 100), 0.29282587301858337, 1e-12);
}

TEST(PolicyReuse, ProbabilityIsNonIncreasing) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const PprParams p{rng.uniform(), rng.uniform(0.5, 1.0)};
    for (int e = 0; e < 400; ++e) EXPECT_LE(ppr_probability(p, e + 1), ppr_probability(p, e));
  }
}

TEST(PersistentSelect, StoredRuleShortCircuitsAdvisor) {
  const auto scheme = DiscretizationScheme::cartpole_default();
  const std::vector<double> obs{0, 0, 0, 0}, q{1.0, 0.0};
  RuleStore store;
  store.insert(discretize(obs, scheme), 1);
  CountingAdvisor advisor(advice::Advice::action(0));
  Streams s;
  const auto sel = persistent_select(obs, q, store, scheme, advisor, 1.0, 0.0, s.get());
  EXPECT_EQ(sel.action, 1u);
  EXPECT_EQ(sel.provenance, Provenance::Rule);
  EXPECT_FALSE(sel.advisor_queried);
  EXPECT_EQ(advisor.queries, 0);
}

TEST(PersistentSelect, SilentAdvisorFallsBackToGreedy) {
  const auto scheme = DiscretizationScheme::cartpole_default();
  const std::vector<double> obs{0.1, 0, 0, 0}, q{-1.0, 2.0};
  RuleStore store;
  CountingAdvisor advisor(advice::Advice::none());
  Streams s;
  const auto sel = persistent_select(obs, q, store, scheme, advisor, 1.0, 0.0, s.get());
  EXPECT_EQ(sel.action, 1u);
  EXPECT_EQ(sel.provenance, Provenance::Policy);
  EXPECT_TRUE(sel.advisor_queried);
  EXPECT_TRUE(store.empty());
}

TEST(PersistentSelect, OptimisticAdviceIsReturnedAndStored) {
  const auto scheme = DiscretizationScheme::cartpole_default();
  qnet::DenseLayer l{Eigen::MatrixXd::Zero(2, 4), Eigen::Vector2d(0.0, 3.0)};
  advice::SimulatedAdvisor advisor(advice::AdvisorProfile::optimistic(),
                                   advice::OracleAgent(qnet::QNetwork::from_layers({l})));
  const std::vector<double> obs{0.3, -0.1, 0.02, 0.5}, q{5.0, 0.0};
  RuleStore store;
  Streams s;
  const auto sel = persistent_select(obs, q, store, scheme, advisor, 0.8, 0.0, s.get());
  EXPECT_EQ(sel.action, 1u);
  EXPECT_EQ(sel.provenance, Provenance::Advisor);
  EXPECT_TRUE(sel.rule_inserted);
  ASSERT_NE(store.find(discretize(obs, scheme)), nullptr);
  EXPECT_EQ(store.find(discretize(obs, scheme))->action, 1u);
}

TEST(PersistentSelect, AdviceReplaysForAnyObservationInTheSameCell) {
  const auto scheme = DiscretizationScheme::cartpole_default();
  RuleStore store;
  CountingAdvisor advisor(advice::Advice::action(0));
  Streams s;
  const std::vector<double> q{0.0, 1.0};
  const std::vector<double> first{0.05, 0.1, 0.01, 0.2};
  persistent_select(first, q, store, scheme, advisor, 0.0, 0.0, s.get());
  ASSERT_EQ(advisor.queries, 1);

  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    // Jitter within the same bins (bin widths: 0.48, 0.6, 0.042, 0.7).
    std::vector<double> o{0.0 + rng.uniform(0, 0.47), 0.0 + rng.uniform(0, 0.59), 0.0 + rng.uniform(0, 0.041),
                          0.0 + rng.uniform(0, 0.69)};
    ASSERT_EQ(discretize(o, scheme), discretize(first, scheme));
    const auto sel = persistent_select(o, q, store, scheme, advisor, 1.0, 0.0, s.get());
    EXPECT_EQ(sel.action, 0u);
    EXPECT_EQ(sel.provenance, Provenance::Rule);
  }
  EXPECT_EQ(advisor.queries, 1);
}

TEST(PprParams, Validation) {
  EXPECT_THROW((PprParams{1.2, 0.9}.validate()), ValidationError);
  EXPECT_THROW((PprParams{0.8, 0.0}.validate()), ValidationError);
  EXPECT_NO_THROW(PprParams{}.validate());
}
