#include "oierobust/syntax_metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/fragment_oracle.hpp"
#include "support/generators.hpp"

namespace oierobust {
namespace {

HwsConfig strict(double alpha = 0.5) {
  HwsConfig c;
  c.alpha = alpha;
  c.min_run = 2;
  return c;
}

HwsConfig uniform(double alpha = 0.5) {
  HwsConfig c;
  c.alpha = alpha;
  c.min_run = 1;
  return c;
}

const LabelSequence kSNpVp{"S", "NP", "VP"};
const LabelSequence kSVpNp{"S", "VP", "NP"};

TEST(Hws, IdenticalTreesAreAtDistanceZero) {
  const auto t = parse_tree("(S (NP (DT the) (NN cat)) (VP (VBD sat)))");
  for (const double a : {0.1, 0.5, 1.0}) {
    EXPECT_DOUBLE_EQ(hws_distance(t, t, strict(a)), 0.0);
    EXPECT_DOUBLE_EQ(hws_distance(t, t, uniform(a)), 0.0);
  }
}

TEST(Hws, StrictModeIgnoresSingletonRuns) {
  EXPECT_DOUBLE_EQ(hws_distance(kSNpVp, kSVpNp, strict()), 1.0);
}

TEST(Hws, UniformModeCountsSingletonRuns) {
  const auto r = hws_trace(kSNpVp, kSVpNp, uniform());
  EXPECT_NEAR(r.distance, 1.0 - (1.0 + 0.5 + 0.25) / 3.0, 1e-15);
  ASSERT_EQ(r.runs.size(), 3u);
  EXPECT_EQ(r.matched_length, 3u);
}

TEST(Hws, TreeOverloadPrunesAtHeight) {
  // Height 2 leaves (S NP VP) vs (S VP NP).
  const auto a = parse_tree("(S (NP (DT a)) (VP b))");
  const auto b = parse_tree("(S (VP b) (NP (DT a)))");
  HwsConfig c = uniform();
  c.height = 2;
  EXPECT_NEAR(hws_distance(a, b, c), 1.0 - 1.75 / 3.0, 1e-15);
}

TEST(Hws, DropWordsOption) {
  const auto a = parse_tree("(S (NP x) (VP y))");
  const auto b = parse_tree("(S (NP p) (VP q))");
  HwsConfig c = strict();
  EXPECT_GT(hws_distance(a, b, c), 0.0);
  c.include_words = false;
  EXPECT_DOUBLE_EQ(hws_distance(a, b, c), 0.0);
}

TEST(Hws, FinalRunAcceptedRegardlessOfMinRun) {
  // Only the last cell matches: a length-1 run closed after the scan.
  const auto r = hws_trace({"A", "B"}, {"C", "B"}, strict());
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0].length, 1u);
  EXPECT_DOUBLE_EQ(r.distance, 0.5);
}

TEST(Hws, InteriorRunNeedsTwoInStrictMode) {
  // Run S,NP (length 2) ends before a mismatch at (2,2).
  const auto r = hws_trace({"S", "NP", "X"}, {"S", "NP", "Y"}, strict(0.5));
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0].length, 2u);
  EXPECT_NEAR(r.distance, 1.0 - 2.0 / 3.0, 1e-15);
}

TEST(Hws, DiscountFollowsAcceptanceOrder) {
  // Two interior runs of length 2 separated by a mismatch, then a final
  // single match.
  const LabelSequence q1{"A", "B", "X", "C", "D", "E", "F"};
  const LabelSequence q2{"A", "B", "Y", "C", "D", "Z", "F"};
  const auto r = hws_trace(q1, q2, strict(0.5));
  ASSERT_EQ(r.runs.size(), 3u);
  EXPECT_EQ(r.runs[0].length, 2u);
  EXPECT_EQ(r.runs[1].length, 2u);
  EXPECT_EQ(r.runs[2].length, 1u);
  EXPECT_NEAR(r.weighted_length, 2.0 + 2.0 * 0.5 + 1.0 * 0.25, 1e-15);
}

TEST(Hws, GuardBlocksRepeatedSpan) {
  const LabelSequence q1{"S", "VP", "NP", "X"};
  const LabelSequence q2{"S", "VP", "NP", "VP", "NP", "Y"};
  const auto revised = hws_trace(q1, q2, strict());
  EXPECT_EQ(revised.matched_length, 3u);
  const auto unrevised = hws_trace(q1, q2, strict(), false);
  EXPECT_EQ(unrevised.matched_length, 5u);
  // Without discounting the overlap pushes the distance below zero.
  EXPECT_LT(hws_trace(q1, q2, strict(1.0), false).distance, 0.0);
  EXPECT_DOUBLE_EQ(hws_trace(q1, q2, strict(1.0)).distance, 0.25);
}

TEST(Hws, ConfigValidation) {
  HwsConfig c;
  c.alpha = 0.0;
  EXPECT_THROW(hws_distance(kSNpVp, kSVpNp, c), ArgumentError);
  c.alpha = 1.5;
  EXPECT_THROW(hws_distance(kSNpVp, kSVpNp, c), ArgumentError);
  c = HwsConfig{};
  c.min_run = 3;
  EXPECT_THROW(hws_distance(kSNpVp, kSVpNp, c), ArgumentError);
  c = HwsConfig{};
  c.height = 0;
  EXPECT_THROW(hws_distance(parse_tree("(X)"), parse_tree("(X)"), c),
               ArgumentError);
  EXPECT_THROW(hws_distance(LabelSequence{}, kSVpNp, HwsConfig{}),
               ArgumentError);
}

TEST(HwsOracle, Examples) {
  const LabelSequence q{"S", "NP", "VP", "PP"};
  EXPECT_DOUBLE_EQ(hws_distance_oracle(q, q, strict()), 0.0);
  EXPECT_DOUBLE_EQ(hws_distance_oracle(q, q, uniform()), 0.0);

  const LabelSequence a{"S", "VP", "NP"};
  const LabelSequence b{"S", "VP", "NP", "VP"};
  for (const auto& cfg : {strict(), uniform()}) {
    const auto r = hws_oracle_trace(a, b, cfg);
    EXPECT_LE(r.matched_length, 3u);
    EXPECT_GE(r.distance, 0.0);
  }
  EXPECT_DOUBLE_EQ(hws_distance_oracle(a, b, uniform()), 0.0);

  EXPECT_DOUBLE_EQ(hws_distance_oracle({"A", "B"}, {"C", "D", "E"}, uniform()),
                   1.0);
}

TEST(HwsOracle, RejectsLongSequences) {
  const LabelSequence longer(11, "S");
  EXPECT_THROW(hws_distance_oracle(longer, kSNpVp, strict()), ArgumentError);
}

TEST(HwsProperties, AgreesWithOracleOnRandomSequences) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto q1 = testing::random_sequence(rng, testing::uniform(rng, 1, 10),
                                             testing::uniform(rng, 1, 5));
    const auto q2 = testing::random_sequence(rng, testing::uniform(rng, 1, 10),
                                             testing::uniform(rng, 1, 5));
    for (const int mr : {1, 2}) {
      HwsConfig c;
      c.min_run = mr;
      c.alpha = 0.1 + 0.9 * std::uniform_real_distribution<double>()(rng);
      for (const bool revised : {true, false}) {
        const auto dp = hws_trace(q1, q2, c, revised);
        const auto ref = hws_oracle_trace(q1, q2, c, revised);
        ASSERT_NEAR(dp.distance, ref.distance, 1e-12);
        ASSERT_EQ(dp.runs.size(), ref.runs.size());
      }
      const auto r = hws_trace(q1, q2, c);
      EXPECT_GE(r.distance, 0.0);
      EXPECT_LE(r.distance, 1.0);
      EXPECT_LE(r.matched_length, std::min(q1.size(), q2.size()));
    }
  }
}

TEST(HwsProperties, RecordedRunsReproduceWeightedLength) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto q1 = testing::random_sequence(rng, testing::uniform(rng, 1, 14), 3);
    const auto q2 = testing::random_sequence(rng, testing::uniform(rng, 1, 14), 3);
    const auto lo = hws_trace(q1, q2, uniform(0.3));
    const auto hi = hws_trace(q1, q2, uniform(0.8));
    ASSERT_EQ(lo.runs.size(), hi.runs.size());
    double l = 0.0;
    for (std::size_t k = 0; k < lo.runs.size(); ++k) {
      EXPECT_EQ(lo.runs[k].exponent, k);
      EXPECT_EQ(lo.runs[k].length, hi.runs[k].length);
      l += static_cast<double>(lo.runs[k].length) * std::pow(0.3, double(k));
    }
    EXPECT_NEAR(l, lo.weighted_length, 1e-12);
    EXPECT_LE(lo.weighted_length, hi.weighted_length + 1e-12);
  }
}

TEST(HwsProperties, SelfDistanceZeroOnRandomTrees) {
  testing::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto t = testing::random_tree(rng, 2 + i % 30);
    HwsConfig c = i % 2 ? strict(0.2 + 0.1 * (i % 8)) : uniform(0.7);
    c.height = 1 + i % 5;
    ASSERT_DOUBLE_EQ(hws_distance(t, t, c), 0.0) << serialize(t);
  }
}

TEST(Ctk, WorkedExamples) {
  const auto t1 = parse_tree("(S (NP a) (VP b))");
  const auto t2 = parse_tree("(S (NP a) (VP c))");
  const CtkConfig one{1.0};
  EXPECT_DOUBLE_EQ(ctk_kernel(t1, t1, one), 6.0);
  EXPECT_DOUBLE_EQ(ctk_kernel(t1, t2, one), 3.0);
  EXPECT_DOUBLE_EQ(ctk_kernel(t2, t2, one), 6.0);
  EXPECT_DOUBLE_EQ(ctk_similarity(t1, t2, one), 0.5);
  EXPECT_DOUBLE_EQ(ctk_similarity(t1, t1, one), 1.0);
}

TEST(Ctk, DisjointProductions) {
  const auto t1 = parse_tree("(S (NP a) (VP b))");
  const auto t2 = parse_tree("(SBAR (IN c) (S d))");
  EXPECT_DOUBLE_EQ(ctk_kernel(t1, t2, CtkConfig{}), 0.0);
  EXPECT_DOUBLE_EQ(ctk_similarity(t1, t2, CtkConfig{}), 0.0);
}

TEST(Ctk, DecayWeightsFragmentsBySize) {
  // With lambda, C(S,S) = lambda (1 + lambda)^2 and each preterminal adds
  // lambda.
  const auto t = parse_tree("(S (NP a) (VP b))");
  const double l = 0.5;
  EXPECT_NEAR(ctk_kernel(t, t, CtkConfig{l}), l * (1 + l) * (1 + l) + 2 * l,
              1e-15);
}

TEST(Ctk, SingleNodeTreeHasNoFragments) {
  const auto x = parse_tree("(X)");
  EXPECT_DOUBLE_EQ(ctk_kernel(x, x, CtkConfig{}), 0.0);
  EXPECT_DOUBLE_EQ(ctk_similarity(x, x, CtkConfig{}), 0.0);
}

TEST(Ctk, InvalidLambda) {
  const auto x = parse_tree("(X a)");
  EXPECT_THROW(ctk_kernel(x, x, CtkConfig{0.0}), ArgumentError);
  EXPECT_THROW(ctk_kernel(x, x, CtkConfig{1.01}), ArgumentError);
}

TEST(CtkProperties, MatchesFragmentEnumeration) {
  testing::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto a = testing::random_tree(rng, 2 + i % 7);
    const auto b = testing::random_tree(rng, 2 + (i / 7) % 7);
    const double lambda = (i % 3 == 0) ? 1.0 : 0.25 + 0.5 * (i % 2);
    const double k = ctk_kernel(a, b, CtkConfig{lambda});
    EXPECT_NEAR(k, testing::brute_force_kernel(a, b, lambda), 1e-9)
        << serialize(a) << " vs " << serialize(b);
    EXPECT_DOUBLE_EQ(k, ctk_kernel(b, a, CtkConfig{lambda}));
    const double s = ctk_similarity(a, b, CtkConfig{lambda});
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
    if (!a.is_leaf()) {
      EXPECT_NEAR(ctk_similarity(a, a, CtkConfig{lambda}), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace oierobust
