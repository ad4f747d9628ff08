#include "oierobust/robustness.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "support/generators.hpp"

namespace oierobust {
namespace {

std::vector<SentenceScore> from_f1(const std::vector<double>& f1s) {
  std::vector<SentenceScore> out;
  for (const double f : f1s) out.push_back({f, f, f, {}});
  return out;
}

TEST(SelectWorst, ErrorAnalysisRows) {
  EXPECT_DOUBLE_EQ(select_worst(from_f1({0.486, 0.378, 0.553, 0.119})).robust.f1,
                   0.119);
  EXPECT_DOUBLE_EQ(select_worst(from_f1({0.597, 0.414, 0.359, 0.157})).robust.f1,
                   0.157);
  EXPECT_DOUBLE_EQ(select_worst(from_f1({0.48, 0.421, 0.533, 0.334})).robust.f1,
                   0.334);
  EXPECT_EQ(select_worst(from_f1({0.48, 0.421, 0.533, 0.334})).worst_index, 3u);
}

TEST(SelectWorst, TiesGoToLowestIndex) {
  EXPECT_EQ(select_worst(from_f1({0.5, 0.2, 0.9, 0.2})).worst_index, 1u);
}

TEST(SelectWorst, EmptyRejected) {
  EXPECT_THROW(select_worst({}), ArgumentError);
}

// Three small cliques whose tables are easy to evaluate by hand.
struct Fixture {
  std::vector<Clique> cliques;
  SystemOutputs outputs;
};

Fixture three_cliques() {
  const auto g1 = ExtractionTuple::from_text("shot", {"booth", "lincoln"});
  const auto g2 = ExtractionTuple::from_text("was", {"lincoln", "president"});
  const auto junk = ExtractionTuple::from_text("y", {"x", "z"});
  const auto killed = ExtractionTuple::from_text("killed", {"booth", "lincoln"});
  const auto assassinated =
      ExtractionTuple::from_text("assassinated", {"booth", "lincoln"});
  Fixture f;
  f.cliques = {
      {"a", {{"a0", "", {}, {g1}}, {"a1", "", {}, {g1}}}},
      {"b", {{"b0", "", {}, {g1, g2}}, {"b1", "", {}, {g2}}}},
      {"c", {{"c0", "", {}, {assassinated}}}},
  };
  f.outputs = {{"a0", {g1}}, {"a1", {g1, junk}}, {"b0", {g1}},
               {"b1", {}},   {"c0", {killed}}};
  return f;
}

TEST(ScoreClique, PicksWorstSentence) {
  const auto f = three_cliques();
  const auto a = score_clique(f.cliques[0], f.outputs);
  EXPECT_EQ(a.worst_index, 1u);
  EXPECT_DOUBLE_EQ(a.robust.precision, 0.5);
  EXPECT_DOUBLE_EQ(a.robust.recall, 1.0);
  const auto b = score_clique(f.cliques[1], f.outputs);
  EXPECT_EQ(b.worst_index, 1u);
  EXPECT_EQ(b.robust.f1, 0.0);
}

TEST(ScoreClique, MissingOutputIsAnError) {
  auto f = three_cliques();
  f.outputs.erase("a1");
  EXPECT_THROW(score_clique(f.cliques[0], f.outputs), ValidationError);
}

TEST(ScoreBenchmark, UniformMeans) {
  const auto f = three_cliques();
  const auto r = score_benchmark(f.cliques, f.outputs);
  EXPECT_NEAR(r.mean_robust_f1, 4.0 / 9.0, 1e-12);
  EXPECT_NEAR(r.mean_robust_p, 7.0 / 18.0, 1e-12);
  EXPECT_NEAR(r.mean_robust_r, 5.0 / 9.0, 1e-12);
  EXPECT_NEAR(r.mean_carb_f1, 3.0 / 5.0, 1e-12);
  EXPECT_NEAR(r.mean_carb_p, 19.0 / 30.0, 1e-12);
  EXPECT_NEAR(r.mean_carb_r, 19.0 / 30.0, 1e-12);
  EXPECT_EQ(r.sentence_count, 5u);
}

TEST(ScoreBenchmark, SizeWeightedMeans) {
  const auto f = three_cliques();
  const auto r = score_benchmark(f.cliques, f.outputs,
                                 {CliqueWeighting::kBySize, 1});
  EXPECT_NEAR(r.mean_robust_f1, 2.0 / 5.0, 1e-12);
  EXPECT_NEAR(r.mean_carb_f1, 3.0 / 5.0, 1e-12);
}

TEST(ScoreBenchmark, EmptyRejected) {
  EXPECT_THROW(score_benchmark({}, {}), ArgumentError);
}

TEST(RobustProperties, WorstCaseDominance) {
  testing::Rng rng(41);
  std::vector<Clique> cliques;
  SystemOutputs outputs;
  for (int i = 0; i < 300; ++i)
    cliques.push_back(testing::random_clique(rng, "c" + std::to_string(i), outputs));
  const auto r = score_benchmark(cliques, outputs);
  for (const auto& cs : r.clique_scores) {
    double lo = 1.0;
    for (const auto& s : cs.per_sentence) lo = std::min(lo, s.f1);
    ASSERT_EQ(cs.robust.f1, lo);
  }
  EXPECT_LE(r.mean_robust_f1, r.mean_carb_f1);
}

TEST(RobustProperties, ThreadCountDoesNotChangeResults) {
  testing::Rng rng(42);
  std::vector<Clique> cliques;
  SystemOutputs outputs;
  for (int i = 0; i < 100; ++i)
    cliques.push_back(testing::random_clique(rng, "c" + std::to_string(i), outputs));
  const auto one = score_benchmark(cliques, outputs, {CliqueWeighting::kUniform, 1});
  const auto many = score_benchmark(cliques, outputs, {CliqueWeighting::kUniform, 8});
  EXPECT_EQ(one.mean_robust_f1, many.mean_robust_f1);
  EXPECT_EQ(one.mean_carb_p, many.mean_carb_p);
  for (std::size_t i = 0; i < cliques.size(); ++i)
    EXPECT_EQ(one.clique_scores[i].worst_index, many.clique_scores[i].worst_index);
}

}  // namespace
}  // namespace oierobust
