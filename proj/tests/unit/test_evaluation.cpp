#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "emojirec/corpus/labels.hpp"
#include "emojirec/error.hpp"
#include "emojirec/eval/evaluate.hpp"
#include "emojirec/eval/metrics.hpp"
#include "emojirec/eval/report.hpp"
#include "emojirec/nn/ops.hpp"
#include "emojirec/nn/rng.hpp"

using namespace emojirec;
using namespace emojirec::eval;

namespace {

// Probability vector over n classes that puts gold at the given rank with
// strictly distinct values.
Prediction at_rank(std::size_t n, LabelId gold, std::size_t rank) {
  std::vector<double> p(n);
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < n; ++k)
    if (static_cast<LabelId>(k) != gold) others.push_back(k);
  double total = 0.0;
  std::size_t next = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    const double v = static_cast<double>(n + 1 - r);
    total += v;
    if (r == rank) {
      p[static_cast<std::size_t>(gold)] = v;
    } else {
      p[others[next++]] = v;
    }
  }
  for (double& v : p) v /= total;
  return {p, gold};
}

// Sort-and-scan oracle: stable sort of class indices by descending
// probability, then the position of gold.
std::size_t oracle_rank(const Prediction& p) {
  std::vector<std::size_t> order(p.probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.probs[a] > p.probs[b]; });
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), static_cast<std::size_t>(p.gold)) - order.begin()) + 1;
}

std::vector<Prediction> random_predictions(std::size_t n, std::size_t n_e, std::uint64_t seed, bool coarse) {
  nn::RngStream rng(seed);
  std::vector<Prediction> out;
  for (std::size_t i = 0; i < n; ++i) {
    nn::Vector z(n_e);
    // coarse logits produce many exact ties
    for (double& v : z) v = coarse ? static_cast<double>(rng.below(3)) : rng.uniform(-3, 3);
    out.push_back({nn::softmax(z), static_cast<LabelId>(rng.below(n_e))});
  }
  return out;
}

}  // namespace

TEST(Rank, ArgmaxIsRankOne) {
  EXPECT_EQ(rank_of_gold({{0.1, 0.7, 0.2}, 1}), 1u);
  EXPECT_EQ(rank_of_gold({{0.1, 0.7, 0.2}, 2}), 2u);
  EXPECT_EQ(rank_of_gold({{0.1, 0.7, 0.2}, 0}), 3u);
}

TEST(Rank, UniformTieRule) {
  nn::Vector u(10, 0.1);
  EXPECT_EQ(rank_of_gold({u, 0}), 1u);
  EXPECT_EQ(rank_of_gold({u, 9}), 10u);
  EXPECT_EQ(rank_of_gold({u, 4}), 5u);
  EXPECT_EQ(rank_of_gold({{0.4, 0.2, 0.4}, 2}), 2u);
}

TEST(Rank, RejectsInvalidPrediction) {
  EXPECT_THROW(rank_of_gold({{0.5, 0.5}, 2}), Error);
  EXPECT_THROW(rank_of_gold({{0.5, 0.6}, 0}), Error);
}

TEST(Argmax, LowestIndexWinsTies) {
  EXPECT_EQ(argmax(std::vector<double>{0.3, 0.4, 0.4}), 1u);
  EXPECT_EQ(argmax(std::vector<double>(4, 0.25)), 0u);
}

TEST(Metrics, RanksOneTwoFour) {
  std::vector<Prediction> p{at_rank(5, 0, 1), at_rank(5, 3, 2), at_rank(5, 1, 4)};
  EXPECT_EQ(rank_of_gold(p[2]), 4u);
  EXPECT_DOUBLE_EQ(precision_at_k(p, 1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(precision_at_k(p, 3), 2.0 / 3);
  EXPECT_DOUBLE_EQ(mean_reciprocal_rank(p), 1.75 / 3);
  EXPECT_NEAR(mean_reciprocal_rank(p), 0.583333, 1e-6);
}

TEST(Metrics, PerfectAndFullCandidateSet) {
  std::vector<Prediction> p{at_rank(4, 0, 1), at_rank(4, 2, 1)};
  EXPECT_EQ(precision_at_k(p, 1), 1.0);
  EXPECT_EQ(mean_reciprocal_rank(p), 1.0);
  auto r = random_predictions(50, 4, 1, false);
  EXPECT_EQ(precision_at_k(r, 4), 1.0);
}

TEST(Metrics, SingleRankTwo) {
  std::vector<Prediction> p{at_rank(3, 1, 2)};
  EXPECT_EQ(mean_reciprocal_rank(p), 0.5);
}

TEST(Metrics, EmptyIsDataErrorAndKChecked) {
  std::vector<Prediction> none;
  try {
    precision_at_k(none, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::data);
  }
  EXPECT_THROW(mean_reciprocal_rank(none), Error);
  std::vector<Prediction> p{at_rank(3, 1, 2)};
  EXPECT_THROW(precision_at_k(p, 0), Error);
  EXPECT_THROW(precision_at_k(p, 4), Error);
}

TEST(Metrics, MatchBruteForceOracleExactly) {
  for (bool coarse : {false, true}) {
    auto preds = random_predictions(1000, 10, coarse ? 5 : 4, coarse);
    std::size_t hit1 = 0, hit3 = 0;
    double rr = 0.0;
    for (const auto& p : preds) {
      const auto r = oracle_rank(p);
      ASSERT_EQ(rank_of_gold(p), r);
      hit1 += r <= 1;
      hit3 += r <= 3;
      rr += 1.0 / static_cast<double>(r);
    }
    EXPECT_EQ(precision_at_k(preds, 1), static_cast<double>(hit1) / 1000);
    EXPECT_EQ(precision_at_k(preds, 3), static_cast<double>(hit3) / 1000);
    EXPECT_EQ(mean_reciprocal_rank(preds), rr / 1000);
  }
}

TEST(Metrics, OrderingInvariants) {
  auto preds = random_predictions(500, 6, 8, false);
  const double p1 = precision_at_k(preds, 1), p3 = precision_at_k(preds, 3), mrr = mean_reciprocal_rank(preds);
  EXPECT_LE(p1, p3);
  EXPECT_LE(p1, mrr);
  EXPECT_LE(mrr, 1.0);
  nn::RngStream rng(3);
  rng.shuffle(std::span(preds));
  EXPECT_EQ(precision_at_k(preds, 1), p1);
  EXPECT_EQ(precision_at_k(preds, 3), p3);
  EXPECT_NEAR(mean_reciprocal_rank(preds), mrr, 1e-15);
}

TEST(Report, ConfusionAccounting) {
  auto preds = random_predictions(300, 5, 2, true);
  auto r = build_report(preds, 5);
  EXPECT_EQ(r.n, 300u);
  std::size_t total = 0, trace = 0;
  std::vector<std::size_t> gold_counts(5, 0);
  for (const auto& p : preds) ++gold_counts[static_cast<std::size_t>(p.gold)];
  for (std::size_t g = 0; g < 5; ++g) {
    const auto row = std::accumulate(r.confusion[g].begin(), r.confusion[g].end(), std::size_t{0});
    EXPECT_EQ(row, gold_counts[g]);
    total += row;
    trace += r.confusion[g][g];
  }
  EXPECT_EQ(total, r.n);
  EXPECT_DOUBLE_EQ(static_cast<double>(trace) / r.n, r.p_at_1);
  for (std::size_t g = 0; g < 5; ++g)
    EXPECT_DOUBLE_EQ(*r.per_class_p1[g], static_cast<double>(r.confusion[g][g]) / gold_counts[g]);
}

TEST(Report, MissingClassIsNull) {
  std::vector<Prediction> p{at_rank(3, 0, 1), at_rank(3, 1, 2)};
  auto r = build_report(p, 3);
  EXPECT_FALSE(r.per_class_p1[2].has_value());
  corpus::LabelSet labels({"heart", "cry", "laugh"});
  const std::string want =
      "{\n"
      "  \"n\": 2,\n"
      "  \"p_at_1\": 50.0,\n"
      "  \"p_at_3\": 100.0,\n"
      "  \"mrr\": 75.0,\n"
      "  \"per_class_p1\": {\n"
      "    \"heart\": 100.0,\n"
      "    \"cry\": 0.0,\n"
      "    \"laugh\": null\n"
      "  },\n"
      "  \"confusion\": [\n"
      "    [\n"
      "      1,\n"
      "      0,\n"
      "      0\n"
      "    ],\n"
      "    [\n"
      "      1,\n"
      "      0,\n"
      "      0\n"
      "    ],\n"
      "    [\n"
      "      0,\n"
      "      0,\n"
      "      0\n"
      "    ]\n"
      "  ]\n"
      "}\n";
  EXPECT_EQ(report_to_json(r, labels), want);
  EXPECT_EQ(report_to_json(r, labels), report_to_json(build_report(p, 3), labels));
}

TEST(Report, TwoClassesUseFullCandidateSet) {
  std::vector<Prediction> p{at_rank(2, 0, 2)};
  auto r = build_report(p, 2);
  EXPECT_EQ(r.p_at_3, 1.0);
}

TEST(Report, PercentRounding) {
  EXPECT_EQ(to_percent(0.3541), 35.4);
  EXPECT_EQ(to_percent(0.65749), 65.7);
  EXPECT_EQ(format_percent(0.548), "54.8");
  EXPECT_EQ(format_percent(1.0), "100.0");
}

TEST(Report, PerClassTable) {
  corpus::LabelSet labels({"heart", "cry"});
  std::vector<Prediction> a{at_rank(2, 0, 1), at_rank(2, 1, 1)};
  std::vector<Prediction> b{at_rank(2, 0, 2)};
  auto t = per_class_table({{"s-lstm", build_report(a, 2)}, {"h-lstm", build_report(b, 2)}}, labels);
  EXPECT_EQ(t, "emoji\ts-lstm\th-lstm\nheart\t100.0\t0.0\ncry\t100.0\t-\n");
}

TEST(Evaluate, OracleModelIsPerfect) {
  // a bag-of-words head whose weights copy each class's private token
  enc::ModelConfig mc;
  mc.encoder = enc::EncoderKind::bow_single;
  mc.n_e = 3;
  mc.vocab_size = 5;
  auto model = train::TrainedModel::zeros(mc);
  auto& w = std::get<enc::TfIdfModel>(model.weights);
  w.idf.assign(5, 1.0);
  w.idf[0] = w.idf[1] = 0.0;
  for (std::size_t c = 0; c < 3; ++c) w.weights(c, c + 2) = 60.0;
  std::vector<LabeledDialogue> split{{{{2}}, 0}, {{{3}}, 1}, {{{4}}, 2}, {{{4, 4}}, 2}};
  auto r = evaluate(model, split);
  EXPECT_EQ(r.p_at_1, 1.0);
  EXPECT_EQ(r.p_at_3, 1.0);
  EXPECT_EQ(r.mrr, 1.0);
}

TEST(Evaluate, UniformModelFollowsTieRule) {
  // zero head: every class equal, so gold g sits at rank g + 1
  enc::ModelConfig mc;
  mc.encoder = enc::EncoderKind::single;
  mc.n_x = mc.n_h = 4;
  mc.n_e = 10;
  mc.vocab_size = 6;
  auto model = train::TrainedModel::zeros(mc);
  std::vector<LabeledDialogue> split;
  for (int i = 0; i < 10000; ++i) split.push_back({{{static_cast<TokenId>(2 + i % 4)}}, i % 10});
  auto r = evaluate(model, split);
  double harmonic = 0.0;
  for (int k = 1; k <= 10; ++k) harmonic += 1.0 / k;
  EXPECT_DOUBLE_EQ(r.p_at_1, 0.1);
  EXPECT_NEAR(r.mrr, harmonic / 10, 1e-12);
  EXPECT_NEAR(r.mrr, 0.2929, 1e-4);
  EXPECT_EQ(r.confusion[9][0], 1000u);
}

TEST(Evaluate, RandomLogitsMatchUniformExpectation) {
  auto preds = random_predictions(10000, 10, 17, false);
  double harmonic = 0.0;
  for (int k = 1; k <= 10; ++k) harmonic += 1.0 / k;
  EXPECT_NEAR(precision_at_k(preds, 1), 0.1, 0.01);
  EXPECT_NEAR(mean_reciprocal_rank(preds), harmonic / 10, 0.01);
}

TEST(Evaluate, EmptySplitIsDataError) {
  enc::ModelConfig mc;
  mc.encoder = enc::EncoderKind::single;
  mc.n_x = mc.n_h = 2;
  mc.n_e = 2;
  mc.vocab_size = 4;
  auto model = train::TrainedModel::zeros(mc);
  try {
    evaluate(model, std::vector<LabeledDialogue>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::data);
  }
}
