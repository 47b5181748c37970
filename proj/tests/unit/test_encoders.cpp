#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "emojirec/encoders/bow.hpp"
#include "emojirec/encoders/model.hpp"
#include "emojirec/error.hpp"
#include "emojirec/nn/gradcheck.hpp"

using namespace emojirec;
using namespace emojirec::enc;

namespace {

ModelConfig toy_config(EncoderKind kind, std::size_t dim = 4) {
  ModelConfig c;
  c.n_x = dim;
  c.n_h = dim;
  c.n_e = 5;
  c.vocab_size = 20;
  c.encoder = kind;
  return c;
}

// Parameters drawn wider than the initializer so every gradient is well
// above finite-difference noise.
ParameterSet random_params(const ModelConfig& c, std::uint64_t seed) {
  nn::RngStream rng(seed);
  auto p = ParameterSet::initialize(c, rng);
  for (auto& t : p.tensors())
    for (double& v : t.data) v = rng.uniform(-1.0, 1.0);
  return p;
}

Sentence random_sentence(nn::RngStream& rng, std::size_t max_len) {
  Sentence s(1 + rng.below(max_len));
  for (auto& id : s) id = static_cast<TokenId>(kFirstWordId + rng.below(18));
  return s;
}

std::vector<std::span<const double>> embed(const Sentence& s, const ParameterSet& p) {
  std::vector<std::span<const double>> xs;
  for (TokenId id : s) xs.push_back(p.embeddings.row(static_cast<std::size_t>(id)));
  return xs;
}

}  // namespace

TEST(EncoderKind, NamesRoundTrip) {
  for (auto k : {EncoderKind::single, EncoderKind::flattened, EncoderKind::hierarchical,
                 EncoderKind::bow_single, EncoderKind::bow_flattened}) {
    EXPECT_EQ(parse_encoder_kind(to_string(k)), k);
  }
  EXPECT_EQ(to_string(EncoderKind::hierarchical), "h-lstm");
  EXPECT_THROW(parse_encoder_kind("x-lstm"), Error);
  EXPECT_TRUE(is_neural(EncoderKind::flattened));
  EXPECT_FALSE(is_neural(EncoderKind::bow_single));
}

TEST(ParameterSet, InitializationRanges) {
  auto c = toy_config(EncoderKind::hierarchical, 8);
  nn::RngStream rng(3);
  auto p = ParameterSet::initialize(c, rng);
  ASSERT_TRUE(p.sentence_lstm.has_value());
  for (const auto& t : p.tensors()) {
    const bool is_bias = t.name.size() >= 2 && t.name.substr(t.name.size() - 2) == ".b";
    for (double v : t.data) {
      if (t.name.find(".forget.b") != std::string::npos) {
        EXPECT_EQ(v, 1.0);
      } else if (is_bias) {
        EXPECT_EQ(v, 0.0) << t.name;
      } else {
        EXPECT_LE(std::abs(v), 0.08) << t.name;
      }
    }
  }
  EXPECT_FALSE(ParameterSet::zeros(toy_config(EncoderKind::single)).sentence_lstm.has_value());
}

TEST(ParameterSet, SameSeedSameWeights) {
  auto c = toy_config(EncoderKind::flattened);
  nn::RngStream a(5), b(5);
  EXPECT_EQ(ParameterSet::initialize(c, a), ParameterSet::initialize(c, b));
}

TEST(Encoders, SingleSentenceDegenerateEqualities) {
  auto c = toy_config(EncoderKind::hierarchical);
  auto p = random_params(c, 1);
  nn::RngStream rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Sentence> d{random_sentence(rng, 6)};
    auto s = encode_single(d, p);
    auto f = encode_flattened(d, p);
    EXPECT_EQ(s, f);
    auto step = nn::lstm_cell_forward(s, nn::LstmStep::zero_state(c.n_h), *p.sentence_lstm);
    auto h = encode_hierarchical(d, p);
    for (std::size_t k = 0; k < c.n_h; ++k) EXPECT_NEAR(h[k], step.h[k], 1e-12);
  }
}

TEST(Encoders, SingleIgnoresContext) {
  auto c = toy_config(EncoderKind::hierarchical);
  auto p = random_params(c, 4);
  std::vector<Sentence> a{{2, 3}, {4, 5, 6}}, b{{7, 8, 9, 10}, {4, 5, 6}};
  EXPECT_EQ(encode_single(a, p), encode_single(b, p));
  EXPECT_NE(encode_flattened(a, p), encode_flattened(b, p));
  EXPECT_NE(encode_hierarchical(a, p), encode_hierarchical(b, p));
}

TEST(Encoders, FlattenedIsSingleOnConcatenation) {
  auto c = toy_config(EncoderKind::flattened);
  auto p = random_params(c, 5);
  std::vector<Sentence> d{{2, 3}, {4}, {5, 6, 7}};
  std::vector<Sentence> joined{{2, 3, 4, 5, 6, 7}};
  EXPECT_EQ(encode_flattened(d, p), encode_single(joined, p));
}

TEST(Encoders, HierarchicalSharesWordLstmAcrossSentences) {
  auto c = toy_config(EncoderKind::hierarchical);
  auto p = random_params(c, 6);
  std::vector<Sentence> d{{2, 3, 4}, {5, 6}, {7}};
  std::vector<nn::Vector> sentence_vecs;
  for (const auto& s : d) {
    std::vector<Sentence> one{s};
    sentence_vecs.push_back(encode_single(one, p));
  }
  std::vector<std::span<const double>> xs(sentence_vecs.begin(), sentence_vecs.end());
  nn::Vector z(c.n_h, 0.0);
  auto trace = nn::lstm_sequence_forward(xs, *p.sentence_lstm, z, z);
  EXPECT_EQ(encode_hierarchical(d, p), trace.last().h);
}

TEST(Encoders, SingleMatchesDirectLstm) {
  auto c = toy_config(EncoderKind::single);
  auto p = random_params(c, 7);
  std::vector<Sentence> d{{2, 9, 4}};
  nn::Vector z(c.n_h, 0.0);
  auto xs = embed(d[0], p);
  EXPECT_EQ(encode_single(d, p), nn::lstm_sequence_forward(xs, p.word_lstm, z, z).last().h);
}

TEST(Encoders, EmptyInputRejected) {
  auto c = toy_config(EncoderKind::hierarchical);
  auto p = random_params(c, 1);
  std::vector<Sentence> none;
  EXPECT_THROW(encode_hierarchical(none, p), Error);
  std::vector<Sentence> empty_reply{{2}, {}};
  EXPECT_THROW(encode_single(empty_reply, p), Error);
}

TEST(Encoders, OutOfRangeTokenRejected) {
  auto c = toy_config(EncoderKind::single);
  auto p = random_params(c, 1);
  std::vector<Sentence> d{{2, 25}};
  EXPECT_THROW(encode_single(d, p), Error);
}

TEST(Classifier, ZeroHeadGivesUniform) {
  auto c = toy_config(EncoderKind::single);
  auto p = ParameterSet::zeros(c);
  nn::RngStream rng(1);
  auto probs = classify(nn::Vector(c.n_h, 0.3), p, 0.5, rng, nn::Mode::eval);
  for (double v : probs) EXPECT_DOUBLE_EQ(v, 0.2);
}

TEST(Classifier, EvalModeIsDeterministicAndDrawsNothing) {
  auto c = toy_config(EncoderKind::single);
  auto p = random_params(c, 2);
  nn::RngStream rng(1);
  nn::Vector d{0.1, -0.2, 0.3, 0.4};
  auto a = classify(d, p, 0.5, rng, nn::Mode::eval);
  auto b = classify(d, p, 0.5, rng, nn::Mode::eval);
  EXPECT_EQ(a, b);
  EXPECT_EQ(rng.counter(), 0u);
  EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 1.0, 1e-12);
}

TEST(Classifier, LogitsAreAffine) {
  auto c = toy_config(EncoderKind::single);
  auto p = random_params(c, 3);
  nn::Vector d{0.5, -0.5, 0.25, 1.0};
  nn::RngStream rng(1);
  auto probs = classify(d, p, 0.0, rng, nn::Mode::train);
  nn::Vector z = p.classifier_b;
  nn::multiply_add(p.classifier_w, d, z);
  auto want = nn::softmax(z);
  for (std::size_t k = 0; k < z.size(); ++k) EXPECT_NEAR(probs[k], want[k], 1e-15);
}

class EncoderGradient : public ::testing::TestWithParam<EncoderKind> {};

TEST_P(EncoderGradient, MatchesFiniteDifferences) {
  const auto kind = GetParam();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto c = toy_config(kind);
    auto p = random_params(c, seed);
    auto grads = ParameterSet::zeros(c);
    auto scratch = ParameterSet::zeros(c);
    nn::RngStream rng(seed + 100);
    LabeledDialogue ex;
    const std::size_t n = 2 + rng.below(2);
    for (std::size_t s = 0; s < n; ++s) ex.sentences.push_back(random_sentence(rng, 4));
    ex.label = static_cast<LabelId>(rng.below(c.n_e));
    nn::LossClosure loss = [&](bool with_gradients) {
      nn::RngStream unused(0);
      if (with_gradients) grads.set_zero();
      return example_loss_and_gradient(kind, ex, p, 0.5, unused, nn::Mode::eval, 1.0,
                                       with_gradients ? grads : scratch);
    };
    auto pv = p.tensors();
    auto gv = grads.tensors();
    auto r = nn::gradient_check(loss, pv, gv);
    EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_tensor << "[" << r.worst_index << "]";
  }
}

INSTANTIATE_TEST_SUITE_P(AllNeural, EncoderGradient,
                         ::testing::Values(EncoderKind::single, EncoderKind::flattened,
                                           EncoderKind::hierarchical));

TEST(ExampleLoss, WeightScalesGradientNotLoss) {
  auto c = toy_config(EncoderKind::hierarchical);
  auto p = random_params(c, 9);
  LabeledDialogue ex{{{2, 3}, {4, 5}}, 1};
  auto g1 = ParameterSet::zeros(c), g2 = ParameterSet::zeros(c);
  nn::RngStream r1(0), r2(0);
  double l1 = example_loss_and_gradient(c.encoder, ex, p, 0.0, r1, nn::Mode::eval, 1.0, g1);
  double l2 = example_loss_and_gradient(c.encoder, ex, p, 0.0, r2, nn::Mode::eval, 0.25, g2);
  EXPECT_EQ(l1, l2);
  auto t1 = g1.tensors();
  auto t2 = g2.tensors();
  for (std::size_t t = 0; t < t1.size(); ++t)
    for (std::size_t k = 0; k < t1[t].data.size(); ++k)
      EXPECT_NEAR(t2[t].data[k], 0.25 * t1[t].data[k], 1e-15);
}

TEST(Predict, MatchesEvalLoss) {
  auto c = toy_config(EncoderKind::flattened);
  auto p = random_params(c, 10);
  LabeledDialogue ex{{{2, 3}, {4, 5}}, 3};
  auto probs = predict(c.encoder, ex.sentences, p);
  auto g = ParameterSet::zeros(c);
  nn::RngStream rng(0);
  double loss = example_loss_and_gradient(c.encoder, ex, p, 0.5, rng, nn::Mode::eval, 1.0, g);
  EXPECT_NEAR(loss, -std::log(probs[3]), 1e-12);
}

// ---- bag of words ----

TEST(Bow, IdfIsOneWhenTermInEveryDocument) {
  std::vector<LabeledDialogue> docs{{{{2, 3}}, 0}, {{{2}}, 1}, {{{2, 4, 4}}, 0}};
  auto idf = fit_idf(docs, BowInput::flattened, 6);
  EXPECT_DOUBLE_EQ(idf[2], 1.0);
  EXPECT_EQ(idf[kPadId], 0.0);
  EXPECT_EQ(idf[kUnkId], 0.0);
}

TEST(Bow, HandComputedTfIdf) {
  // N = 3; df(2) = 3, df(3) = 1, df(4) = 2, df(5) = 0.
  std::vector<LabeledDialogue> docs{{{{2, 3}}, 0}, {{{2, 4}}, 1}, {{{2, 4, 4}}, 0}};
  TfIdfModel m;
  m.idf = fit_idf(docs, BowInput::flattened, 6);
  EXPECT_NEAR(m.idf[3], 1.6931471805599454, 1e-15);  // ln(4/2) + 1
  EXPECT_NEAR(m.idf[4], 1.2876820724517808, 1e-15);  // ln(4/3) + 1
  EXPECT_NEAR(m.idf[5], 1.6931471805599454 + std::log(2.0), 1e-15);  // ln(4/1) + 1
  std::vector<Sentence> d{{2, 4, 4, 1, 0, 3}};
  auto f = bow_featurize(d, BowInput::flattened, m);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].first, 2);
  EXPECT_DOUBLE_EQ(f[0].second, 1.0);
  EXPECT_EQ(f[1].first, 3);
  EXPECT_DOUBLE_EQ(f[1].second, m.idf[3]);
  EXPECT_EQ(f[2].first, 4);
  EXPECT_DOUBLE_EQ(f[2].second, 2 * m.idf[4]);
}

TEST(Bow, SingleInputSeesReplyOnly) {
  std::vector<LabeledDialogue> docs{{{{3}, {2}}, 0}};
  auto idf = fit_idf(docs, BowInput::single, 5);
  TfIdfModel m{idf, nn::Matrix(2, 5), nn::Vector(2, 0.0)};
  auto f = bow_featurize(docs[0].sentences, BowInput::single, m);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].first, 2);
}

TEST(Bow, SeparableToyIsLearned) {
  std::vector<LabeledDialogue> docs;
  for (int i = 0; i < 40; ++i) {
    LabelId y = i % 2;
    docs.push_back({{{static_cast<TokenId>(2 + y), static_cast<TokenId>(4 + i % 3)}}, y});
  }
  BowTrainOptions opt;
  opt.epochs = 50;
  opt.batch_size = 8;
  auto m = bow_train(docs, BowInput::flattened, 2, 7, opt);
  for (const auto& d : docs) {
    auto p = bow_predict(m, d.sentences, BowInput::flattened);
    EXPECT_GT(p[static_cast<std::size_t>(d.label)], 0.5);
  }
}

TEST(Bow, ConstantFeaturesConvergeToClassPrior) {
  std::vector<LabeledDialogue> docs;
  for (int i = 0; i < 40; ++i) docs.push_back({{{2}}, i % 4 == 0 ? 1 : 0});  // prior 0.75 / 0.25
  BowTrainOptions opt;
  opt.epochs = 3000;
  opt.learning_rate = 0.5;
  opt.batch_size = 40;
  auto m = bow_train(docs, BowInput::flattened, 2, 3, opt);
  auto p = bow_predict(m, docs[0].sentences, BowInput::flattened);
  EXPECT_NEAR(p[0], 0.75, 1e-4);
  EXPECT_NEAR(p[1], 0.25, 1e-4);
}

TEST(Bow, ZeroEpochsGivesUniform) {
  std::vector<LabeledDialogue> docs{{{{2}}, 0}, {{{3}}, 1}, {{{4}}, 2}};
  BowTrainOptions opt;
  opt.epochs = 0;
  auto m = bow_train(docs, BowInput::flattened, 3, 5, opt);
  for (double v : bow_predict(m, docs[0].sentences, BowInput::flattened)) EXPECT_DOUBLE_EQ(v, 1.0 / 3);
}

TEST(Bow, LossGradientMatchesFiniteDifferences) {
  const std::size_t V = 6, n_e = 3;
  nn::RngStream rng(12);
  TfIdfModel m{nn::Vector(V, 1.0), nn::Matrix(n_e, V), nn::Vector(n_e, 0.0)};
  for (double& v : m.weights.values()) v = rng.uniform(-1, 1);
  for (double& v : m.bias) v = rng.uniform(-1, 1);
  std::vector<SparseVector> feats{{{2, 1.5}, {4, 0.5}}, {{3, 2.0}}, {{2, 1.0}, {5, 3.0}}};
  std::vector<LabelId> labels{0, 2, 1};
  TfIdfModel grad = m;
  bow_loss(m, feats, labels, &grad);
  const double eps = 1e-5;
  double worst = 0.0;
  auto check = [&](double& x, double analytic) {
    const double saved = x;
    x = saved + eps;
    const double plus = bow_loss(m, feats, labels, nullptr);
    x = saved - eps;
    const double minus = bow_loss(m, feats, labels, nullptr);
    x = saved;
    const double numeric = (plus - minus) / (2 * eps);
    worst = std::max(worst, std::abs(analytic - numeric) / std::max(1e-8, std::abs(analytic) + std::abs(numeric)));
  };
  for (std::size_t k = 0; k < m.weights.size(); ++k) check(m.weights.values()[k], grad.weights.values()[k]);
  for (std::size_t k = 0; k < n_e; ++k) check(m.bias[k], grad.bias[k]);
  EXPECT_LT(worst, 1e-6);
}

TEST(Bow, FirstFullBatchStepDoesNotIncreaseLoss) {
  std::vector<LabeledDialogue> docs;
  for (int i = 0; i < 12; ++i) docs.push_back({{{static_cast<TokenId>(2 + i % 4)}}, i % 3});
  auto idf = fit_idf(docs, BowInput::flattened, 6);
  TfIdfModel zero{idf, nn::Matrix(3, 6), nn::Vector(3, 0.0)};
  std::vector<SparseVector> feats;
  std::vector<LabelId> labels;
  for (const auto& d : docs) {
    feats.push_back(bow_featurize(d.sentences, BowInput::flattened, zero));
    labels.push_back(d.label);
  }
  const double before = bow_loss(zero, feats, labels, nullptr);
  BowTrainOptions opt;
  opt.epochs = 1;
  opt.batch_size = docs.size();
  auto m = bow_train(docs, BowInput::flattened, 3, 6, opt);
  EXPECT_LE(bow_loss(m, feats, labels, nullptr), before);
}
