#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "emojirec/dialogue.hpp"
#include "emojirec/nn/matrix.hpp"

namespace emojirec::enc {

// Which sentences feed the bag of words: the reply only, or all of them.
enum class BowInput { single, flattened };

// (token id, weight) pairs sorted by id.
using SparseVector = std::vector<std::pair<TokenId, double>>;

struct TfIdfModel {
  nn::Vector idf;       // vocab_size
  nn::Matrix weights;   // n_e x vocab_size
  nn::Vector bias;      // n_e

  std::size_t vocab_size() const { return idf.size(); }
  std::size_t n_e() const { return bias.size(); }
  bool operator==(const TfIdfModel&) const = default;
};

// Smoothed idf = ln((1 + N) / (1 + df)) + 1 over the N training documents.
// Reserved ids (PAD, UNK) get idf 0 and are never counted.
nn::Vector fit_idf(std::span<const LabeledDialogue> corpus, BowInput input, std::size_t vocab_size);

// Raw term count times idf. Reserved and out-of-range ids are ignored.
SparseVector bow_featurize(std::span<const Sentence> dialogue, BowInput input, const TfIdfModel& model);

struct BowTrainOptions {
  std::size_t epochs = 30;
  double learning_rate = 0.1;
  std::size_t batch_size = 128;
  std::uint64_t seed = 1;
  // Called after each epoch with (1-based epoch, mean training loss, current
  // model); returning true stops training.
  std::function<bool(std::size_t, double, const TfIdfModel&)> on_epoch;
};

// Multinomial logistic regression on tf-idf features, trained by mini-batch
// gradient descent on mean cross-entropy from zero weights.
TfIdfModel bow_train(std::span<const LabeledDialogue> corpus, BowInput input, std::size_t n_e,
                     std::size_t vocab_size, const BowTrainOptions& options);

nn::Vector bow_predict(const TfIdfModel& model, std::span<const Sentence> dialogue, BowInput input);

// Mean cross-entropy of the logistic head over (features, labels). When
// `grad` is non-null its weights and bias receive the gradient (overwritten).
double bow_loss(const TfIdfModel& model, std::span<const SparseVector> features,
                std::span<const LabelId> labels, TfIdfModel* grad);

}  // namespace emojirec::enc
