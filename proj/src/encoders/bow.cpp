#include "emojirec/encoders/bow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "emojirec/error.hpp"
#include "emojirec/nn/ops.hpp"
#include "emojirec/nn/rng.hpp"

namespace emojirec::enc {

namespace {

std::span<const Sentence> selected(std::span<const Sentence> dialogue, BowInput input) {
  if (input == BowInput::single && !dialogue.empty()) return dialogue.last(1);
  return dialogue;
}

bool countable(TokenId id, std::size_t vocab_size) {
  return id >= kFirstWordId && static_cast<std::size_t>(id) < vocab_size;
}

nn::Vector logits(const TfIdfModel& model, const SparseVector& x) {
  nn::Vector z = model.bias;
  for (std::size_t c = 0; c < z.size(); ++c) {
    const auto row = model.weights.row(c);
    for (const auto& [id, v] : x) z[c] += row[static_cast<std::size_t>(id)] * v;
  }
  return z;
}

}  // namespace

nn::Vector fit_idf(std::span<const LabeledDialogue> corpus, BowInput input, std::size_t vocab_size) {
  require(!corpus.empty(), ErrorKind::data, "fit_idf: empty corpus");
  std::vector<std::size_t> df(vocab_size, 0);
  std::vector<char> seen(vocab_size, 0);
  for (const auto& doc : corpus) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& s : selected(doc.sentences, input)) {
      for (TokenId id : s) {
        if (countable(id, vocab_size) && !seen[static_cast<std::size_t>(id)]) {
          seen[static_cast<std::size_t>(id)] = 1;
          ++df[static_cast<std::size_t>(id)];
        }
      }
    }
  }
  const double n = static_cast<double>(corpus.size());
  nn::Vector idf(vocab_size, 0.0);
  for (std::size_t id = kFirstWordId; id < vocab_size; ++id) {
    idf[id] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[id]))) + 1.0;
  }
  return idf;
}

SparseVector bow_featurize(std::span<const Sentence> dialogue, BowInput input, const TfIdfModel& model) {
  std::map<TokenId, double> counts;
  for (const auto& s : selected(dialogue, input)) {
    for (TokenId id : s) {
      if (countable(id, model.vocab_size())) counts[id] += 1.0;
    }
  }
  SparseVector out;
  out.reserve(counts.size());
  for (const auto& [id, tf] : counts) out.emplace_back(id, tf * model.idf[static_cast<std::size_t>(id)]);
  return out;
}

double bow_loss(const TfIdfModel& model, std::span<const SparseVector> features,
                std::span<const LabelId> labels, TfIdfModel* grad) {
  require(features.size() == labels.size() && !features.empty(), ErrorKind::shape,
          "bow_loss: features and labels must be nonempty and aligned");
  if (grad != nullptr) {
    grad->weights = nn::Matrix(model.weights.rows(), model.weights.cols());
    grad->bias.assign(model.bias.size(), 0.0);
  }
  const double scale = 1.0 / static_cast<double>(features.size());
  double total = 0.0;
  for (std::size_t n = 0; n < features.size(); ++n) {
    const auto probs = nn::softmax(logits(model, features[n]));
    require(labels[n] >= 0, ErrorKind::label, "bow_loss: negative label");
    const auto ce = nn::cross_entropy(probs, static_cast<std::size_t>(labels[n]));
    total += ce.loss;
    if (grad == nullptr) continue;
    for (std::size_t c = 0; c < ce.grad_logits.size(); ++c) {
      const double g = ce.grad_logits[c] * scale;
      grad->bias[c] += g;
      auto row = grad->weights.row(c);
      for (const auto& [id, v] : features[n]) row[static_cast<std::size_t>(id)] += g * v;
    }
  }
  return total * scale;
}

TfIdfModel bow_train(std::span<const LabeledDialogue> corpus, BowInput input, std::size_t n_e,
                     std::size_t vocab_size, const BowTrainOptions& options) {
  require(!corpus.empty(), ErrorKind::data, "bow_train: empty corpus");
  require(n_e >= 2 && vocab_size > 0, ErrorKind::config, "bow_train: invalid model shape");
  require(options.batch_size >= 1, ErrorKind::config, "bow_train: batch size must be positive");

  TfIdfModel model;
  model.idf = fit_idf(corpus, input, vocab_size);
  model.weights = nn::Matrix(n_e, vocab_size);
  model.bias.assign(n_e, 0.0);

  std::vector<SparseVector> features;
  std::vector<LabelId> labels;
  features.reserve(corpus.size());
  for (const auto& d : corpus) {
    features.push_back(bow_featurize(d.sentences, input, model));
    labels.push_back(d.label);
  }

  std::vector<std::size_t> order(corpus.size());
  const nn::RngStream base(options.seed);
  TfIdfModel grad;
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rng = base.derive(epoch);
    rng.shuffle(std::span(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      std::vector<SparseVector> bx;
      std::vector<LabelId> by;
      for (std::size_t k = start; k < end; ++k) {
        bx.push_back(features[order[k]]);
        by.push_back(labels[order[k]]);
      }
      loss_sum += bow_loss(model, bx, by, &grad) * static_cast<double>(end - start);
      nn::axpy(-options.learning_rate, grad.weights.values(), model.weights.values());
      nn::axpy(-options.learning_rate, grad.bias, model.bias);
    }
    const double mean_loss = loss_sum / static_cast<double>(order.size());
    require(std::isfinite(mean_loss), ErrorKind::numeric,
            "bow_train: non-finite loss in epoch " + std::to_string(epoch));
    if (options.on_epoch && options.on_epoch(epoch, mean_loss, model)) break;
  }
  return model;
}

nn::Vector bow_predict(const TfIdfModel& model, std::span<const Sentence> dialogue, BowInput input) {
  return nn::softmax(logits(model, bow_featurize(dialogue, input, model)));
}

}  // namespace emojirec::enc
