#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>

#include <json.hpp>

#include "emojirec/dialogue.hpp"
#include "emojirec/encoders/bow.hpp"
#include "emojirec/encoders/model.hpp"

namespace emojirec::train {

struct TrainConfig {
  enc::ModelConfig model;
  std::size_t batch_size = 128;
  double rho = 0.95;
  double epsilon = 1e-6;
  std::size_t max_epochs = 50;
  std::size_t patience = 3;
  std::optional<double> clip_norm;
  // Bag-of-words baselines: epochs of gradient descent and its step size.
  std::size_t bow_epochs = 30;
  double bow_learning_rate = 0.1;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

nlohmann::json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

// Weights of either a neural encoder + softmax head or a tf-idf logistic
// baseline, together with the config that shapes them.
struct TrainedModel {
  enc::ModelConfig config;
  std::variant<enc::ParameterSet, enc::TfIdfModel> weights;

  // Eval-mode class distribution for one dialogue.
  nn::Vector predict(std::span<const Sentence> dialogue) const;

  std::vector<nn::TensorView> tensors();
  std::vector<nn::ConstTensorView> tensors() const;

  // All-zero weights of the right shape (uniform predictions).
  static TrainedModel zeros(const enc::ModelConfig& config);
};

}  // namespace emojirec::train
