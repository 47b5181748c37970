#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emojirec/dialogue.hpp"
#include "emojirec/nn/matrix.hpp"

namespace emojirec::eval {

struct Prediction {
  nn::Vector probs;
  LabelId gold = 0;
};

// 1 + #{classes with probability strictly above gold's}
//   + #{lower-index classes tied with gold}.
std::size_t rank_of_gold(const Prediction& p);

// Argmax with ties resolved to the lowest index.
std::size_t argmax(std::span<const double> probs);

double precision_at_k(std::span<const Prediction> preds, std::size_t k);
double mean_reciprocal_rank(std::span<const Prediction> preds);

struct EvalReport {
  std::size_t n = 0;
  double p_at_1 = 0.0;
  double p_at_3 = 0.0;
  double mrr = 0.0;
  std::vector<std::optional<double>> per_class_p1;  // nullopt when a class has no gold examples
  std::vector<std::vector<std::size_t>> confusion;  // [gold][predicted]
};

// P@3 uses k = min(3, n_e).
EvalReport build_report(std::span<const Prediction> preds, std::size_t n_e);

}  // namespace emojirec::eval
