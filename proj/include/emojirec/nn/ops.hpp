#pragma once

#include <cstddef>
#include <span>

#include "emojirec/nn/matrix.hpp"
#include "emojirec/nn/rng.hpp"

namespace emojirec::nn {

enum class Mode { train, eval };

inline constexpr double kLogFloor = 1e-12;

// Numerically stable softmax (max subtraction).
Vector softmax(std::span<const double> logits);

struct CrossEntropy {
  double loss = 0.0;
  // d loss / d logits for the fused softmax + cross-entropy: probs - one_hot(gold).
  Vector grad_logits;
};

// -log probs[gold], floored at kLogFloor.
CrossEntropy cross_entropy(std::span<const double> probs, std::size_t gold);

struct DropoutResult {
  Vector out;
  // Per-entry multiplier applied to the input: 0 or 1 / (1 - gamma).
  Vector mask;
};

// Inverted dropout; the identity in eval mode.
DropoutResult dropout_forward(std::span<const double> v, double gamma, RngStream& rng, Mode mode);

}  // namespace emojirec::nn
