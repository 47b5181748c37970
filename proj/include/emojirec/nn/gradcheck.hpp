#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "emojirec/nn/matrix.hpp"

namespace emojirec::nn {

// Computes the loss. When `with_gradients` is set it must also zero and then
// fill the gradient buffers handed to gradient_check.
using LossClosure = std::function<double(bool with_gradients)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

inline constexpr double kGradCheckStep = 1e-5;

// Central differences on every scalar of `params`, compared against the
// matching entry of `grads` with
//   |g_a - g_n| / max(1e-8, |g_a| + |g_n|).
// Throws a determinism error if two identical forward passes disagree.
GradCheckResult gradient_check(const LossClosure& loss, std::span<const TensorView> params,
                               std::span<const TensorView> grads, double step = kGradCheckStep);

}  // namespace emojirec::nn
