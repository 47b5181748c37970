#pragma once

#include <span>
#include <vector>

#include "emojirec/nn/matrix.hpp"

namespace emojirec::nn {

// Running averages E[g^2] and E[dx^2], one slot per parameter scalar.
struct AdaDeltaState {
  double rho = 0.95;
  double epsilon = 1e-6;
  std::vector<Vector> acc_sq_grad;
  std::vector<Vector> acc_sq_update;

  // Zeroed accumulators shaped like `params`.
  template <typename View>
  static AdaDeltaState for_tensors(std::span<const View> params, double rho = 0.95,
                                   double epsilon = 1e-6);

  void validate() const;
};

// Per scalar:
//   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
//   dx      <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
//   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
//   x       <- x + dx
void adadelta_step(std::span<const TensorView> params, std::span<const ConstTensorView> grads,
                   AdaDeltaState& state);

// Scales all gradients so their joint L2 norm is at most max_norm. Returns
// the norm before clipping.
double clip_global_norm(std::span<const TensorView> grads, double max_norm);

template <typename View>
AdaDeltaState AdaDeltaState::for_tensors(std::span<const View> params, double rho, double epsilon) {
  AdaDeltaState s;
  s.rho = rho;
  s.epsilon = epsilon;
  for (const auto& p : params) {
    s.acc_sq_grad.emplace_back(p.data.size(), 0.0);
    s.acc_sq_update.emplace_back(p.data.size(), 0.0);
  }
  s.validate();
  return s;
}

}  // namespace emojirec::nn
