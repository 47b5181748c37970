#include "emojirec/nn/adadelta.hpp"

#include <cmath>

#include "emojirec/error.hpp"

namespace emojirec::nn {

void AdaDeltaState::validate() const {
  require(rho > 0.0 && rho < 1.0, ErrorKind::config, "adadelta: rho must lie in (0, 1)");
  require(epsilon > 0.0, ErrorKind::config, "adadelta: epsilon must be positive");
  require(acc_sq_grad.size() == acc_sq_update.size(), ErrorKind::shape,
          "adadelta: accumulator lists differ in length");
}

void adadelta_step(std::span<const TensorView> params, std::span<const ConstTensorView> grads,
                   AdaDeltaState& state) {
  require(params.size() == grads.size() && params.size() == state.acc_sq_grad.size(),
          ErrorKind::shape, "adadelta_step: parameter, gradient and state counts differ");
  const double rho = state.rho;
  const double eps = state.epsilon;
  for (std::size_t t = 0; t < params.size(); ++t) {
    auto x = params[t].data;
    auto g = grads[t].data;
    auto& eg = state.acc_sq_grad[t];
    auto& edx = state.acc_sq_update[t];
    require(x.size() == g.size() && x.size() == eg.size() && x.size() == edx.size(),
            ErrorKind::shape, "adadelta_step: shape mismatch on tensor " + params[t].name);
    for (std::size_t k = 0; k < x.size(); ++k) {
      eg[k] = rho * eg[k] + (1.0 - rho) * g[k] * g[k];
      const double dx = -(std::sqrt(edx[k] + eps) / std::sqrt(eg[k] + eps)) * g[k];
      edx[k] = rho * edx[k] + (1.0 - rho) * dx * dx;
      x[k] += dx;
    }
  }
}

double clip_global_norm(std::span<const TensorView> grads, double max_norm) {
  require(max_norm > 0.0, ErrorKind::config, "clip_global_norm: max_norm must be positive");
  double sq = 0.0;
  for (const auto& g : grads) {
    for (double v : g.data) sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (const auto& g : grads) {
      for (double& v : g.data) v *= scale;
    }
  }
  return norm;
}

}  // namespace emojirec::nn
