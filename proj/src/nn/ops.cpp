#include "emojirec/nn/ops.hpp"

#include <algorithm>
#include <cmath>

#include "emojirec/error.hpp"

namespace emojirec::nn {

Vector softmax(std::span<const double> logits) {
  require(!logits.empty(), ErrorKind::empty_input, "softmax: empty logits");
  require(all_finite(logits), ErrorKind::numeric, "softmax: non-finite logits");
  const double max = *std::max_element(logits.begin(), logits.end());
  Vector out(logits.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - max);
    sum += out[k];
  }
  for (double& p : out) p /= sum;
  return out;
}

CrossEntropy cross_entropy(std::span<const double> probs, std::size_t gold) {
  require(gold < probs.size(), ErrorKind::label,
          "cross_entropy: gold label " + std::to_string(gold) + " out of range for " +
              std::to_string(probs.size()) + " classes");
  CrossEntropy ce;
  ce.loss = -std::log(std::max(probs[gold], kLogFloor));
  ce.grad_logits.assign(probs.begin(), probs.end());
  ce.grad_logits[gold] -= 1.0;
  return ce;
}

DropoutResult dropout_forward(std::span<const double> v, double gamma, RngStream& rng, Mode mode) {
  require(gamma >= 0.0 && gamma < 1.0, ErrorKind::config,
          "dropout: ratio must lie in [0, 1), got " + std::to_string(gamma));
  DropoutResult r;
  r.out.assign(v.begin(), v.end());
  r.mask.assign(v.size(), 1.0);
  if (mode == Mode::eval || gamma == 0.0) return r;
  const double keep_scale = 1.0 / (1.0 - gamma);
  for (std::size_t k = 0; k < v.size(); ++k) {
    r.mask[k] = rng.bernoulli(gamma) ? 0.0 : keep_scale;
    r.out[k] = v[k] * r.mask[k];
  }
  return r;
}

}  // namespace emojirec::nn
