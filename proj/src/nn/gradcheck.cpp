#include "emojirec/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "emojirec/error.hpp"

namespace emojirec::nn {

GradCheckResult gradient_check(const LossClosure& loss, std::span<const TensorView> params,
                               std::span<const TensorView> grads, double step) {
  require(params.size() == grads.size(), ErrorKind::shape,
          "gradient_check: parameter and gradient lists differ in length");
  const double base = loss(true);
  if (loss(false) != base) {
    fail(ErrorKind::determinism, "gradient_check: two forward passes disagree (is dropout on?)");
  }

  std::vector<Vector> analytic;
  analytic.reserve(grads.size());
  for (std::size_t t = 0; t < grads.size(); ++t) {
    require(grads[t].data.size() == params[t].data.size(), ErrorKind::shape,
            "gradient_check: gradient buffer shape differs for " + params[t].name);
    analytic.emplace_back(grads[t].data.begin(), grads[t].data.end());
  }

  GradCheckResult result;
  for (std::size_t t = 0; t < params.size(); ++t) {
    auto x = params[t].data;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double saved = x[k];
      x[k] = saved + step;
      const double plus = loss(false);
      x[k] = saved - step;
      const double minus = loss(false);
      x[k] = saved;
      const double numeric = (plus - minus) / (2.0 * step);
      const double a = analytic[t][k];
      const double rel = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
      if (rel > result.max_relative_error) {
        result = GradCheckResult{rel, params[t].name, k, a, numeric};
      }
    }
  }
  return result;
}

}  // namespace emojirec::nn
