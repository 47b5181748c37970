#include "emojirec/corpus/split.hpp"

#include <cmath>
#include <string>

#include "emojirec/error.hpp"

namespace emojirec::corpus {

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitFractions& fractions) {
  double total = 0.0;
  std::size_t positive = 0;
  for (double f : fractions) {
    require(f >= 0.0 && std::isfinite(f), ErrorKind::config, "split fractions must be nonnegative");
    total += f;
    positive += f > 0.0 ? 1 : 0;
  }
  require(std::abs(total - 1.0) < 1e-9, ErrorKind::config, "split fractions must sum to 1");
  require(n >= positive, ErrorKind::data,
          "cannot split " + std::to_string(n) + " dialogues into " + std::to_string(positive) +
              " nonempty parts");

  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double exact = fractions[k] * static_cast<double>(n);
    sizes[k] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[k] = exact - static_cast<double>(sizes[k]);
    assigned += sizes[k];
  }
  while (assigned < n) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (remainder[k] > remainder[best]) best = k;
    }
    ++sizes[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  // A positive fraction never ends up empty.
  for (std::size_t k = 0; k < 3; ++k) {
    if (fractions[k] > 0.0 && sizes[k] == 0) {
      std::size_t donor = 0;
      for (std::size_t j = 1; j < 3; ++j) {
        if (sizes[j] > sizes[donor]) donor = j;
      }
      --sizes[donor];
      ++sizes[k];
    }
  }
  return sizes;
}

}  // namespace emojirec::corpus
