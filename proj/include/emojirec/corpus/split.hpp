#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "emojirec/nn/rng.hpp"

namespace emojirec::corpus {

using SplitFractions = std::array<double, 3>;  // train, valid, test

template <typename T>
struct Splits {
  std::vector<T> train;
  std::vector<T> valid;
  std::vector<T> test;
};

// Largest-remainder apportionment of n items; ties go to the earlier split.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitFractions& fractions);

// Seeded random partition. Each split keeps the input's relative order, so
// fractions (1, 0, 0) return the input unchanged.
template <typename T>
Splits<T> split_corpus(const std::vector<T>& items, const SplitFractions& fractions, std::uint64_t seed) {
  const auto sizes = split_sizes(items.size(), fractions);
  std::vector<std::size_t> perm(items.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  nn::RngStream rng(seed);
  rng.shuffle(std::span(perm));

  Splits<T> out;
  std::vector<T>* targets[3] = {&out.train, &out.valid, &out.test};
  std::size_t offset = 0;
  for (std::size_t part = 0; part < 3; ++part) {
    std::vector<std::size_t> members(perm.begin() + static_cast<std::ptrdiff_t>(offset),
                                     perm.begin() + static_cast<std::ptrdiff_t>(offset + sizes[part]));
    std::sort(members.begin(), members.end());
    targets[part]->reserve(members.size());
    for (std::size_t idx : members) targets[part]->push_back(items[idx]);
    offset += sizes[part];
  }
  return out;
}

}  // namespace emojirec::corpus
