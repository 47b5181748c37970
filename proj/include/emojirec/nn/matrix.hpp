#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace emojirec::nn {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A named, shaped window onto one trainable tensor. Vectors are 1 x n.
template <typename T>
struct BasicTensorView {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<T> data;
};
using TensorView = BasicTensorView<double>;
using ConstTensorView = BasicTensorView<const double>;

// y += m * x
void multiply_add(const Matrix& m, std::span<const double> x, std::span<double> y);
// y += m^T * x
void multiply_transposed_add(const Matrix& m, std::span<const double> x, std::span<double> y);
// m += a * b^T
void outer_add(Matrix& m, std::span<const double> a, std::span<const double> b);

void axpy(double alpha, std::span<const double> x, std::span<double> y);

bool all_finite(std::span<const double> v);

}  // namespace emojirec::nn
