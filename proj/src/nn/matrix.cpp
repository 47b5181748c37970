#include "emojirec/nn/matrix.hpp"

#include <cmath>

#include "emojirec/error.hpp"

namespace emojirec::nn {

namespace {

std::string shape_message(const char* op, std::size_t want, std::size_t got) {
  return std::string(op) + ": expected length " + std::to_string(want) + ", got " +
         std::to_string(got);
}

}  // namespace

void multiply_add(const Matrix& m, std::span<const double> x, std::span<double> y) {
  require(x.size() == m.cols(), ErrorKind::shape, shape_message("multiply_add(x)", m.cols(), x.size()));
  require(y.size() == m.rows(), ErrorKind::shape, shape_message("multiply_add(y)", m.rows(), y.size()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
    y[r] += acc;
  }
}

void multiply_transposed_add(const Matrix& m, std::span<const double> x, std::span<double> y) {
  require(x.size() == m.rows(), ErrorKind::shape,
          shape_message("multiply_transposed_add(x)", m.rows(), x.size()));
  require(y.size() == m.cols(), ErrorKind::shape,
          shape_message("multiply_transposed_add(y)", m.cols(), y.size()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) y[c] += row[c] * xr;
  }
}

void outer_add(Matrix& m, std::span<const double> a, std::span<const double> b) {
  require(a.size() == m.rows(), ErrorKind::shape, shape_message("outer_add(a)", m.rows(), a.size()));
  require(b.size() == m.cols(), ErrorKind::shape, shape_message("outer_add(b)", m.cols(), b.size()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double ar = a[r];
    if (ar == 0.0) continue;
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += ar * b[c];
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require(x.size() == y.size(), ErrorKind::shape, shape_message("axpy", y.size(), x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace emojirec::nn
