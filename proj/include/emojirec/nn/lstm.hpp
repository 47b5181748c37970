#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "emojirec/nn/matrix.hpp"

namespace emojirec::nn {

// Affine maps feeding one gate: w projects the input, u the previous hidden
// state.
struct LstmGate {
  Matrix w;  // n_h x n_x
  Matrix u;  // n_h x n_h
  Vector b;  // n_h

  bool operator==(const LstmGate&) const = default;
};

// Forget-gate LSTM without peepholes:
//   i = sigm(W_i x + U_i h + b_i)     f, o likewise
//   c~ = tanh(W_c x + U_c h + b_c)
//   c' = f * c + i * c~,  h' = o * tanh(c')
struct LstmParams {
  LstmGate input;
  LstmGate forget;
  LstmGate output;
  LstmGate cand;

  static LstmParams zeros(std::size_t n_x, std::size_t n_h);

  std::size_t input_dim() const { return input.w.cols(); }
  std::size_t hidden_dim() const { return input.w.rows(); }

  void append_tensors(const std::string& prefix, std::vector<TensorView>& out);
  void append_tensors(const std::string& prefix, std::vector<ConstTensorView>& out) const;

  bool operator==(const LstmParams&) const = default;
};

// One time step: the new state plus the gate activations backprop needs.
struct LstmStep {
  Vector h;
  Vector c;
  Vector i;
  Vector f;
  Vector o;
  Vector c_tilde;

  static LstmStep zero_state(std::size_t n_h);
};

struct LstmTrace {
  LstmStep initial;
  std::vector<LstmStep> steps;

  const LstmStep& last() const { return steps.empty() ? initial : steps.back(); }
};

using InputSequence = std::span<const std::span<const double>>;

LstmStep lstm_cell_forward(std::span<const double> x, const LstmStep& prev, const LstmParams& params);

// Folds lstm_cell_forward over xs starting from (h0, c0).
LstmTrace lstm_sequence_forward(InputSequence xs, const LstmParams& params,
                                std::span<const double> h0, std::span<const double> c0);

struct LstmInputGradients {
  std::vector<Vector> xs;
  Vector h0;
  Vector c0;
};

// Backpropagation through time for a loss whose gradient with respect to the
// final hidden state is grad_last_h. Parameter gradients are added into
// `grads`; the caller is responsible for zeroing it.
LstmInputGradients lstm_sequence_backward(const LstmTrace& trace, InputSequence xs,
                                          const LstmParams& params,
                                          std::span<const double> grad_last_h,
                                          LstmParams& grads);

}  // namespace emojirec::nn
