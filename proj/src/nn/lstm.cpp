#include "emojirec/nn/lstm.hpp"

#include <algorithm>
#include <cmath>

#include "emojirec/error.hpp"

namespace emojirec::nn {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LstmGate zero_gate(std::size_t n_x, std::size_t n_h) {
  return LstmGate{Matrix(n_h, n_x), Matrix(n_h, n_h), Vector(n_h, 0.0)};
}

template <typename View, typename Gate>
void append_gate(const std::string& name, Gate& gate, std::vector<View>& out) {
  out.push_back({name + ".w", gate.w.rows(), gate.w.cols(), gate.w.values()});
  out.push_back({name + ".u", gate.u.rows(), gate.u.cols(), gate.u.values()});
  out.push_back({name + ".b", 1, gate.b.size(), std::span(gate.b)});
}

template <typename View, typename Params>
void append_all(const std::string& prefix, Params& p, std::vector<View>& out) {
  append_gate(prefix + ".input", p.input, out);
  append_gate(prefix + ".forget", p.forget, out);
  append_gate(prefix + ".output", p.output, out);
  append_gate(prefix + ".cand", p.cand, out);
}

// Pre-activation W x + U h + b for one gate.
Vector gate_preactivation(const LstmGate& g, std::span<const double> x, std::span<const double> h) {
  Vector z = g.b;
  multiply_add(g.w, x, z);
  multiply_add(g.u, h, z);
  return z;
}

void accumulate_gate(LstmGate& grad, std::span<const double> delta, std::span<const double> x,
                     std::span<const double> h_prev) {
  outer_add(grad.w, delta, x);
  outer_add(grad.u, delta, h_prev);
  axpy(1.0, delta, grad.b);
}

}  // namespace

LstmParams LstmParams::zeros(std::size_t n_x, std::size_t n_h) {
  require(n_x > 0 && n_h > 0, ErrorKind::shape, "LstmParams: dimensions must be positive");
  return LstmParams{zero_gate(n_x, n_h), zero_gate(n_x, n_h), zero_gate(n_x, n_h),
                    zero_gate(n_x, n_h)};
}

void LstmParams::append_tensors(const std::string& prefix, std::vector<TensorView>& out) {
  append_all(prefix, *this, out);
}

void LstmParams::append_tensors(const std::string& prefix, std::vector<ConstTensorView>& out) const {
  append_all(prefix, *this, out);
}

LstmStep LstmStep::zero_state(std::size_t n_h) {
  return LstmStep{Vector(n_h, 0.0), Vector(n_h, 0.0), {}, {}, {}, {}};
}

LstmStep lstm_cell_forward(std::span<const double> x, const LstmStep& prev, const LstmParams& params) {
  const std::size_t n_h = params.hidden_dim();
  require(x.size() == params.input_dim(), ErrorKind::shape,
          "lstm_cell_forward: input has length " + std::to_string(x.size()) + ", expected " +
              std::to_string(params.input_dim()));
  require(prev.h.size() == n_h && prev.c.size() == n_h, ErrorKind::shape,
          "lstm_cell_forward: previous state does not match hidden size");
  require(all_finite(x), ErrorKind::numeric, "lstm_cell_forward: non-finite input");

  LstmStep step;
  step.i = gate_preactivation(params.input, x, prev.h);
  step.f = gate_preactivation(params.forget, x, prev.h);
  step.o = gate_preactivation(params.output, x, prev.h);
  step.c_tilde = gate_preactivation(params.cand, x, prev.h);
  step.c.resize(n_h);
  step.h.resize(n_h);
  for (std::size_t k = 0; k < n_h; ++k) {
    step.i[k] = sigmoid(step.i[k]);
    step.f[k] = sigmoid(step.f[k]);
    step.o[k] = sigmoid(step.o[k]);
    step.c_tilde[k] = std::tanh(step.c_tilde[k]);
    step.c[k] = step.f[k] * prev.c[k] + step.i[k] * step.c_tilde[k];
    step.h[k] = step.o[k] * std::tanh(step.c[k]);
  }
  return step;
}

LstmTrace lstm_sequence_forward(InputSequence xs, const LstmParams& params,
                                std::span<const double> h0, std::span<const double> c0) {
  require(!xs.empty(), ErrorKind::empty_input, "lstm_sequence_forward: empty sequence");
  const std::size_t n_h = params.hidden_dim();
  require(h0.size() == n_h && c0.size() == n_h, ErrorKind::shape,
          "lstm_sequence_forward: initial state does not match hidden size");
  LstmTrace trace;
  trace.initial = LstmStep{Vector(h0.begin(), h0.end()), Vector(c0.begin(), c0.end()), {}, {}, {}, {}};
  trace.steps.reserve(xs.size());
  for (const auto& x : xs) {
    trace.steps.push_back(lstm_cell_forward(x, trace.last(), params));
  }
  return trace;
}

LstmInputGradients lstm_sequence_backward(const LstmTrace& trace, InputSequence xs,
                                          const LstmParams& params,
                                          std::span<const double> grad_last_h,
                                          LstmParams& grads) {
  const std::size_t n_h = params.hidden_dim();
  const std::size_t n_x = params.input_dim();
  require(trace.steps.size() == xs.size(), ErrorKind::shape,
          "lstm_sequence_backward: trace has " + std::to_string(trace.steps.size()) +
              " steps but " + std::to_string(xs.size()) + " inputs were given");
  require(grad_last_h.size() == n_h, ErrorKind::shape,
          "lstm_sequence_backward: upstream gradient does not match hidden size");
  require(grads.hidden_dim() == n_h && grads.input_dim() == n_x, ErrorKind::shape,
          "lstm_sequence_backward: gradient buffers do not match parameters");

  LstmInputGradients out;
  out.xs.assign(xs.size(), Vector(n_x, 0.0));
  Vector dh(grad_last_h.begin(), grad_last_h.end());
  Vector dc(n_h, 0.0);
  Vector da_i(n_h), da_f(n_h), da_o(n_h), da_c(n_h);

  for (std::size_t t = xs.size(); t-- > 0;) {
    const LstmStep& s = trace.steps[t];
    const LstmStep& prev = t == 0 ? trace.initial : trace.steps[t - 1];
    for (std::size_t k = 0; k < n_h; ++k) {
      const double tanh_c = std::tanh(s.c[k]);
      const double d_o = dh[k] * tanh_c;
      const double d_c = dc[k] + dh[k] * s.o[k] * (1.0 - tanh_c * tanh_c);
      da_i[k] = d_c * s.c_tilde[k] * s.i[k] * (1.0 - s.i[k]);
      da_f[k] = d_c * prev.c[k] * s.f[k] * (1.0 - s.f[k]);
      da_o[k] = d_o * s.o[k] * (1.0 - s.o[k]);
      da_c[k] = d_c * s.i[k] * (1.0 - s.c_tilde[k] * s.c_tilde[k]);
      dc[k] = d_c * s.f[k];
    }
    accumulate_gate(grads.input, da_i, xs[t], prev.h);
    accumulate_gate(grads.forget, da_f, xs[t], prev.h);
    accumulate_gate(grads.output, da_o, xs[t], prev.h);
    accumulate_gate(grads.cand, da_c, xs[t], prev.h);

    auto& dx = out.xs[t];
    multiply_transposed_add(params.input.w, da_i, dx);
    multiply_transposed_add(params.forget.w, da_f, dx);
    multiply_transposed_add(params.output.w, da_o, dx);
    multiply_transposed_add(params.cand.w, da_c, dx);

    std::fill(dh.begin(), dh.end(), 0.0);
    multiply_transposed_add(params.input.u, da_i, dh);
    multiply_transposed_add(params.forget.u, da_f, dh);
    multiply_transposed_add(params.output.u, da_o, dh);
    multiply_transposed_add(params.cand.u, da_c, dh);
  }
  out.h0 = std::move(dh);
  out.c0 = std::move(dc);
  return out;
}

}  // namespace emojirec::nn
