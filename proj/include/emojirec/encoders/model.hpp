#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emojirec/dialogue.hpp"
#include "emojirec/nn/lstm.hpp"
#include "emojirec/nn/matrix.hpp"
#include "emojirec/nn/ops.hpp"
#include "emojirec/nn/rng.hpp"

namespace emojirec::enc {

using nn::Matrix;
using nn::Mode;
using nn::Vector;

enum class EncoderKind { single, flattened, hierarchical, bow_single, bow_flattened };

// Canonical names: "s-lstm", "f-lstm", "h-lstm", "s-bow", "f-bow".
std::string_view to_string(EncoderKind kind);
EncoderKind parse_encoder_kind(std::string_view name);
bool is_neural(EncoderKind kind);

struct ModelConfig {
  std::size_t n_x = 384;
  std::size_t n_h = 384;
  std::size_t n_e = 10;
  std::size_t vocab_size = 0;
  double gamma = 0.5;
  EncoderKind encoder = EncoderKind::hierarchical;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

inline constexpr double kInitRange = 0.08;
inline constexpr double kForgetBiasInit = 1.0;

// Every trainable tensor of a neural model. The same type doubles as the
// gradient buffer.
struct ParameterSet {
  Matrix embeddings;                         // vocab_size x n_x
  nn::LstmParams word_lstm;                  // n_x -> n_h
  std::optional<nn::LstmParams> sentence_lstm;  // n_h -> n_h, hierarchical only
  Matrix classifier_w;                       // n_e x n_h
  Vector classifier_b;                       // n_e

  static ParameterSet zeros(const ModelConfig& config);
  // Weights and embeddings uniform in [-0.08, 0.08], biases 0 except the
  // forget gates at 1.
  static ParameterSet initialize(const ModelConfig& config, nn::RngStream& rng);

  std::size_t n_x() const { return embeddings.cols(); }
  std::size_t n_h() const { return word_lstm.hidden_dim(); }
  std::size_t n_e() const { return classifier_b.size(); }

  std::vector<nn::TensorView> tensors();
  std::vector<nn::ConstTensorView> tensors() const;
  void set_zero();

  bool operator==(const ParameterSet&) const = default;
};

// Forward record of one encode, kept for backprop.
struct EncoderTape {
  EncoderKind kind = EncoderKind::single;
  std::vector<Sentence> word_sequences;  // token ids fed to the word LSTM, one per run
  std::vector<nn::LstmTrace> word_traces;
  std::optional<nn::LstmTrace> sentence_trace;
  Vector d;
};

// `dialogue` lists sentences in order; the last one is the reply.
EncoderTape encode(EncoderKind kind, std::span<const Sentence> dialogue, const ParameterSet& params);

// Adds d(loss)/d(params) into `grads` given d(loss)/d(d).
void encode_backward(const EncoderTape& tape, const ParameterSet& params,
                     std::span<const double> grad_d, ParameterSet& grads);

Vector encode_single(std::span<const Sentence> dialogue, const ParameterSet& params);
Vector encode_flattened(std::span<const Sentence> dialogue, const ParameterSet& params);
Vector encode_hierarchical(std::span<const Sentence> dialogue, const ParameterSet& params);

struct ClassifierTape {
  Vector dropout_mask;
  Vector dropped;
  Vector probs;
};

// Dropout on d (train mode only) followed by softmax(W_s d + b_s).
ClassifierTape classify_forward(std::span<const double> d, const ParameterSet& params, double gamma,
                                nn::RngStream& rng, Mode mode);
Vector classify(std::span<const double> d, const ParameterSet& params, double gamma,
                nn::RngStream& rng, Mode mode);

// Cross-entropy against `gold`; adds weight * gradients into `grads` and
// returns the unweighted loss.
double classify_backward(const ClassifierTape& tape, const ParameterSet& params, LabelId gold,
                         double weight, ParameterSet& grads, Vector& grad_d);

// Loss of one example with gradients scaled by `weight` added into `grads`.
double example_loss_and_gradient(EncoderKind kind, const LabeledDialogue& example,
                                 const ParameterSet& params, double gamma, nn::RngStream& rng,
                                 Mode mode, double weight, ParameterSet& grads);

// Eval-mode class distribution.
Vector predict(EncoderKind kind, std::span<const Sentence> dialogue, const ParameterSet& params);

}  // namespace emojirec::enc
