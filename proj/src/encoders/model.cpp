#include "emojirec/encoders/model.hpp"

#include <string>

#include "emojirec/error.hpp"

namespace emojirec::enc {

namespace {

void fill_uniform(std::span<double> values, nn::RngStream& rng) {
  for (double& v : values) v = rng.uniform(-kInitRange, kInitRange);
}

void init_lstm(nn::LstmParams& p, nn::RngStream& rng) {
  for (auto* gate : {&p.input, &p.forget, &p.output, &p.cand}) {
    fill_uniform(gate->w.values(), rng);
    fill_uniform(gate->u.values(), rng);
  }
  std::fill(p.forget.b.begin(), p.forget.b.end(), kForgetBiasInit);
}

std::vector<std::span<const double>> lookup(const Sentence& tokens, const Matrix& embeddings) {
  std::vector<std::span<const double>> xs;
  xs.reserve(tokens.size());
  for (TokenId id : tokens) {
    require(id >= 0 && static_cast<std::size_t>(id) < embeddings.rows(), ErrorKind::shape,
            "token id " + std::to_string(id) + " outside vocabulary of size " +
                std::to_string(embeddings.rows()));
    xs.push_back(embeddings.row(static_cast<std::size_t>(id)));
  }
  return xs;
}

nn::LstmTrace run_words(const Sentence& tokens, const ParameterSet& params) {
  const auto xs = lookup(tokens, params.embeddings);
  const Vector zero(params.n_h(), 0.0);
  return nn::lstm_sequence_forward(xs, params.word_lstm, zero, zero);
}

void backprop_words(const Sentence& tokens, const nn::LstmTrace& trace, const ParameterSet& params,
                    std::span<const double> grad_h, ParameterSet& grads) {
  const auto xs = lookup(tokens, params.embeddings);
  const auto g = nn::lstm_sequence_backward(trace, xs, params.word_lstm, grad_h, grads.word_lstm);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    nn::axpy(1.0, g.xs[t], grads.embeddings.row(static_cast<std::size_t>(tokens[t])));
  }
}

}  // namespace

std::string_view to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::single: return "s-lstm";
    case EncoderKind::flattened: return "f-lstm";
    case EncoderKind::hierarchical: return "h-lstm";
    case EncoderKind::bow_single: return "s-bow";
    case EncoderKind::bow_flattened: return "f-bow";
  }
  return "?";
}

EncoderKind parse_encoder_kind(std::string_view name) {
  for (auto k : {EncoderKind::single, EncoderKind::flattened, EncoderKind::hierarchical,
                 EncoderKind::bow_single, EncoderKind::bow_flattened}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorKind::config, "unknown encoder '" + std::string(name) +
                              "' (expected s-lstm, f-lstm, h-lstm, s-bow or f-bow)");
}

bool is_neural(EncoderKind kind) {
  return kind == EncoderKind::single || kind == EncoderKind::flattened ||
         kind == EncoderKind::hierarchical;
}

void ModelConfig::validate() const {
  require(n_x > 0, ErrorKind::config, "n_x must be positive");
  require(n_h > 0, ErrorKind::config, "n_h must be positive");
  require(n_e >= 2, ErrorKind::config, "n_e must be at least 2");
  require(vocab_size > 0, ErrorKind::config, "vocab_size must be positive");
  require(gamma >= 0.0 && gamma < 1.0, ErrorKind::config, "gamma must lie in [0, 1)");
}

ParameterSet ParameterSet::zeros(const ModelConfig& config) {
  config.validate();
  ParameterSet p;
  p.embeddings = Matrix(config.vocab_size, config.n_x);
  p.word_lstm = nn::LstmParams::zeros(config.n_x, config.n_h);
  if (config.encoder == EncoderKind::hierarchical) {
    p.sentence_lstm = nn::LstmParams::zeros(config.n_h, config.n_h);
  }
  p.classifier_w = Matrix(config.n_e, config.n_h);
  p.classifier_b.assign(config.n_e, 0.0);
  return p;
}

ParameterSet ParameterSet::initialize(const ModelConfig& config, nn::RngStream& rng) {
  ParameterSet p = zeros(config);
  fill_uniform(p.embeddings.values(), rng);
  init_lstm(p.word_lstm, rng);
  if (p.sentence_lstm) init_lstm(*p.sentence_lstm, rng);
  fill_uniform(p.classifier_w.values(), rng);
  return p;
}

std::vector<nn::TensorView> ParameterSet::tensors() {
  std::vector<nn::TensorView> out;
  out.push_back({"embeddings", embeddings.rows(), embeddings.cols(), embeddings.values()});
  word_lstm.append_tensors("word_lstm", out);
  if (sentence_lstm) sentence_lstm->append_tensors("sentence_lstm", out);
  out.push_back({"classifier.w", classifier_w.rows(), classifier_w.cols(), classifier_w.values()});
  out.push_back({"classifier.b", 1, classifier_b.size(), std::span(classifier_b)});
  return out;
}

std::vector<nn::ConstTensorView> ParameterSet::tensors() const {
  std::vector<nn::ConstTensorView> out;
  out.push_back({"embeddings", embeddings.rows(), embeddings.cols(), embeddings.values()});
  word_lstm.append_tensors("word_lstm", out);
  if (sentence_lstm) sentence_lstm->append_tensors("sentence_lstm", out);
  out.push_back({"classifier.w", classifier_w.rows(), classifier_w.cols(), classifier_w.values()});
  out.push_back({"classifier.b", 1, classifier_b.size(), std::span(classifier_b)});
  return out;
}

void ParameterSet::set_zero() {
  for (auto& t : tensors()) std::fill(t.data.begin(), t.data.end(), 0.0);
}

EncoderTape encode(EncoderKind kind, std::span<const Sentence> dialogue, const ParameterSet& params) {
  require(!dialogue.empty(), ErrorKind::empty_input, "encode: dialogue has no sentences");
  EncoderTape tape;
  tape.kind = kind;
  switch (kind) {
    case EncoderKind::single: {
      require(!dialogue.back().empty(), ErrorKind::empty_input, "encode_single: empty reply");
      tape.word_sequences.push_back(dialogue.back());
      break;
    }
    case EncoderKind::flattened: {
      Sentence flat;
      for (const auto& s : dialogue) flat.insert(flat.end(), s.begin(), s.end());
      require(!flat.empty(), ErrorKind::empty_input, "encode_flattened: every sentence is empty");
      tape.word_sequences.push_back(std::move(flat));
      break;
    }
    case EncoderKind::hierarchical: {
      require(params.sentence_lstm.has_value(), ErrorKind::config,
              "encode_hierarchical: parameter set has no sentence-level LSTM");
      for (const auto& s : dialogue) {
        require(!s.empty(), ErrorKind::empty_input, "encode_hierarchical: empty sentence");
        tape.word_sequences.push_back(s);
      }
      break;
    }
    default:
      fail(ErrorKind::config, "encode: " + std::string(to_string(kind)) + " is not a neural encoder");
  }

  for (const auto& seq : tape.word_sequences) tape.word_traces.push_back(run_words(seq, params));

  if (kind == EncoderKind::hierarchical) {
    std::vector<std::span<const double>> reps;
    reps.reserve(tape.word_traces.size());
    for (const auto& tr : tape.word_traces) reps.push_back(tr.last().h);
    const Vector zero(params.n_h(), 0.0);
    tape.sentence_trace = nn::lstm_sequence_forward(reps, *params.sentence_lstm, zero, zero);
    tape.d = tape.sentence_trace->last().h;
  } else {
    tape.d = tape.word_traces.front().last().h;
  }
  return tape;
}

void encode_backward(const EncoderTape& tape, const ParameterSet& params,
                     std::span<const double> grad_d, ParameterSet& grads) {
  require(grad_d.size() == params.n_h(), ErrorKind::shape, "encode_backward: gradient size mismatch");
  if (tape.kind != EncoderKind::hierarchical) {
    backprop_words(tape.word_sequences.front(), tape.word_traces.front(), params, grad_d, grads);
    return;
  }
  require(grads.sentence_lstm.has_value(), ErrorKind::config,
          "encode_backward: gradient buffer has no sentence-level LSTM");
  std::vector<std::span<const double>> reps;
  for (const auto& tr : tape.word_traces) reps.push_back(tr.last().h);
  const auto g = nn::lstm_sequence_backward(*tape.sentence_trace, reps, *params.sentence_lstm,
                                            grad_d, *grads.sentence_lstm);
  for (std::size_t s = 0; s < tape.word_sequences.size(); ++s) {
    backprop_words(tape.word_sequences[s], tape.word_traces[s], params, g.xs[s], grads);
  }
}

Vector encode_single(std::span<const Sentence> dialogue, const ParameterSet& params) {
  return encode(EncoderKind::single, dialogue, params).d;
}

Vector encode_flattened(std::span<const Sentence> dialogue, const ParameterSet& params) {
  return encode(EncoderKind::flattened, dialogue, params).d;
}

Vector encode_hierarchical(std::span<const Sentence> dialogue, const ParameterSet& params) {
  return encode(EncoderKind::hierarchical, dialogue, params).d;
}

ClassifierTape classify_forward(std::span<const double> d, const ParameterSet& params, double gamma,
                                nn::RngStream& rng, Mode mode) {
  require(d.size() == params.classifier_w.cols(), ErrorKind::shape,
          "classify: representation has length " + std::to_string(d.size()) + ", expected " +
              std::to_string(params.classifier_w.cols()));
  auto dropped = nn::dropout_forward(d, gamma, rng, mode);
  Vector logits = params.classifier_b;
  nn::multiply_add(params.classifier_w, dropped.out, logits);
  return ClassifierTape{std::move(dropped.mask), std::move(dropped.out), nn::softmax(logits)};
}

Vector classify(std::span<const double> d, const ParameterSet& params, double gamma,
                nn::RngStream& rng, Mode mode) {
  return classify_forward(d, params, gamma, rng, mode).probs;
}

double classify_backward(const ClassifierTape& tape, const ParameterSet& params, LabelId gold,
                         double weight, ParameterSet& grads, Vector& grad_d) {
  require(gold >= 0, ErrorKind::label, "classify_backward: negative label");
  auto ce = nn::cross_entropy(tape.probs, static_cast<std::size_t>(gold));
  for (double& g : ce.grad_logits) g *= weight;
  nn::outer_add(grads.classifier_w, ce.grad_logits, tape.dropped);
  nn::axpy(1.0, ce.grad_logits, grads.classifier_b);
  grad_d.assign(tape.dropped.size(), 0.0);
  nn::multiply_transposed_add(params.classifier_w, ce.grad_logits, grad_d);
  for (std::size_t k = 0; k < grad_d.size(); ++k) grad_d[k] *= tape.dropout_mask[k];
  return ce.loss;
}

double example_loss_and_gradient(EncoderKind kind, const LabeledDialogue& example,
                                 const ParameterSet& params, double gamma, nn::RngStream& rng,
                                 Mode mode, double weight, ParameterSet& grads) {
  const auto tape = encode(kind, example.sentences, params);
  const auto head = classify_forward(tape.d, params, gamma, rng, mode);
  Vector grad_d;
  const double loss = classify_backward(head, params, example.label, weight, grads, grad_d);
  encode_backward(tape, params, grad_d, grads);
  return loss;
}

Vector predict(EncoderKind kind, std::span<const Sentence> dialogue, const ParameterSet& params) {
  const auto d = encode(kind, dialogue, params).d;
  nn::RngStream unused(0);
  return classify(d, params, 0.0, unused, Mode::eval);
}

}  // namespace emojirec::enc
