#include "emojirec/training/train.hpp"

#include <chrono>
#include <cmath>

#include <json.hpp>

#include "emojirec/corpus/batch.hpp"
#include "emojirec/error.hpp"
#include "emojirec/eval/evaluate.hpp"
#include "emojirec/nn/adadelta.hpp"

namespace emojirec::train {

namespace {

// Stream ids split off the run seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kDropoutStream = 2;

void check_split(std::span<const LabeledDialogue> split, const enc::ModelConfig& m, const char* name) {
  for (const auto& d : split) {
    require(d.label >= 0 && static_cast<std::size_t>(d.label) < m.n_e, ErrorKind::config,
            std::string(name) + " split has a label outside the model's label set");
    for (const auto& s : d.sentences) {
      for (TokenId id : s) {
        require(id >= 0 && static_cast<std::size_t>(id) < m.vocab_size, ErrorKind::config,
                std::string(name) + " split uses token ids beyond the model vocabulary; "
                                    "was it encoded with a different vocabulary?");
      }
    }
  }
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

TrainResult train_neural(const TrainConfig& config, std::span<const LabeledDialogue> train_split,
                         std::span<const LabeledDialogue> valid_split, const DataHashes& hashes) {
  const auto& mc = config.model;
  const nn::RngStream root(mc.seed);
  auto init_rng = root.derive(kInitStream);
  auto dropout_rng = root.derive(kDropoutStream);

  TrainedModel model{mc, enc::ParameterSet::initialize(mc, init_rng)};
  auto& params = std::get<enc::ParameterSet>(model.weights);
  auto grads = enc::ParameterSet::zeros(mc);
  auto param_views = params.tensors();
  auto grad_views = grads.tensors();
  std::vector<nn::ConstTensorView> grad_const;
  for (const auto& g : grad_views) grad_const.push_back({g.name, g.rows, g.cols, g.data});
  auto optimizer = nn::AdaDeltaState::for_tensors<nn::TensorView>(param_views, config.rho, config.epsilon);

  auto snapshot = [&](std::size_t epoch, double error) {
    return Checkpoint{config, model, hashes.vocab, hashes.labels, epoch, error,
                      dropout_rng.seed(), dropout_rng.counter()};
  };

  TrainResult result{snapshot(0, validation_error(model, valid_split)), {}};
  EarlyStopping stopper(config.patience);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Stopwatch clock;
    double loss_sum = 0.0;
    const auto batches = corpus::make_batches(train_split, config.batch_size, mc.seed, epoch);
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const auto& batch = batches[b];
      grads.set_zero();
      const double weight = 1.0 / static_cast<double>(batch.size);
      double batch_loss = 0.0;
      try {
        for (std::size_t k = 0; k < batch.size; ++k) {
          batch_loss += enc::example_loss_and_gradient(mc.encoder, batch.example(k), params, mc.gamma,
                                                       dropout_rng, nn::Mode::train, weight, grads);
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::numeric) throw;
        fail(ErrorKind::numeric, std::string(e.what()) + " (epoch " + std::to_string(epoch) +
                                     ", batch " + std::to_string(b) + ")");
      }
      if (!std::isfinite(batch_loss)) {
        fail(ErrorKind::numeric, "non-finite training loss in epoch " + std::to_string(epoch) +
                                     ", batch " + std::to_string(b));
      }
      for (const auto& g : grad_views) {
        require(nn::all_finite(g.data), ErrorKind::numeric,
                "non-finite gradient in " + g.name + " (epoch " + std::to_string(epoch) + ", batch " +
                    std::to_string(b) + ")");
      }
      if (config.clip_norm) nn::clip_global_norm(grad_views, *config.clip_norm);
      nn::adadelta_step(param_views, grad_const, optimizer);
      loss_sum += batch_loss;
    }
    const double error = validation_error(model, valid_split);
    result.log.epochs.push_back(EpochRecord{
        epoch, loss_sum / static_cast<double>(train_split.size()), error, clock.seconds()});
    if (stopper.observe(error)) result.best = snapshot(epoch, error);
    if (stopper.should_stop()) break;
  }
  return result;
}

TrainResult train_bow(const TrainConfig& config, std::span<const LabeledDialogue> train_split,
                      std::span<const LabeledDialogue> valid_split, const DataHashes& hashes) {
  const auto& mc = config.model;
  const auto input = mc.encoder == enc::EncoderKind::bow_single ? enc::BowInput::single
                                                               : enc::BowInput::flattened;
  auto snapshot = [&](enc::TfIdfModel weights, std::size_t epoch, double error) {
    return Checkpoint{config, TrainedModel{mc, std::move(weights)}, hashes.vocab, hashes.labels,
                      epoch, error, mc.seed, 0};
  };

  TrainedModel initial = TrainedModel::zeros(mc);
  std::get<enc::TfIdfModel>(initial.weights).idf = enc::fit_idf(train_split, input, mc.vocab_size);
  TrainResult result{snapshot(std::get<enc::TfIdfModel>(initial.weights), 0,
                              validation_error(initial, valid_split)),
                     {}};
  const std::size_t epochs = std::min(config.bow_epochs, config.max_epochs);
  if (epochs == 0) return result;

  EarlyStopping stopper(config.patience);
  Stopwatch clock;
  enc::BowTrainOptions options;
  options.epochs = epochs;
  options.learning_rate = config.bow_learning_rate;
  options.batch_size = config.batch_size;
  options.seed = mc.seed;
  options.on_epoch = [&](std::size_t epoch, double loss, const enc::TfIdfModel& weights) {
    const TrainedModel current{mc, weights};
    const double error = validation_error(current, valid_split);
    result.log.epochs.push_back(EpochRecord{epoch, loss, error, clock.seconds()});
    clock = Stopwatch{};
    if (stopper.observe(error)) result.best = snapshot(weights, epoch, error);
    return stopper.should_stop();
  };
  enc::bow_train(train_split, input, mc.n_e, mc.vocab_size, options);
  return result;
}

}  // namespace

std::string TrainLog::to_jsonl() const {
  std::string out;
  for (const auto& e : epochs) {
    nlohmann::ordered_json j;
    j["epoch"] = e.epoch;
    j["train_loss"] = e.train_loss;
    j["valid_error"] = e.valid_error;
    j["seconds"] = e.seconds;
    out += j.dump() + "\n";
  }
  return out;
}

EarlyStopping::EarlyStopping(std::size_t patience) : patience_(patience) {
  require(patience >= 1, ErrorKind::config, "patience must be at least 1");
}

bool EarlyStopping::observe(double error) {
  ++epochs_;
  if (error < best_error_) {
    best_error_ = error;
    best_epoch_ = epochs_;
    since_best_ = 0;
    return true;
  }
  ++since_best_;
  return false;
}

double validation_error(const TrainedModel& model, std::span<const LabeledDialogue> valid) {
  const auto preds = eval::predict_split(model, valid);
  return 1.0 - eval::precision_at_k(preds, 1);
}

TrainResult train(const TrainConfig& config, std::span<const LabeledDialogue> train_split,
                  std::span<const LabeledDialogue> valid_split, const DataHashes& hashes) {
  config.validate();
  require(!train_split.empty(), ErrorKind::data, "train: empty training split");
  require(!valid_split.empty(), ErrorKind::data, "train: empty validation split");
  check_split(train_split, config.model, "training");
  check_split(valid_split, config.model, "validation");
  if (enc::is_neural(config.model.encoder)) return train_neural(config, train_split, valid_split, hashes);
  return train_bow(config, train_split, valid_split, hashes);
}

}  // namespace emojirec::train
