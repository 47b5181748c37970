#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "emojirec/dialogue.hpp"
#include "emojirec/training/checkpoint.hpp"
#include "emojirec/training/config.hpp"

namespace emojirec::train {

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double valid_error = 0.0;
  double seconds = 0.0;
};

struct TrainLog {
  std::vector<EpochRecord> epochs;

  // One {"epoch", "train_loss", "valid_error", "seconds"} object per line.
  std::string to_jsonl() const;
};

// Patience-based stopping on a validation error that must strictly improve.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);

  // Records one epoch's error; returns true when it is a new best.
  bool observe(double error);
  bool should_stop() const { return since_best_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_error() const { return best_error_; }

 private:
  std::size_t patience_;
  std::size_t epochs_ = 0;
  std::size_t since_best_ = 0;
  std::size_t best_epoch_ = 0;
  double best_error_ = std::numeric_limits<double>::infinity();
};

struct TrainResult {
  Checkpoint best;
  TrainLog log;
};

struct DataHashes {
  std::string vocab;
  std::string labels;
};

// Validation error rate: 1 - P@1 with dropout off.
double validation_error(const TrainedModel& model, std::span<const LabeledDialogue> valid);

// Mini-batch AdaDelta (or gradient descent for the bag-of-words baselines)
// with dropout, per-epoch validation and early stopping. Returns the
// checkpoint of the best validation epoch; with max_epochs = 0 that is the
// initialized model.
TrainResult train(const TrainConfig& config, std::span<const LabeledDialogue> train_split,
                  std::span<const LabeledDialogue> valid_split, const DataHashes& hashes);

}  // namespace emojirec::train
