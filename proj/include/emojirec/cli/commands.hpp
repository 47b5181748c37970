#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "emojirec/cli/run_config.hpp"
#include "emojirec/corpus/labels.hpp"
#include "emojirec/corpus/synthetic.hpp"
#include "emojirec/corpus/vocabulary.hpp"
#include "emojirec/eval/metrics.hpp"
#include "emojirec/training/train.hpp"

namespace emojirec::cli {

namespace fs = std::filesystem;

// Files written into a preprocessed data directory.
inline constexpr const char* kTrainFile = "train.jsonl";
inline constexpr const char* kValidFile = "valid.jsonl";
inline constexpr const char* kTestFile = "test.jsonl";
inline constexpr const char* kVocabFile = "vocab.tsv";
inline constexpr const char* kLabelsFile = "labels.tsv";
inline constexpr const char* kInventoryFile = "inventory.tsv";
inline constexpr const char* kStatsFile = "stats.json";

struct PreprocessStats {
  std::size_t input = 0;
  std::map<corpus::RejectReason, std::size_t> rejected;
  std::array<std::size_t, 3> accepted{};
  std::array<std::vector<std::size_t>, 3> per_class;  // [split][label]
  std::size_t vocab_size = 0;

  std::string to_json(const corpus::LabelSet& labels) const;
};

// clean -> extract_label -> truncate -> split -> vocabulary (train only) ->
// filter -> optional balancing. Writes splits, vocabulary, labels, inventory
// and stats into out_dir.
PreprocessStats cmd_preprocess(const fs::path& raw_path, const fs::path& inventory_path,
                               const fs::path& out_dir, const RunConfig& config);

// Loaded preprocessed data.
struct Dataset {
  corpus::Vocabulary vocab;
  corpus::LabelSet labels;
  std::vector<LabeledDialogue> train;
  std::vector<LabeledDialogue> valid;
  std::vector<LabeledDialogue> test;

  train::DataHashes hashes() const;
};

Dataset load_dataset(const fs::path& data_dir);
std::vector<LabeledDialogue> load_split(const fs::path& path, const corpus::Vocabulary& vocab,
                                        const corpus::LabelSet& labels);

struct TrainSummary {
  train::TrainResult result;
  double train_p_at_1 = 0.0;
};

// Trains on <data_dir>/train.jsonl with validation on valid.jsonl and writes
// the checkpoint and the JSON-lines log.
TrainSummary cmd_train(const RunConfig& config, const fs::path& checkpoint_path, const fs::path& log_path,
                       std::ostream& out);

// Evaluates a checkpoint on a split file; writes the report JSON to
// report_path (when given) and stdout, and the per-class table to table_path.
eval::EvalReport cmd_evaluate(const fs::path& checkpoint_path, const fs::path& split_path,
                              const fs::path& data_dir, const std::optional<fs::path>& report_path,
                              const std::optional<fs::path>& table_path, std::ostream& out);

// Reads dialogues (one JSON object per line, no label) and prints every
// emoji ranked by probability, one "rank<TAB>emoji<TAB>probability" line
// each; blocks for successive dialogues are separated by a blank line.
void cmd_predict(const fs::path& checkpoint_path, const fs::path& data_dir, std::istream& in,
                 std::ostream& out);

struct SweepRow {
  std::string encoder;
  std::size_t dim = 0;
  eval::EvalReport report;
};

// For each dim (in order) and each encoder (in order): n_x = n_h = dim, train
// from scratch, evaluate on the test split. Writes a TSV table.
std::vector<SweepRow> cmd_sweep(const RunConfig& config, const std::vector<std::size_t>& dims,
                                const std::vector<std::string>& encoders, std::ostream& out);
std::string sweep_header();
std::string sweep_row_text(const SweepRow& row);

// Writes the raw corpus (JSON lines with emoji tokens) and its inventory.
void cmd_gen_synthetic(const corpus::SyntheticSpec& spec, const fs::path& out_path,
                       const fs::path& inventory_path);

}  // namespace emojirec::cli
