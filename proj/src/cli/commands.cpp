#include "emojirec/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "emojirec/corpus/cleaning.hpp"
#include "emojirec/corpus/filter.hpp"
#include "emojirec/corpus/io.hpp"
#include "emojirec/error.hpp"
#include "emojirec/eval/evaluate.hpp"
#include "emojirec/eval/report.hpp"
#include "emojirec/training/checkpoint.hpp"

namespace emojirec::cli {

namespace {

constexpr const char* kSplitNames[3] = {"train", "valid", "test"};

// Balancing draws from a stream separate from the split shuffle.
constexpr std::uint64_t kBalanceSalt = 0xba1a9ce;

std::string labeled_jsonl(const std::vector<corpus::TextDialogue>& split, const corpus::LabelSet& labels) {
  std::ostringstream out;
  for (const auto& d : split) corpus::write_labeled_dialogue(out, d, labels);
  return out.str();
}

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string PreprocessStats::to_json(const corpus::LabelSet& labels) const {
  nlohmann::ordered_json j;
  j["input"] = input;
  nlohmann::ordered_json rej = nlohmann::ordered_json::object();
  std::size_t total_rejected = 0;
  for (auto reason : corpus::kAllRejectReasons) {
    const auto it = rejected.find(reason);
    const std::size_t n = it == rejected.end() ? 0 : it->second;
    rej[std::string(corpus::to_string(reason))] = n;
    total_rejected += n;
  }
  j["rejected_total"] = total_rejected;
  j["rejected"] = rej;
  nlohmann::ordered_json acc = nlohmann::ordered_json::object();
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < 3; ++s) {
    acc[kSplitNames[s]] = accepted[s];
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < labels.size(); ++c) {
      counts[labels.name(static_cast<LabelId>(c))] = c < per_class[s].size() ? per_class[s][c] : 0;
    }
    per[kSplitNames[s]] = counts;
  }
  j["accepted"] = acc;
  j["per_class"] = per;
  j["vocab_size"] = vocab_size;
  return j.dump(2) + "\n";
}

PreprocessStats cmd_preprocess(const fs::path& raw_path, const fs::path& inventory_path,
                               const fs::path& out_dir, const RunConfig& config) {
  config.validate();
  std::istringstream inv_text(corpus::read_file(inventory_path));
  const auto inventory = corpus::EmojiInventory::read(inv_text);
  const auto& labels = inventory.labels();
  std::istringstream raw_text(corpus::read_file(raw_path));
  const auto raw = corpus::read_raw_corpus(raw_text, raw_path.string());

  PreprocessStats stats;
  stats.input = raw.size();
  const corpus::CleaningRules rules;
  std::vector<corpus::TextDialogue> candidates;
  for (const auto& r : raw) {
    const auto cleaned = corpus::clean_dialogue(r, rules);
    if (!cleaned) {
      ++stats.rejected[corpus::RejectReason::empty_after_cleaning];
      continue;
    }
    auto extracted = corpus::extract_label(*cleaned, inventory);
    if (const auto* reason = std::get_if<corpus::RejectReason>(&extracted)) {
      ++stats.rejected[*reason];
      continue;
    }
    candidates.push_back(corpus::truncate_dialogue(std::get<corpus::TextDialogue>(std::move(extracted)),
                                                   config.limits.max_dialogue_len));
  }

  const auto seed = config.train.model.seed;
  auto splits = corpus::split_corpus(candidates, config.fractions, seed);
  const auto vocab = corpus::Vocabulary::build(splits.train, config.min_freq);
  stats.vocab_size = vocab.size();

  std::array<std::vector<corpus::TextDialogue>*, 3> parts = {&splits.train, &splits.valid, &splits.test};
  for (std::size_t s = 0; s < 3; ++s) {
    std::vector<corpus::TextDialogue> kept;
    for (const auto& d : *parts[s]) {
      auto outcome = corpus::filter_dialogue(d, vocab, config.limits);
      if (const auto* reason = std::get_if<corpus::RejectReason>(&outcome)) {
        ++stats.rejected[*reason];
      } else {
        kept.push_back(std::get<corpus::TextDialogue>(std::move(outcome)));
      }
    }
    if (config.balance) kept = corpus::balance_classes(kept, labels.size(), seed ^ (kBalanceSalt + s));
    stats.accepted[s] = kept.size();
    stats.per_class[s].assign(labels.size(), 0);
    for (const auto& d : kept) ++stats.per_class[s][static_cast<std::size_t>(d.label)];
    *parts[s] = std::move(kept);
  }

  fs::create_directories(out_dir);
  corpus::write_file(out_dir / kTrainFile, labeled_jsonl(splits.train, labels));
  corpus::write_file(out_dir / kValidFile, labeled_jsonl(splits.valid, labels));
  corpus::write_file(out_dir / kTestFile, labeled_jsonl(splits.test, labels));
  std::ostringstream vocab_text, labels_text, inventory_text;
  vocab.write(vocab_text);
  labels.write(labels_text);
  inventory.write(inventory_text);
  corpus::write_file(out_dir / kVocabFile, vocab_text.str());
  corpus::write_file(out_dir / kLabelsFile, labels_text.str());
  corpus::write_file(out_dir / kInventoryFile, inventory_text.str());
  corpus::write_file(out_dir / kStatsFile, stats.to_json(labels));
  return stats;
}

train::DataHashes Dataset::hashes() const { return {vocab.content_hash(), labels.content_hash()}; }

std::vector<LabeledDialogue> load_split(const fs::path& path, const corpus::Vocabulary& vocab,
                                        const corpus::LabelSet& labels) {
  std::istringstream in(corpus::read_file(path));
  std::vector<LabeledDialogue> out;
  for (const auto& d : corpus::read_labeled_corpus(in, labels, path.string())) {
    out.push_back(corpus::encode_dialogue(d, vocab));
  }
  return out;
}

Dataset load_dataset(const fs::path& data_dir) {
  Dataset ds;
  {
    std::istringstream in(corpus::read_file(data_dir / kVocabFile));
    ds.vocab = corpus::Vocabulary::read(in);
  }
  {
    std::istringstream in(corpus::read_file(data_dir / kLabelsFile));
    ds.labels = corpus::LabelSet::read(in);
  }
  ds.train = load_split(data_dir / kTrainFile, ds.vocab, ds.labels);
  ds.valid = load_split(data_dir / kValidFile, ds.vocab, ds.labels);
  ds.test = load_split(data_dir / kTestFile, ds.vocab, ds.labels);
  return ds;
}

namespace {

train::TrainConfig bind_to_dataset(const RunConfig& config, const Dataset& ds) {
  auto tc = config.train;
  tc.model.vocab_size = ds.vocab.size();
  tc.model.n_e = ds.labels.size();
  return tc;
}

}  // namespace

TrainSummary cmd_train(const RunConfig& config, const fs::path& checkpoint_path, const fs::path& log_path,
                       std::ostream& out) {
  config.validate();
  const auto ds = load_dataset(config.data_dir);
  TrainSummary summary{train::train(bind_to_dataset(config, ds), ds.train, ds.valid, ds.hashes()), 0.0};
  train::save_checkpoint(summary.result.best, checkpoint_path);
  corpus::write_file(log_path, summary.result.log.to_jsonl());
  summary.train_p_at_1 = eval::evaluate(summary.result.best.model, ds.train).p_at_1;
  out << "encoder\t" << enc::to_string(config.train.model.encoder) << '\n'
      << "epochs_run\t" << summary.result.log.epochs.size() << '\n'
      << "best_epoch\t" << summary.result.best.epoch << '\n'
      << "valid_error\t" << real_text(summary.result.best.best_valid_error) << '\n'
      << "train_p_at_1\t" << real_text(summary.train_p_at_1) << '\n';
  return summary;
}

eval::EvalReport cmd_evaluate(const fs::path& checkpoint_path, const fs::path& split_path,
                              const fs::path& data_dir, const std::optional<fs::path>& report_path,
                              const std::optional<fs::path>& table_path, std::ostream& out) {
  corpus::Vocabulary vocab;
  corpus::LabelSet labels;
  {
    std::istringstream in(corpus::read_file(data_dir / kVocabFile));
    vocab = corpus::Vocabulary::read(in);
  }
  {
    std::istringstream in(corpus::read_file(data_dir / kLabelsFile));
    labels = corpus::LabelSet::read(in);
  }
  const auto ckpt = train::load_checkpoint(checkpoint_path, vocab.content_hash(), labels.content_hash());
  const auto split = load_split(split_path, vocab, labels);
  const auto report = eval::evaluate(ckpt.model, split);
  const auto json = eval::report_to_json(report, labels);
  if (report_path) corpus::write_file(*report_path, json);
  if (table_path) {
    corpus::write_file(*table_path,
                       eval::per_class_table({{std::string(enc::to_string(ckpt.config.model.encoder)), report}},
                                             labels));
  }
  out << json;
  return report;
}

void cmd_predict(const fs::path& checkpoint_path, const fs::path& data_dir, std::istream& in,
                 std::ostream& out) {
  corpus::Vocabulary vocab;
  corpus::LabelSet labels;
  {
    std::istringstream v(corpus::read_file(data_dir / kVocabFile));
    vocab = corpus::Vocabulary::read(v);
  }
  {
    std::istringstream l(corpus::read_file(data_dir / kLabelsFile));
    labels = corpus::LabelSet::read(l);
  }
  const auto ckpt = train::load_checkpoint(checkpoint_path, vocab.content_hash(), labels.content_hash());

  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto raw = corpus::parse_raw_line(line, "stdin:" + std::to_string(line_no));
    require(!raw.sentences.empty(), ErrorKind::data, "stdin:" + std::to_string(line_no) + ": no sentences");
    const auto encoded = corpus::encode_dialogue(corpus::TextDialogue{raw.sentences, 0}, vocab);
    const auto probs = ckpt.model.predict(encoded.sentences);

    std::vector<std::size_t> order(probs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
    if (!first) out << '\n';
    first = false;
    for (std::size_t r = 0; r < order.size(); ++r) {
      out << (r + 1) << '\t' << labels.name(static_cast<LabelId>(order[r])) << '\t'
          << real_text(probs[order[r]]) << '\n';
    }
  }
}

std::string sweep_header() { return "encoder\tdim\tp_at_1\tp_at_3\tmrr\n"; }

std::string sweep_row_text(const SweepRow& row) {
  return row.encoder + '\t' + std::to_string(row.dim) + '\t' + eval::format_percent(row.report.p_at_1) +
         '\t' + eval::format_percent(row.report.p_at_3) + '\t' + eval::format_percent(row.report.mrr) + '\n';
}

std::vector<SweepRow> cmd_sweep(const RunConfig& config, const std::vector<std::size_t>& dims,
                                const std::vector<std::string>& encoders, std::ostream& out) {
  config.validate();
  require(!dims.empty(), ErrorKind::config, "sweep: no dimensions given");
  require(!encoders.empty(), ErrorKind::config, "sweep: no encoders given");
  const auto ds = load_dataset(config.data_dir);
  require(!ds.test.empty(), ErrorKind::data, "sweep: test split is empty");
  std::vector<SweepRow> rows;
  out << sweep_header();
  for (std::size_t dim : dims) {
    require(dim > 0, ErrorKind::config, "sweep: dimensions must be positive");
    for (const auto& name : encoders) {
      auto tc = bind_to_dataset(config, ds);
      tc.model.encoder = enc::parse_encoder_kind(name);
      tc.model.n_x = dim;
      tc.model.n_h = dim;
      const auto result = train::train(tc, ds.train, ds.valid, ds.hashes());
      SweepRow row{name, dim, eval::evaluate(result.best.model, ds.test)};
      out << sweep_row_text(row) << std::flush;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void cmd_gen_synthetic(const corpus::SyntheticSpec& spec, const fs::path& out_path,
                       const fs::path& inventory_path) {
  const auto corpus = corpus::generate_synthetic(spec);
  std::ostringstream raw;
  for (const auto& d : corpus.dialogues) corpus::write_raw_dialogue(raw, corpus::to_raw(d, corpus.inventory));
  std::ostringstream inv;
  corpus.inventory.write(inv);
  corpus::write_file(out_path, raw.str());
  corpus::write_file(inventory_path, inv.str());
}

}  // namespace emojirec::cli
