// Command-line front end: preprocess, train, evaluate, predict, sweep,
// gen-synthetic.

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emojirec/cli/commands.hpp"
#include "emojirec/cli/run_config.hpp"
#include "emojirec/corpus/io.hpp"
#include "emojirec/error.hpp"

namespace {

using emojirec::cli::RunConfig;

struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key = value configuration file");
    for (const auto& key : RunConfig::keys()) {
      std::string flag = "--" + key;
      for (auto& ch : flag) {
        if (ch == '_') ch = '-';
      }
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { overrides[key] = v; }, "override config key " + key);
    }
  }

  RunConfig resolve() const {
    RunConfig rc;
    if (!config_file.empty()) rc.load_file(config_file);
    for (const auto& [k, v] : overrides) rc.set(k, v);
    rc.validate();
    return rc;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = emojirec::cli;
  CLI::App app{"Dialogue-level emoji classification"};
  app.require_subcommand(1);

  ConfigFlags pre_flags, train_flags, sweep_flags;

  auto* pre = app.add_subcommand("preprocess", "clean, label, filter and split a raw corpus");
  std::string raw_path, inventory_path, out_dir;
  pre->add_option("--raw", raw_path, "raw JSON-lines corpus")->required();
  pre->add_option("--inventory", inventory_path, "surface<TAB>label_name emoji inventory")->required();
  pre->add_option("--out", out_dir, "output directory")->required();
  pre_flags.attach(pre);

  auto* trn = app.add_subcommand("train", "train a model on a preprocessed data directory");
  std::string ckpt_out, log_out;
  trn->add_option("--checkpoint", ckpt_out, "checkpoint output path")->required();
  trn->add_option("--log", log_out, "JSON-lines training log path")->required();
  train_flags.attach(trn);

  auto* evl = app.add_subcommand("evaluate", "score a checkpoint on a split");
  std::string eval_ckpt, eval_split, eval_data, eval_report, eval_table;
  evl->add_option("--checkpoint", eval_ckpt)->required();
  evl->add_option("--split", eval_split, "labeled JSON-lines split")->required();
  evl->add_option("--data-dir", eval_data, "directory holding vocab.tsv and labels.tsv")->required();
  evl->add_option("--report", eval_report, "write the report JSON here too");
  evl->add_option("--table", eval_table, "write the per-class P@1 table here");

  auto* prd = app.add_subcommand("predict", "rank emojis for dialogues read from stdin");
  std::string pred_ckpt, pred_data;
  prd->add_option("--checkpoint", pred_ckpt)->required();
  prd->add_option("--data-dir", pred_data, "directory holding vocab.tsv and labels.tsv")->required();

  auto* swp = app.add_subcommand("sweep", "train and evaluate across embedding/hidden sizes");
  std::string dims_text, encoders_text = "h-lstm", sweep_out;
  swp->add_option("--dims", dims_text, "comma-separated dimensions")->required();
  swp->add_option("--encoders", encoders_text, "comma-separated encoder names");
  swp->add_option("--out", sweep_out, "also write the table here");
  sweep_flags.attach(swp);

  auto* gen = app.add_subcommand("gen-synthetic", "write a synthetic raw corpus and inventory");
  emojirec::corpus::SyntheticSpec spec;
  std::string gen_out, gen_inventory;
  gen->add_option("--classes", spec.n_classes);
  gen->add_option("--vocab-size", spec.vocab_size);
  gen->add_option("--per-class", spec.per_class);
  gen->add_option("--context-depth", spec.context_depth);
  gen->add_option("--noise", spec.noise);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--max-dialogue-len", spec.max_dialogue_len);
  gen->add_option("--min-sentence-len", spec.min_sentence_len);
  gen->add_option("--max-sentence-len", spec.max_sentence_len);
  gen->add_option("--reply-pool", spec.reply_pool_size);
  gen->add_option("--out", gen_out, "raw corpus output path")->required();
  gen->add_option("--inventory", gen_inventory, "inventory output path (default <out>.inventory.tsv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*pre) {
      cli::cmd_preprocess(raw_path, inventory_path, out_dir, pre_flags.resolve());
      std::cout << emojirec::corpus::read_file(std::filesystem::path(out_dir) / cli::kStatsFile);
    } else if (*trn) {
      cli::cmd_train(train_flags.resolve(), ckpt_out, log_out, std::cout);
    } else if (*evl) {
      std::optional<std::filesystem::path> report, table;
      if (!eval_report.empty()) report = eval_report;
      if (!eval_table.empty()) table = eval_table;
      cli::cmd_evaluate(eval_ckpt, eval_split, eval_data, report, table, std::cout);
    } else if (*prd) {
      cli::cmd_predict(pred_ckpt, pred_data, std::cin, std::cout);
    } else if (*swp) {
      std::vector<std::size_t> dims;
      for (const auto& d : split_list(dims_text)) {
        try {
          dims.push_back(std::stoul(d));
        } catch (const std::exception&) {
          emojirec::fail(emojirec::ErrorKind::config, "sweep: bad dimension '" + d + "'");
        }
      }
      std::ostringstream table;
      cli::cmd_sweep(sweep_flags.resolve(), dims, split_list(encoders_text), table);
      std::cout << table.str();
      if (!sweep_out.empty()) emojirec::corpus::write_file(sweep_out, table.str());
    } else if (*gen) {
      cli::cmd_gen_synthetic(spec, gen_out, gen_inventory.empty() ? gen_out + ".inventory.tsv" : gen_inventory);
    }
  } catch (const emojirec::Error& e) {
    std::cerr << "error: " << emojirec::to_string(e.kind()) << ": " << e.what() << '\n';
    return emojirec::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
