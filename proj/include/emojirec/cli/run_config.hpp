#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "emojirec/corpus/filter.hpp"
#include "emojirec/corpus/split.hpp"
#include "emojirec/training/config.hpp"

namespace emojirec::cli {

// Everything an experiment needs, loaded from "key = value" lines ('#'
// starts a comment) and overridable key by key from the command line.
struct RunConfig {
  std::filesystem::path data_dir = "data";
  train::TrainConfig train;
  std::size_t min_freq = 30;
  corpus::FilterLimits limits;
  bool balance = false;
  corpus::SplitFractions fractions{0.8, 0.1, 0.1};

  RunConfig();

  // Known keys in a fixed order.
  static const std::vector<std::string>& keys();

  // Throws a config error for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  void load_text(std::string_view text, const std::string& name);
  void load_file(const std::filesystem::path& path);
  void validate() const;

  // Canonical "key = value" rendering (round-trips through load_text).
  std::string to_text() const;
};

}  // namespace emojirec::cli
