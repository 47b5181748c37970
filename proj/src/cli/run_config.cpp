#include "emojirec/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "emojirec/corpus/io.hpp"
#include "emojirec/error.hpp"

namespace emojirec::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_count(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size() && !v.empty(), ErrorKind::config,
          "config key '" + std::string(key) + "': expected a nonnegative integer, got '" +
              std::string(v) + "'");
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size() && !v.empty(), ErrorKind::config,
          "config key '" + std::string(key) + "': expected an unsigned integer, got '" +
              std::string(v) + "'");
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  const std::string s(v);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(!s.empty() && used == s.size() && std::isfinite(out), ErrorKind::config,
          "config key '" + std::string(key) + "': expected a number, got '" + s + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(ErrorKind::config, "config key '" + std::string(key) + "': expected true or false, got '" +
                              std::string(v) + "'");
}

std::string real_text(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

RunConfig::RunConfig() {
  train.model.n_x = 384;
  train.model.n_h = 384;
  train.model.gamma = 0.5;
  train.model.encoder = enc::EncoderKind::hierarchical;
  train.model.seed = 1;
  train.batch_size = 128;
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = {
      "data_dir",       "encoder",        "n_x",           "n_h",
      "batch_size",     "gamma",          "rho",           "epsilon",
      "patience",       "max_epochs",     "seed",          "min_freq",
      "max_sentence_len", "max_dialogue_len", "max_oov_ratio", "balance",
      "clip_norm",      "train_fraction", "valid_fraction", "test_fraction",
      "bow_epochs",     "bow_learning_rate",
  };
  return k;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const auto v = trim(raw);
  auto& m = train.model;
  if (key == "data_dir") data_dir = std::string(v);
  else if (key == "encoder") m.encoder = enc::parse_encoder_kind(v);
  else if (key == "n_x") m.n_x = parse_count(key, v);
  else if (key == "n_h") m.n_h = parse_count(key, v);
  else if (key == "batch_size") train.batch_size = parse_count(key, v);
  else if (key == "gamma") m.gamma = parse_real(key, v);
  else if (key == "rho") train.rho = parse_real(key, v);
  else if (key == "epsilon") train.epsilon = parse_real(key, v);
  else if (key == "patience") train.patience = parse_count(key, v);
  else if (key == "max_epochs") train.max_epochs = parse_count(key, v);
  else if (key == "seed") m.seed = parse_u64(key, v);
  else if (key == "min_freq") min_freq = parse_count(key, v);
  else if (key == "max_sentence_len") limits.max_sentence_len = parse_count(key, v);
  else if (key == "max_dialogue_len") limits.max_dialogue_len = parse_count(key, v);
  else if (key == "max_oov_ratio") limits.max_oov_ratio = parse_real(key, v);
  else if (key == "balance") balance = parse_bool(key, v);
  else if (key == "clip_norm") {
    if (v == "none" || v.empty()) train.clip_norm.reset();
    else train.clip_norm = parse_real(key, v);
  }
  else if (key == "train_fraction") fractions[0] = parse_real(key, v);
  else if (key == "valid_fraction") fractions[1] = parse_real(key, v);
  else if (key == "test_fraction") fractions[2] = parse_real(key, v);
  else if (key == "bow_epochs") train.bow_epochs = parse_count(key, v);
  else if (key == "bow_learning_rate") train.bow_learning_rate = parse_real(key, v);
  else fail(ErrorKind::config, "unknown config key '" + std::string(key) + "'");
}

void RunConfig::load_text(std::string_view text, const std::string& name) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string_view::npos, ErrorKind::config,
            name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    try {
      set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      fail(e.kind(), name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  load_text(corpus::read_file(path), path.string());
}

void RunConfig::validate() const {
  auto& m = train.model;
  require(m.n_x > 0 && m.n_h > 0, ErrorKind::config, "n_x and n_h must be positive");
  require(m.gamma >= 0.0 && m.gamma < 1.0, ErrorKind::config, "gamma must lie in [0, 1)");
  require(train.batch_size >= 1, ErrorKind::config, "batch_size must be at least 1");
  require(train.rho > 0.0 && train.rho < 1.0, ErrorKind::config, "rho must lie in (0, 1)");
  require(train.epsilon > 0.0, ErrorKind::config, "epsilon must be positive");
  require(train.patience >= 1, ErrorKind::config, "patience must be at least 1");
  require(!train.clip_norm || *train.clip_norm > 0.0, ErrorKind::config, "clip_norm must be positive");
  require(train.bow_learning_rate > 0.0, ErrorKind::config, "bow_learning_rate must be positive");
  require(min_freq >= 1, ErrorKind::config, "min_freq must be at least 1");
  limits.validate();
  double total = 0.0;
  for (double f : fractions) {
    require(f >= 0.0, ErrorKind::config, "split fractions must be nonnegative");
    total += f;
  }
  require(std::abs(total - 1.0) < 1e-9, ErrorKind::config, "split fractions must sum to 1");
  require(fractions[0] > 0.0, ErrorKind::config, "train_fraction must be positive");
}

std::string RunConfig::to_text() const {
  const auto& m = train.model;
  std::ostringstream out;
  out << "data_dir = " << data_dir.string() << '\n'
      << "encoder = " << enc::to_string(m.encoder) << '\n'
      << "n_x = " << m.n_x << '\n'
      << "n_h = " << m.n_h << '\n'
      << "batch_size = " << train.batch_size << '\n'
      << "gamma = " << real_text(m.gamma) << '\n'
      << "rho = " << real_text(train.rho) << '\n'
      << "epsilon = " << real_text(train.epsilon) << '\n'
      << "patience = " << train.patience << '\n'
      << "max_epochs = " << train.max_epochs << '\n'
      << "seed = " << m.seed << '\n'
      << "min_freq = " << min_freq << '\n'
      << "max_sentence_len = " << limits.max_sentence_len << '\n'
      << "max_dialogue_len = " << limits.max_dialogue_len << '\n'
      << "max_oov_ratio = " << real_text(limits.max_oov_ratio) << '\n'
      << "balance = " << (balance ? "true" : "false") << '\n'
      << "clip_norm = " << (train.clip_norm ? real_text(*train.clip_norm) : std::string("none")) << '\n'
      << "train_fraction = " << real_text(fractions[0]) << '\n'
      << "valid_fraction = " << real_text(fractions[1]) << '\n'
      << "test_fraction = " << real_text(fractions[2]) << '\n'
      << "bow_epochs = " << train.bow_epochs << '\n'
      << "bow_learning_rate = " << real_text(train.bow_learning_rate) << '\n';
  return out.str();
}

}  // namespace emojirec::cli
