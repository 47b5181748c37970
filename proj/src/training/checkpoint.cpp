#include "emojirec/training/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "emojirec/corpus/io.hpp"
#include "emojirec/error.hpp"
#include "emojirec/hash.hpp"

namespace emojirec::train {

using nlohmann::json;

void TrainConfig::validate() const {
  model.validate();
  require(batch_size >= 1, ErrorKind::config, "batch_size must be at least 1");
  require(rho > 0.0 && rho < 1.0, ErrorKind::config, "rho must lie in (0, 1)");
  require(epsilon > 0.0, ErrorKind::config, "epsilon must be positive");
  require(patience >= 1, ErrorKind::config, "patience must be at least 1");
  require(!clip_norm || *clip_norm > 0.0, ErrorKind::config, "clip_norm must be positive");
  require(bow_learning_rate > 0.0, ErrorKind::config, "bow_learning_rate must be positive");
}

json to_json(const TrainConfig& c) {
  json j;
  j["encoder"] = std::string(enc::to_string(c.model.encoder));
  j["n_x"] = c.model.n_x;
  j["n_h"] = c.model.n_h;
  j["n_e"] = c.model.n_e;
  j["vocab_size"] = c.model.vocab_size;
  j["gamma"] = c.model.gamma;
  j["seed"] = c.model.seed;
  j["batch_size"] = c.batch_size;
  j["rho"] = c.rho;
  j["epsilon"] = c.epsilon;
  j["max_epochs"] = c.max_epochs;
  j["patience"] = c.patience;
  j["clip_norm"] = c.clip_norm ? json(*c.clip_norm) : json(nullptr);
  j["bow_epochs"] = c.bow_epochs;
  j["bow_learning_rate"] = c.bow_learning_rate;
  return j;
}

TrainConfig train_config_from_json(const json& j) {
  try {
    TrainConfig c;
    c.model.encoder = enc::parse_encoder_kind(j.at("encoder").get<std::string>());
    c.model.n_x = j.at("n_x").get<std::size_t>();
    c.model.n_h = j.at("n_h").get<std::size_t>();
    c.model.n_e = j.at("n_e").get<std::size_t>();
    c.model.vocab_size = j.at("vocab_size").get<std::size_t>();
    c.model.gamma = j.at("gamma").get<double>();
    c.model.seed = j.at("seed").get<std::uint64_t>();
    c.batch_size = j.at("batch_size").get<std::size_t>();
    c.rho = j.at("rho").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.max_epochs = j.at("max_epochs").get<std::size_t>();
    c.patience = j.at("patience").get<std::size_t>();
    if (!j.at("clip_norm").is_null()) c.clip_norm = j.at("clip_norm").get<double>();
    c.bow_epochs = j.at("bow_epochs").get<std::size_t>();
    c.bow_learning_rate = j.at("bow_learning_rate").get<double>();
    c.validate();
    return c;
  } catch (const json::exception& e) {
    fail(ErrorKind::format, std::string("checkpoint config: ") + e.what());
  }
}

TrainedModel TrainedModel::zeros(const enc::ModelConfig& config) {
  config.validate();
  if (enc::is_neural(config.encoder)) return TrainedModel{config, enc::ParameterSet::zeros(config)};
  enc::TfIdfModel bow;
  bow.idf.assign(config.vocab_size, 0.0);
  bow.weights = nn::Matrix(config.n_e, config.vocab_size);
  bow.bias.assign(config.n_e, 0.0);
  return TrainedModel{config, std::move(bow)};
}

nn::Vector TrainedModel::predict(std::span<const Sentence> dialogue) const {
  if (const auto* p = std::get_if<enc::ParameterSet>(&weights)) {
    return enc::predict(config.encoder, dialogue, *p);
  }
  const auto input = config.encoder == enc::EncoderKind::bow_single ? enc::BowInput::single
                                                                   : enc::BowInput::flattened;
  return enc::bow_predict(std::get<enc::TfIdfModel>(weights), dialogue, input);
}

namespace {

template <typename View, typename Bow>
std::vector<View> bow_tensors(Bow& b) {
  return {View{"bow.idf", 1, b.idf.size(), std::span(b.idf)},
          View{"bow.weights", b.weights.rows(), b.weights.cols(), b.weights.values()},
          View{"bow.bias", 1, b.bias.size(), std::span(b.bias)}};
}

}  // namespace

std::vector<nn::TensorView> TrainedModel::tensors() {
  if (auto* p = std::get_if<enc::ParameterSet>(&weights)) return p->tensors();
  return bow_tensors<nn::TensorView>(std::get<enc::TfIdfModel>(weights));
}

std::vector<nn::ConstTensorView> TrainedModel::tensors() const {
  if (const auto* p = std::get_if<enc::ParameterSet>(&weights)) return p->tensors();
  return bow_tensors<nn::ConstTensorView>(std::get<enc::TfIdfModel>(weights));
}

namespace {

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
  std::string& str() { return out_; }
  std::size_t size() const { return out_.size(); }

 private:
  void le(std::uint64_t v, int n) {
    for (int k = 0; k < n; ++k) out_.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::string_view bytes(std::size_t n, const char* what) {
    require(n <= in_.size() - pos_, ErrorKind::corruption,
            std::string("checkpoint truncated while reading ") + what);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32(const char* what) { return static_cast<std::uint32_t>(le(4, what)); }
  std::uint64_t u64(const char* what) { return le(8, what); }
  double f64(const char* what) { return std::bit_cast<double>(le(8, what)); }
  bool at_end() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::uint64_t le(int n, const char* what) {
    const auto b = bytes(static_cast<std::size_t>(n), what);
    std::uint64_t v = 0;
    for (int k = n - 1; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(k)]);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

json header_json(const Checkpoint& c, const std::vector<nn::ConstTensorView>& tensors) {
  json h;
  h["config"] = to_json(c.config);
  h["vocab_hash"] = c.vocab_hash;
  h["labels_hash"] = c.labels_hash;
  h["epoch"] = c.epoch;
  h["best_valid_error"] = c.best_valid_error;
  h["rng"] = {{"seed", c.rng_seed}, {"counter", c.rng_counter}};
  json names = json::array();
  for (const auto& t : tensors) names.push_back(t.name);
  h["tensors"] = names;
  return h;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  require(ckpt.model.config == ckpt.config.model, ErrorKind::config,
          "checkpoint: model config differs from training config");
  const auto tensors = ckpt.model.tensors();
  const std::string header = header_json(ckpt, tensors).dump();

  Writer w;
  w.bytes(kCheckpointMagic, 4);
  w.u32(kCheckpointVersion);
  w.u64(header.size());
  w.bytes(header.data(), header.size());
  w.u32(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    w.u32(static_cast<std::uint32_t>(t.name.size()));
    w.bytes(t.name.data(), t.name.size());
    w.u64(t.rows);
    w.u64(t.cols);
    const std::size_t start = w.size();
    for (double v : t.data) w.f64(v);
    const auto payload = std::string_view(w.str()).substr(start);
    w.u64(fnv1a64(payload));
  }
  return std::move(w.str());
}

Checkpoint deserialize_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  const auto magic = r.bytes(4, "magic");
  require(std::memcmp(magic.data(), kCheckpointMagic, 4) == 0, ErrorKind::format,
          "checkpoint: bad magic bytes");
  const auto version = r.u32("version");
  require(version == kCheckpointVersion, ErrorKind::format,
          "checkpoint: unsupported version " + std::to_string(version));
  const auto header_len = r.u64("header length");
  require(header_len <= r.remaining(), ErrorKind::corruption, "checkpoint truncated in header");
  const auto header_text = r.bytes(static_cast<std::size_t>(header_len), "header");

  json h;
  try {
    h = json::parse(header_text);
  } catch (const json::exception&) {
    fail(ErrorKind::corruption, "checkpoint: header is not valid JSON");
  }

  Checkpoint c;
  std::vector<std::string> names;
  try {
    c.config = train_config_from_json(h.at("config"));
    c.vocab_hash = h.at("vocab_hash").get<std::string>();
    c.labels_hash = h.at("labels_hash").get<std::string>();
    c.epoch = h.at("epoch").get<std::size_t>();
    c.best_valid_error = h.at("best_valid_error").get<double>();
    c.rng_seed = h.at("rng").at("seed").get<std::uint64_t>();
    c.rng_counter = h.at("rng").at("counter").get<std::uint64_t>();
    names = h.at("tensors").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    fail(ErrorKind::format, std::string("checkpoint header: ") + e.what());
  }

  c.model = TrainedModel::zeros(c.config.model);
  auto tensors = c.model.tensors();
  const auto count = r.u32("tensor count");
  require(count == tensors.size() && names.size() == tensors.size(), ErrorKind::format,
          "checkpoint: tensor count does not match the configured architecture");
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    auto& dst = tensors[t];
    const auto name_len = r.u32("tensor name length");
    const auto name = r.bytes(name_len, "tensor name");
    require(name == dst.name && names[t] == dst.name, ErrorKind::format,
            "checkpoint: expected tensor '" + dst.name + "', found '" + std::string(name) + "'");
    const auto rows = r.u64("tensor rows");
    const auto cols = r.u64("tensor cols");
    require(rows == dst.rows && cols == dst.cols, ErrorKind::format,
            "checkpoint: tensor '" + dst.name + "' has unexpected shape");
    require(rows * cols * 8 <= r.remaining(), ErrorKind::corruption,
            "checkpoint truncated in tensor '" + dst.name + "'");
    const auto payload = r.bytes(static_cast<std::size_t>(rows * cols * 8), "tensor payload");
    Reader pr(payload);
    for (double& v : dst.data) v = pr.f64("value");
    const auto checksum = r.u64("tensor checksum");
    require(checksum == fnv1a64(payload), ErrorKind::corruption,
            "checkpoint: checksum mismatch in tensor '" + dst.name + "'");
  }
  require(r.at_end(), ErrorKind::corruption, "checkpoint: trailing bytes after last tensor");
  return c;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  corpus::write_file(path, serialize_checkpoint(ckpt));
}

void check_compatible(const Checkpoint& ckpt, std::optional<std::string_view> vocab_hash,
                      std::optional<std::string_view> labels_hash) {
  require(!vocab_hash || *vocab_hash == ckpt.vocab_hash, ErrorKind::config,
          "checkpoint was trained with vocabulary " + ckpt.vocab_hash + ", but the supplied vocabulary hashes to " +
              std::string(vocab_hash.value_or("")));
  require(!labels_hash || *labels_hash == ckpt.labels_hash, ErrorKind::config,
          "checkpoint was trained with label set " + ckpt.labels_hash + ", but the supplied label set hashes to " +
              std::string(labels_hash.value_or("")));
}

Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<std::string_view> expected_vocab_hash,
                           std::optional<std::string_view> expected_labels_hash) {
  auto ckpt = deserialize_checkpoint(corpus::read_file(path));
  check_compatible(ckpt, expected_vocab_hash, expected_labels_hash);
  return ckpt;
}

}  // namespace emojirec::train
