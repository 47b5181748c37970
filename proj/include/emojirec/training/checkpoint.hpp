#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "emojirec/training/config.hpp"

namespace emojirec::train {

inline constexpr char kCheckpointMagic[4] = {'D', 'L', 'G', '1'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  TrainConfig config;
  TrainedModel model;
  std::string vocab_hash;
  std::string labels_hash;
  std::size_t epoch = 0;
  double best_valid_error = 1.0;
  std::uint64_t rng_seed = 0;
  std::uint64_t rng_counter = 0;
};

// Layout (all integers little-endian):
//   "DLG1" | u32 version | u64 header length | header (canonical JSON)
//   | u32 tensor count | per tensor: u32 name length, name, u64 rows,
//     u64 cols, rows*cols f64 values, u64 FNV-1a checksum of the values.
std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

// Throws a config error when an expected hash is given and differs.
Checkpoint load_checkpoint(const std::filesystem::path& path,
                           std::optional<std::string_view> expected_vocab_hash = std::nullopt,
                           std::optional<std::string_view> expected_labels_hash = std::nullopt);

void check_compatible(const Checkpoint& ckpt, std::optional<std::string_view> vocab_hash,
                      std::optional<std::string_view> labels_hash);

}  // namespace emojirec::train
