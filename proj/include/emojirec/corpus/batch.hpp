#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "emojirec/dialogue.hpp"

namespace emojirec::corpus {

// Padded mini-batch laid out as [example][sentence][word].
struct Batch {
  std::size_t size = 0;
  std::size_t max_sentences = 0;
  std::size_t max_words = 0;
  std::vector<TokenId> tokens;        // kPadId at padded positions
  std::vector<std::uint8_t> mask;     // 1 iff a real token sits there
  std::vector<std::size_t> sentence_counts;
  std::vector<LabelId> labels;
  std::vector<std::size_t> source_indices;  // positions in the batched split

  std::size_t offset(std::size_t b, std::size_t s, std::size_t w) const {
    return (b * max_sentences + s) * max_words + w;
  }
  TokenId token(std::size_t b, std::size_t s, std::size_t w) const { return tokens[offset(b, s, w)]; }
  bool is_real(std::size_t b, std::size_t s, std::size_t w) const { return mask[offset(b, s, w)] != 0; }

  // The b-th example with padding removed.
  LabeledDialogue example(std::size_t b) const;
};

// Shuffles with a stream derived from (seed, epoch), then cuts batches of
// `batch_size`; the last batch may be short.
std::vector<Batch> make_batches(std::span<const LabeledDialogue> split, std::size_t batch_size,
                                std::uint64_t seed, std::size_t epoch);

}  // namespace emojirec::corpus
