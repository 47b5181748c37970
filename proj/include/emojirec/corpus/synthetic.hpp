#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "emojirec/corpus/labels.hpp"
#include "emojirec/corpus/text.hpp"

namespace emojirec::corpus {

// Synthetic dialogues whose label is carried by a class keyword planted
// `context_depth` sentences before the reply.
struct SyntheticSpec {
  std::size_t n_classes = 4;
  std::size_t vocab_size = 100;        // filler words
  std::size_t per_class = 500;
  std::size_t context_depth = 2;
  double noise = 0.05;                 // chance the keyword is redrawn uniformly
  std::uint64_t seed = 7;
  std::size_t max_dialogue_len = 4;
  std::size_t min_sentence_len = 3;
  std::size_t max_sentence_len = 6;
  std::size_t reply_pool_size = 40;

  void validate() const;
};

struct SyntheticCorpus {
  EmojiInventory inventory;
  std::vector<TextDialogue> dialogues;
};

// Dialogues are emitted round-robin over classes, so every class has exactly
// per_class examples. When context_depth >= 1 replies come from a shared pool
// assigned identically across classes, which makes the reply independent of
// the label.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

// Raw form with the label's emoji surface appended to the reply.
RawDialogue to_raw(const TextDialogue& d, const EmojiInventory& inventory);

std::string synthetic_keyword(std::size_t label);

}  // namespace emojirec::corpus
