#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "emojirec/corpus/text.hpp"
#include "emojirec/corpus/vocabulary.hpp"

namespace emojirec::corpus {

struct FilterLimits {
  std::size_t max_sentence_len = 50;
  std::size_t max_dialogue_len = 4;
  double max_oov_ratio = 0.25;  // inclusive

  void validate() const;
};

// Keeps only the last `max_sentences` sentences (those ending at the reply).
TextDialogue truncate_dialogue(TextDialogue d, std::size_t max_sentences);

using FilterOutcome = std::variant<TextDialogue, RejectReason>;

// Truncates to the last max_dialogue_len sentences, then rejects on an empty
// sentence, a sentence longer than max_sentence_len, or a sentence whose OOV
// share exceeds max_oov_ratio, in that order.
FilterOutcome filter_dialogue(const TextDialogue& d, const Vocabulary& vocab, const FilterLimits& limits);

LabeledDialogue encode_dialogue(const TextDialogue& d, const Vocabulary& vocab);

}  // namespace emojirec::corpus

namespace emojirec::corpus {

// Downsamples every class to the smallest nonzero class count, choosing the
// survivors with a seeded shuffle and keeping the input order.
std::vector<TextDialogue> balance_classes(const std::vector<TextDialogue>& dialogues,
                                          std::size_t n_classes, std::uint64_t seed);

}  // namespace emojirec::corpus
