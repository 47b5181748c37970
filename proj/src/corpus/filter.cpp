#include "emojirec/corpus/filter.hpp"

#include "emojirec/error.hpp"

namespace emojirec::corpus {

void FilterLimits::validate() const {
  require(max_sentence_len >= 1, ErrorKind::config, "max_sentence_len must be at least 1");
  require(max_dialogue_len >= 1, ErrorKind::config, "max_dialogue_len must be at least 1");
  require(max_oov_ratio >= 0.0 && max_oov_ratio <= 1.0, ErrorKind::config,
          "max_oov_ratio must lie in [0, 1]");
}

TextDialogue truncate_dialogue(TextDialogue d, std::size_t max_sentences) {
  if (d.sentences.size() > max_sentences) {
    d.sentences.erase(d.sentences.begin(),
                      d.sentences.end() - static_cast<std::ptrdiff_t>(max_sentences));
  }
  return d;
}

FilterOutcome filter_dialogue(const TextDialogue& d, const Vocabulary& vocab, const FilterLimits& limits) {
  TextDialogue kept = truncate_dialogue(d, limits.max_dialogue_len);
  if (kept.sentences.empty()) return RejectReason::empty;
  for (const auto& s : kept.sentences) {
    if (s.empty()) return RejectReason::empty;
  }
  for (const auto& s : kept.sentences) {
    if (s.size() > limits.max_sentence_len) return RejectReason::too_long_sentence;
  }
  for (const auto& s : kept.sentences) {
    std::size_t oov = 0;
    for (const auto& tok : s) oov += vocab.contains(tok) ? 0 : 1;
    const double ratio = static_cast<double>(oov) / static_cast<double>(s.size());
    if (ratio > limits.max_oov_ratio) return RejectReason::too_many_oov;
  }
  return kept;
}

LabeledDialogue encode_dialogue(const TextDialogue& d, const Vocabulary& vocab) {
  LabeledDialogue out;
  out.label = d.label;
  out.sentences.reserve(d.sentences.size());
  for (const auto& s : d.sentences) {
    Sentence ids;
    ids.reserve(s.size());
    for (const auto& tok : s) ids.push_back(vocab.id(tok));
    out.sentences.push_back(std::move(ids));
  }
  return out;
}

}  // namespace emojirec::corpus

#include <algorithm>
#include <limits>

#include "emojirec/nn/rng.hpp"

namespace emojirec::corpus {

std::vector<TextDialogue> balance_classes(const std::vector<TextDialogue>& dialogues,
                                          std::size_t n_classes, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> members(n_classes);
  for (std::size_t k = 0; k < dialogues.size(); ++k) {
    const auto label = dialogues[k].label;
    require(label >= 0 && static_cast<std::size_t>(label) < n_classes, ErrorKind::label,
            "balance_classes: label out of range");
    members[static_cast<std::size_t>(label)].push_back(k);
  }
  std::size_t target = std::numeric_limits<std::size_t>::max();
  for (const auto& m : members) {
    if (!m.empty()) target = std::min(target, m.size());
  }
  if (target == std::numeric_limits<std::size_t>::max()) return {};

  nn::RngStream rng(seed);
  std::vector<std::size_t> keep;
  for (auto& m : members) {
    rng.shuffle(std::span(m));
    keep.insert(keep.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(std::min(target, m.size())));
  }
  std::sort(keep.begin(), keep.end());
  std::vector<TextDialogue> out;
  out.reserve(keep.size());
  for (std::size_t k : keep) out.push_back(dialogues[k]);
  return out;
}

}  // namespace emojirec::corpus
