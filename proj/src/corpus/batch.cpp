#include "emojirec/corpus/batch.hpp"

#include <algorithm>
#include <numeric>

#include "emojirec/error.hpp"
#include "emojirec/nn/rng.hpp"

namespace emojirec::corpus {

LabeledDialogue Batch::example(std::size_t b) const {
  LabeledDialogue d;
  d.label = labels[b];
  for (std::size_t s = 0; s < sentence_counts[b]; ++s) {
    Sentence sentence;
    for (std::size_t w = 0; w < max_words && is_real(b, s, w); ++w) sentence.push_back(token(b, s, w));
    d.sentences.push_back(std::move(sentence));
  }
  return d;
}

std::vector<Batch> make_batches(std::span<const LabeledDialogue> split, std::size_t batch_size,
                                std::uint64_t seed, std::size_t epoch) {
  require(batch_size >= 1, ErrorKind::config, "make_batches: batch size must be positive");
  std::vector<std::size_t> order(split.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto rng = nn::RngStream(seed).derive(epoch);
  rng.shuffle(std::span(order));

  std::vector<Batch> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    Batch batch;
    batch.size = end - start;
    for (std::size_t k = start; k < end; ++k) {
      const auto& d = split[order[k]];
      batch.max_sentences = std::max(batch.max_sentences, d.sentences.size());
      for (const auto& s : d.sentences) batch.max_words = std::max(batch.max_words, s.size());
    }
    const std::size_t cells = batch.size * batch.max_sentences * batch.max_words;
    batch.tokens.assign(cells, kPadId);
    batch.mask.assign(cells, 0);
    for (std::size_t b = 0; b < batch.size; ++b) {
      const auto& d = split[order[start + b]];
      batch.sentence_counts.push_back(d.sentences.size());
      batch.labels.push_back(d.label);
      batch.source_indices.push_back(order[start + b]);
      for (std::size_t s = 0; s < d.sentences.size(); ++s) {
        for (std::size_t w = 0; w < d.sentences[s].size(); ++w) {
          batch.tokens[batch.offset(b, s, w)] = d.sentences[s][w];
          batch.mask[batch.offset(b, s, w)] = 1;
        }
      }
    }
    batches.push_back(std::move(batch));
  }
  return batches;
}

}  // namespace emojirec::corpus
