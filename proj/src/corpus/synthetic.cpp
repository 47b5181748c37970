#include "emojirec/corpus/synthetic.hpp"

#include <array>
#include <numeric>

#include "emojirec/error.hpp"
#include "emojirec/nn/rng.hpp"

namespace emojirec::corpus {

namespace {

constexpr std::array<const char*, 10> kEmojiNames = {
    "tears_of_joy", "thinking", "laugh", "nervous",    "shy",
    "delicious",    "cry",      "astonished", "angry", "heart",
};

std::string label_name(std::size_t c) {
  return c < kEmojiNames.size() ? kEmojiNames[c] : "emoji_" + std::to_string(c);
}

TokenList filler_sentence(const SyntheticSpec& spec, nn::RngStream& rng) {
  const std::size_t span = spec.max_sentence_len - spec.min_sentence_len + 1;
  const std::size_t len = spec.min_sentence_len + static_cast<std::size_t>(rng.below(span));
  TokenList s;
  for (std::size_t k = 0; k < len; ++k) s.push_back("w" + std::to_string(rng.below(spec.vocab_size)));
  return s;
}

void plant(TokenList& s, const std::string& keyword, nn::RngStream& rng) {
  const auto pos = static_cast<std::ptrdiff_t>(rng.below(s.size() + 1));
  s.insert(s.begin() + pos, keyword);
}

}  // namespace

std::string synthetic_keyword(std::size_t label) { return "key" + std::to_string(label); }

void SyntheticSpec::validate() const {
  require(n_classes >= 2, ErrorKind::config, "synthetic: need at least two classes");
  require(vocab_size >= 1, ErrorKind::config, "synthetic: vocab_size must be positive");
  require(per_class >= 1, ErrorKind::config, "synthetic: per_class must be positive");
  require(context_depth < max_dialogue_len, ErrorKind::config,
          "synthetic: context_depth must be smaller than max_dialogue_len");
  require(noise >= 0.0 && noise <= 1.0, ErrorKind::config, "synthetic: noise must lie in [0, 1]");
  require(min_sentence_len >= 1 && min_sentence_len <= max_sentence_len, ErrorKind::config,
          "synthetic: invalid sentence length range");
  require(reply_pool_size >= 1, ErrorKind::config, "synthetic: reply pool must be nonempty");
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const nn::RngStream root(spec.seed);
  auto pool_rng = root.derive(1);
  auto rng = root.derive(2);

  std::vector<TokenList> pool;
  for (std::size_t k = 0; k < spec.reply_pool_size; ++k) pool.push_back(filler_sentence(spec, pool_rng));
  std::vector<std::size_t> pool_order(pool.size());
  std::iota(pool_order.begin(), pool_order.end(), std::size_t{0});
  pool_rng.shuffle(std::span(pool_order));

  std::vector<std::pair<std::string, std::string>> entries;
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    entries.emplace_back("[" + label_name(c) + "]", label_name(c));
  }
  SyntheticCorpus out{EmojiInventory(entries), {}};

  const std::size_t max_extra = spec.max_dialogue_len - spec.context_depth - 1;
  for (std::size_t j = 0; j < spec.per_class; ++j) {
    for (std::size_t c = 0; c < spec.n_classes; ++c) {
      const std::size_t n_sentences = spec.context_depth + 1 + static_cast<std::size_t>(rng.below(max_extra + 1));
      std::vector<TokenList> sentences;
      for (std::size_t s = 0; s + 1 < n_sentences; ++s) sentences.push_back(filler_sentence(spec, rng));
      sentences.push_back(pool[pool_order[j % pool.size()]]);

      std::size_t keyword_class = c;
      if (rng.bernoulli(spec.noise)) keyword_class = static_cast<std::size_t>(rng.below(spec.n_classes));
      plant(sentences[n_sentences - 1 - spec.context_depth], synthetic_keyword(keyword_class), rng);

      out.dialogues.push_back(TextDialogue{std::move(sentences), static_cast<LabelId>(c)});
    }
  }
  return out;
}

RawDialogue to_raw(const TextDialogue& d, const EmojiInventory& inventory) {
  RawDialogue raw;
  raw.sentences = d.sentences;
  const auto& name = inventory.labels().name(d.label);
  raw.sentences.back().push_back("[" + name + "]");
  require(inventory.label_of(raw.sentences.back().back()) == d.label, ErrorKind::label,
          "to_raw: inventory has no bracketed surface for '" + name + "'");
  return raw;
}

}  // namespace emojirec::corpus
