#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace emojirec {

using TokenId = std::int32_t;
using LabelId = std::int32_t;
using Sentence = std::vector<TokenId>;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kFirstWordId = 2;

// A dialogue mapped to token ids. The last sentence is the reply; every
// earlier sentence is context.
struct LabeledDialogue {
  std::vector<Sentence> sentences;
  LabelId label = 0;

  const Sentence& reply() const { return sentences.back(); }
  std::span<const Sentence> context() const {
    return std::span<const Sentence>(sentences).first(sentences.size() - 1);
  }

  bool operator==(const LabeledDialogue&) const = default;
};

}  // namespace emojirec
