#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emojirec/corpus/text.hpp"

namespace emojirec::corpus {

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::size_t kDefaultMinFreq = 30;

// Token <-> id map with training-split frequencies. Ids 0 and 1 are PAD and
// UNK; the rest are ordered by descending frequency, then by token.
class Vocabulary {
 public:
  static Vocabulary build(std::span<const TextDialogue> train, std::size_t min_freq = kDefaultMinFreq);

  std::size_t size() const { return tokens_.size(); }
  // kUnkId for unknown tokens and for the reserved names themselves.
  TokenId id(std::string_view token) const;
  // True for retained (non-reserved) tokens.
  bool contains(std::string_view token) const;
  const std::string& token(TokenId id) const;
  std::size_t frequency(TokenId id) const;

  // "token<TAB>id<TAB>frequency" lines sorted by id.
  void write(std::ostream& out) const;
  static Vocabulary read(std::istream& in);
  std::string content_hash() const;

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_ && frequencies_ == other.frequencies_;
  }

 private:
  void add(std::string token, std::size_t frequency);

  std::vector<std::string> tokens_;
  std::vector<std::size_t> frequencies_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace emojirec::corpus
