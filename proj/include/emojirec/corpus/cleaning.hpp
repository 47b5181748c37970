#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emojirec/corpus/text.hpp"

namespace emojirec::corpus {

// Token patterns for user names, quotes and repost markers. A token is
// dropped if it equals one of `drop_tokens` or starts with one of
// `drop_prefixes`.
struct CleaningRules {
  std::vector<std::string> drop_prefixes{"@", "//@", "//"};
  std::vector<std::string> drop_tokens{"RT", "转发微博", "Repost", "回复"};

  bool matches(const std::string& token) const;
};

// Removes matching tokens and the sentences they leave empty. Returns
// nullopt when nothing is left.
std::optional<RawDialogue> clean_dialogue(const RawDialogue& raw, const CleaningRules& rules);

}  // namespace emojirec::corpus
