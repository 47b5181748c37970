#include "emojirec/corpus/cleaning.hpp"

#include <algorithm>

namespace emojirec::corpus {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::empty_after_cleaning: return "empty_after_cleaning";
    case RejectReason::no_label: return "no_label";
    case RejectReason::multiple_labels: return "multiple_labels";
    case RejectReason::unknown_label: return "unknown_label";
    case RejectReason::too_long_sentence: return "too_long_sentence";
    case RejectReason::too_many_oov: return "too_many_oov";
    case RejectReason::empty: return "empty";
  }
  return "?";
}

bool CleaningRules::matches(const std::string& token) const {
  if (std::find(drop_tokens.begin(), drop_tokens.end(), token) != drop_tokens.end()) return true;
  return std::any_of(drop_prefixes.begin(), drop_prefixes.end(), [&](const std::string& p) {
    return !p.empty() && token.compare(0, p.size(), p) == 0;
  });
}

std::optional<RawDialogue> clean_dialogue(const RawDialogue& raw, const CleaningRules& rules) {
  RawDialogue out;
  out.source = raw.source;
  out.label = raw.label;
  for (const auto& sentence : raw.sentences) {
    TokenList kept;
    std::copy_if(sentence.begin(), sentence.end(), std::back_inserter(kept),
                 [&](const std::string& t) { return !rules.matches(t); });
    if (!kept.empty()) out.sentences.push_back(std::move(kept));
  }
  if (out.sentences.empty()) return std::nullopt;
  return out;
}

}  // namespace emojirec::corpus
