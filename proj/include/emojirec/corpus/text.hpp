#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emojirec/dialogue.hpp"

namespace emojirec::corpus {

using TokenList = std::vector<std::string>;

// Pre-tokenized dialogue as read from disk. `label` is set only for input
// that is already labeled (no emoji extraction needed).
struct RawDialogue {
  std::vector<TokenList> sentences;
  std::optional<std::string> source;
  std::optional<std::string> label;

  bool operator==(const RawDialogue&) const = default;
};

// Labeled dialogue still in surface tokens; the last sentence is the reply.
struct TextDialogue {
  std::vector<TokenList> sentences;
  LabelId label = 0;

  bool operator==(const TextDialogue&) const = default;
};

enum class RejectReason {
  empty_after_cleaning,
  no_label,
  multiple_labels,
  unknown_label,
  too_long_sentence,
  too_many_oov,
  empty,
};

inline constexpr RejectReason kAllRejectReasons[] = {
    RejectReason::empty_after_cleaning, RejectReason::no_label,
    RejectReason::multiple_labels,      RejectReason::unknown_label,
    RejectReason::too_long_sentence,    RejectReason::too_many_oov,
    RejectReason::empty,
};

std::string_view to_string(RejectReason reason);

}  // namespace emojirec::corpus
