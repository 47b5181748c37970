#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "emojirec/corpus/text.hpp"

namespace emojirec::corpus {

// Bijective emoji-name <-> id map.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(LabelId id) const;
  std::optional<LabelId> find(std::string_view name) const;
  LabelId id(std::string_view name) const;  // throws label error if absent
  const std::vector<std::string>& names() const { return names_; }

  // "name<TAB>id" lines in id order.
  void write(std::ostream& out) const;
  static LabelSet read(std::istream& in);
  std::string content_hash() const;

  bool operator==(const LabelSet&) const = default;

 private:
  std::vector<std::string> names_;
  std::map<std::string, LabelId, std::less<>> index_;
};

// Surface forms of the selected emojis, each mapped to a label. Label ids
// follow the order in which label names first appear.
class EmojiInventory {
 public:
  EmojiInventory() = default;
  EmojiInventory(const std::vector<std::pair<std::string, std::string>>& surface_to_label);

  // "surface<TAB>label_name" lines; blank lines are skipped.
  static EmojiInventory read(std::istream& in);
  void write(std::ostream& out) const;

  const LabelSet& labels() const { return labels_; }
  std::optional<LabelId> label_of(std::string_view surface) const;
  bool is_emoji(std::string_view token) const { return label_of(token).has_value(); }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, LabelId, std::less<>> surfaces_;
  LabelSet labels_;
};

using Extraction = std::variant<TextDialogue, RejectReason>;

// Picks the first sentence holding a selected emoji as the reply, drops
// everything after it and strips every emoji token. Rejects when no sentence
// holds an emoji or the reply holds more than one distinct labeled emoji.
// Already-labeled input keeps its last sentence as the reply.
Extraction extract_label(const RawDialogue& raw, const EmojiInventory& inventory);

}  // namespace emojirec::corpus
