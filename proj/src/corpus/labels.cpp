#include "emojirec/corpus/labels.hpp"

#include <set>
#include <sstream>

#include "emojirec/error.hpp"
#include "emojirec/hash.hpp"

namespace emojirec::corpus {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    require(!names_[k].empty(), ErrorKind::format, "label set: empty label name");
    const bool inserted = index_.emplace(names_[k], static_cast<LabelId>(k)).second;
    require(inserted, ErrorKind::format, "label set: duplicate label '" + names_[k] + "'");
  }
}

const std::string& LabelSet::name(LabelId id) const {
  require(id >= 0 && static_cast<std::size_t>(id) < names_.size(), ErrorKind::label,
          "label id " + std::to_string(id) + " out of range");
  return names_[static_cast<std::size_t>(id)];
}

std::optional<LabelId> LabelSet::find(std::string_view name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelId LabelSet::id(std::string_view name) const {
  const auto found = find(name);
  require(found.has_value(), ErrorKind::label, "unknown label '" + std::string(name) + "'");
  return *found;
}

void LabelSet::write(std::ostream& out) const {
  for (std::size_t k = 0; k < names_.size(); ++k) out << names_[k] << '\t' << k << '\n';
}

LabelSet LabelSet::read(std::istream& in) {
  std::vector<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    require(fields.size() == 2 && fields[1] == std::to_string(names.size()), ErrorKind::format,
            "label file line " + std::to_string(line_no) + ": expected 'name<TAB>" +
                std::to_string(names.size()) + "'");
    names.push_back(fields[0]);
  }
  require(names.size() >= 2, ErrorKind::format, "label file: need at least two labels");
  return LabelSet(std::move(names));
}

std::string LabelSet::content_hash() const {
  std::ostringstream out;
  write(out);
  return to_hex(fnv1a64(out.str()));
}

EmojiInventory::EmojiInventory(const std::vector<std::pair<std::string, std::string>>& surface_to_label)
    : entries_(surface_to_label) {
  std::vector<std::string> names;
  std::map<std::string, LabelId, std::less<>> by_name;
  for (const auto& [surface, label] : entries_) {
    require(!surface.empty() && !label.empty(), ErrorKind::format, "emoji inventory: empty field");
    auto it = by_name.find(label);
    if (it == by_name.end()) {
      it = by_name.emplace(label, static_cast<LabelId>(names.size())).first;
      names.push_back(label);
    }
    const bool inserted = surfaces_.emplace(surface, it->second).second;
    require(inserted, ErrorKind::format, "emoji inventory: duplicate surface '" + surface + "'");
  }
  require(names.size() >= 2, ErrorKind::format, "emoji inventory: need at least two labels");
  labels_ = LabelSet(std::move(names));
}

EmojiInventory EmojiInventory::read(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    require(fields.size() == 2, ErrorKind::format,
            "inventory line " + std::to_string(line_no) + ": expected 'surface<TAB>label_name'");
    entries.emplace_back(fields[0], fields[1]);
  }
  return EmojiInventory(entries);
}

void EmojiInventory::write(std::ostream& out) const {
  for (const auto& [surface, label] : entries_) out << surface << '\t' << label << '\n';
}

std::optional<LabelId> EmojiInventory::label_of(std::string_view surface) const {
  const auto it = surfaces_.find(surface);
  if (it == surfaces_.end()) return std::nullopt;
  return it->second;
}

Extraction extract_label(const RawDialogue& raw, const EmojiInventory& inventory) {
  std::size_t reply_index = 0;
  LabelId label = 0;

  if (raw.label) {
    const auto found = inventory.labels().find(*raw.label);
    if (!found) return RejectReason::unknown_label;
    if (raw.sentences.empty()) return RejectReason::empty;
    label = *found;
    reply_index = raw.sentences.size() - 1;
  } else {
    bool located = false;
    for (std::size_t s = 0; s < raw.sentences.size() && !located; ++s) {
      std::set<LabelId> present;
      for (const auto& tok : raw.sentences[s]) {
        if (const auto l = inventory.label_of(tok)) present.insert(*l);
      }
      if (present.empty()) continue;
      if (present.size() > 1) return RejectReason::multiple_labels;
      located = true;
      reply_index = s;
      label = *present.begin();
    }
    if (!located) return RejectReason::no_label;
  }

  TextDialogue out;
  out.label = label;
  for (std::size_t s = 0; s <= reply_index; ++s) {
    TokenList kept;
    for (const auto& tok : raw.sentences[s]) {
      if (!inventory.is_emoji(tok)) kept.push_back(tok);
    }
    // Context sentences that held only emojis vanish; the reply is kept even
    // when empty so the filter can report it.
    if (!kept.empty() || s == reply_index) out.sentences.push_back(std::move(kept));
  }
  return out;
}

}  // namespace emojirec::corpus
