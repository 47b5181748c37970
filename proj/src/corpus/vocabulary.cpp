#include "emojirec/corpus/vocabulary.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "emojirec/error.hpp"
#include "emojirec/hash.hpp"

namespace emojirec::corpus {

void Vocabulary::add(std::string token, std::size_t frequency) {
  const auto id = static_cast<TokenId>(tokens_.size());
  const bool inserted = index_.emplace(token, id).second;
  require(inserted, ErrorKind::format, "vocabulary: duplicate token '" + token + "'");
  tokens_.push_back(std::move(token));
  frequencies_.push_back(frequency);
}

Vocabulary Vocabulary::build(std::span<const TextDialogue> train, std::size_t min_freq) {
  require(!train.empty(), ErrorKind::data, "build_vocabulary: empty training corpus");
  require(min_freq >= 1, ErrorKind::config, "build_vocabulary: min_freq must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& d : train) {
    for (const auto& s : d.sentences) {
      for (const auto& tok : s) ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : counts) {
    if (n >= min_freq && tok != kPadToken && tok != kUnkToken) kept.emplace_back(tok, n);
  }
  // counts is already sorted by token, so a stable sort on frequency breaks
  // ties lexicographically.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  Vocabulary v;
  v.add(std::string(kPadToken), 0);
  v.add(std::string(kUnkToken), 0);
  for (auto& [tok, n] : kept) v.add(std::move(tok), n);
  return v;
}

TokenId Vocabulary::id(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() || it->second < kFirstWordId ? kUnkId : it->second;
}

bool Vocabulary::contains(std::string_view token) const { return id(token) != kUnkId; }

const std::string& Vocabulary::token(TokenId id) const {
  require(id >= 0 && static_cast<std::size_t>(id) < tokens_.size(), ErrorKind::data,
          "vocabulary: id " + std::to_string(id) + " out of range");
  return tokens_[static_cast<std::size_t>(id)];
}

std::size_t Vocabulary::frequency(TokenId id) const {
  token(id);
  return frequencies_[static_cast<std::size_t>(id)];
}

void Vocabulary::write(std::ostream& out) const {
  for (std::size_t k = 0; k < tokens_.size(); ++k) {
    out << tokens_[k] << '\t' << k << '\t' << frequencies_[k] << '\n';
  }
}

Vocabulary Vocabulary::read(std::istream& in) {
  Vocabulary v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    const std::string where = "vocabulary line " + std::to_string(line_no);
    require(t2 != std::string::npos && line.find('\t', t2 + 1) == std::string::npos,
            ErrorKind::format, where + ": expected 'token<TAB>id<TAB>frequency'");
    const std::string token = line.substr(0, t1);
    const std::string id = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string freq = line.substr(t2 + 1);
    require(id == std::to_string(v.size()), ErrorKind::format,
            where + ": ids must run 0, 1, 2, ... in order");
    std::size_t parsed = 0;
    std::size_t frequency = 0;
    try {
      frequency = std::stoull(freq, &parsed);
    } catch (const std::exception&) {
      parsed = 0;
    }
    require(!freq.empty() && parsed == freq.size(), ErrorKind::format, where + ": bad frequency");
    v.add(token, frequency);
  }
  require(v.size() >= 2 && v.tokens_[0] == kPadToken && v.tokens_[1] == kUnkToken,
          ErrorKind::format, "vocabulary: must start with <pad> and <unk>");
  return v;
}

std::string Vocabulary::content_hash() const {
  std::ostringstream out;
  write(out);
  return to_hex(fnv1a64(out.str()));
}

}  // namespace emojirec::corpus
