#include "emojirec/corpus/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "emojirec/error.hpp"

namespace emojirec::corpus {

using nlohmann::json;

RawDialogue parse_raw_line(const std::string& line, const std::string& where) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::format, where + ": malformed JSON at byte " + std::to_string(e.byte));
  }
  require(j.is_object(), ErrorKind::format, where + ": expected a JSON object");
  require(j.contains("sentences") && j["sentences"].is_array(), ErrorKind::format,
          where + ": missing \"sentences\" array");
  require(!j["sentences"].empty(), ErrorKind::format, where + ": a dialogue needs at least one sentence");
  RawDialogue d;
  for (const auto& s : j["sentences"]) {
    require(s.is_array(), ErrorKind::format, where + ": each sentence must be an array of tokens");
    TokenList tokens;
    for (const auto& t : s) {
      require(t.is_string(), ErrorKind::format, where + ": tokens must be strings");
      auto tok = t.get<std::string>();
      require(!tok.empty() && tok.find_first_of(" \t\n\r") == std::string::npos, ErrorKind::format,
              where + ": tokens must be nonempty and whitespace-free");
      tokens.push_back(std::move(tok));
    }
    d.sentences.push_back(std::move(tokens));
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "sentences") continue;
    require(value.is_string(), ErrorKind::format, where + ": field \"" + key + "\" must be a string");
    if (key == "label") {
      d.label = value.get<std::string>();
    } else if (key == "source") {
      d.source = value.get<std::string>();
    } else {
      fail(ErrorKind::format, where + ": unknown field \"" + key + "\"");
    }
  }
  return d;
}

std::vector<RawDialogue> read_raw_corpus(std::istream& in, const std::string& name) {
  std::vector<RawDialogue> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_raw_line(line, name + ":" + std::to_string(line_no)));
  }
  return out;
}

void write_raw_dialogue(std::ostream& out, const RawDialogue& d) {
  json j;
  j["sentences"] = d.sentences;
  if (d.label) j["label"] = *d.label;
  if (d.source) j["source"] = *d.source;
  out << j.dump() << '\n';
}

std::vector<TextDialogue> read_labeled_corpus(std::istream& in, const LabelSet& labels,
                                              const std::string& name) {
  std::vector<TextDialogue> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    auto raw = parse_raw_line(line, where);
    require(raw.label.has_value(), ErrorKind::format, where + ": missing \"label\"");
    require(!raw.sentences.empty(), ErrorKind::format, where + ": dialogue has no sentences");
    const auto id = labels.find(*raw.label);
    require(id.has_value(), ErrorKind::label, where + ": unknown label '" + *raw.label + "'");
    out.push_back(TextDialogue{std::move(raw.sentences), *id});
  }
  return out;
}

void write_labeled_dialogue(std::ostream& out, const TextDialogue& d, const LabelSet& labels) {
  json j;
  j["label"] = labels.name(d.label);
  j["sentences"] = d.sentences;
  out << j.dump() << '\n';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out << contents;
  require(static_cast<bool>(out), ErrorKind::io, "failed writing '" + path.string() + "'");
}

}  // namespace emojirec::corpus
