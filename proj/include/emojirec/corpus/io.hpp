#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "emojirec/corpus/labels.hpp"
#include "emojirec/corpus/text.hpp"

namespace emojirec::corpus {

// One JSON object per line: {"sentences": [[tok, ...], ...]} with an optional
// "label" (emoji name) and optional "source".
RawDialogue parse_raw_line(const std::string& line, const std::string& where);
std::vector<RawDialogue> read_raw_corpus(std::istream& in, const std::string& name);
void write_raw_dialogue(std::ostream& out, const RawDialogue& d);

std::vector<TextDialogue> read_labeled_corpus(std::istream& in, const LabelSet& labels,
                                              const std::string& name);
void write_labeled_dialogue(std::ostream& out, const TextDialogue& d, const LabelSet& labels);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace emojirec::corpus
