#pragma once

#include <string>
#include <utility>
#include <vector>

#include "emojirec/corpus/labels.hpp"
#include "emojirec/eval/metrics.hpp"

namespace emojirec::eval {

// Fraction -> percentage rounded to one decimal (0.3541 -> 35.4).
double to_percent(double fraction);
std::string format_percent(double fraction);

// {"n", "p_at_1", "p_at_3", "mrr", "per_class_p1", "confusion"} in that order,
// metrics as percentages with one decimal. Ends with a newline.
std::string report_to_json(const EvalReport& report, const corpus::LabelSet& labels);

// Tab-separated per-class P@1 table: header "emoji<TAB>name1<TAB>..." then one
// row per label. Classes without test examples show "-".
std::string per_class_table(const std::vector<std::pair<std::string, EvalReport>>& columns,
                            const corpus::LabelSet& labels);

}  // namespace emojirec::eval
