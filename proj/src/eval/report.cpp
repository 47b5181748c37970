#include "emojirec/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "emojirec/error.hpp"

namespace emojirec::eval {

double to_percent(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", to_percent(fraction));
  return buf;
}

std::string report_to_json(const EvalReport& report, const corpus::LabelSet& labels) {
  require(report.per_class_p1.size() == labels.size(), ErrorKind::shape,
          "report: label set does not match report classes");
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["p_at_1"] = to_percent(report.p_at_1);
  j["p_at_3"] = to_percent(report.p_at_3);
  j["mrr"] = to_percent(report.mrr);
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const auto& v = report.per_class_p1[c];
    per_class[labels.name(static_cast<LabelId>(c))] =
        v ? nlohmann::ordered_json(to_percent(*v)) : nlohmann::ordered_json(nullptr);
  }
  j["per_class_p1"] = per_class;
  j["confusion"] = report.confusion;
  return j.dump(2) + "\n";
}

std::string per_class_table(const std::vector<std::pair<std::string, EvalReport>>& columns,
                            const corpus::LabelSet& labels) {
  std::ostringstream out;
  out << "emoji";
  for (const auto& [name, r] : columns) {
    require(r.per_class_p1.size() == labels.size(), ErrorKind::shape,
            "per-class table: report for " + name + " has the wrong class count");
    out << '\t' << name;
  }
  out << '\n';
  for (std::size_t c = 0; c < labels.size(); ++c) {
    out << labels.name(static_cast<LabelId>(c));
    for (const auto& [name, r] : columns) {
      const auto& v = r.per_class_p1[c];
      out << '\t' << (v ? format_percent(*v) : std::string("-"));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace emojirec::eval
