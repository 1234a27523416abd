#include "strucbench/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

namespace strucbench {

namespace {

using ordered_json = nlohmann::ordered_json;

struct MetricField {
  const char* key;
  const char* label;
  std::optional<double> AggregateReport::*member;
};

constexpr MetricField kMetrics[] = {
    {"bleu", "BLEU", &AggregateReport::bleu},
    {"rouge_l", "ROUGE-L", &AggregateReport::rouge_l},
    {"content_hscore", "Content H-Score", &AggregateReport::content_hscore},
    {"format_hscore", "Format H-Score", &AggregateReport::format_hscore},
    {"content_gptscore", "Content GPTscore", &AggregateReport::content_gptscore},
    {"format_gptscore", "Format GPTscore", &AggregateReport::format_gptscore},
};

constexpr const char* kErrorLabels[] = {"Structure", "Structure naming", "Element",
                                        "Element format"};

std::array<std::size_t, 4> error_counts(const ErrorReport& e) {
  return {e.structure_errors, e.structure_naming_errors, e.element_errors,
          e.element_format_errors};
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string emit_json(const AggregateReport& r) {
  ordered_json doc;
  doc["item_count"] = r.item_count;
  doc["failure_count"] = r.failure_count;
  ordered_json metrics = ordered_json::object();
  for (const MetricField& m : kMetrics) {
    if (r.*m.member) metrics[m.key] = *(r.*m.member);
  }
  doc["metrics"] = metrics;
  ordered_json totals = ordered_json::object();
  ordered_json proportions = ordered_json::object();
  const auto counts = error_counts(r.error_totals);
  for (std::size_t k = 0; k < 4; ++k) {
    totals[kErrorTypes[k]] = counts[k];
    proportions[kErrorTypes[k]] = r.error_proportions[k];
  }
  doc["errors"] = {{"totals", totals}, {"proportions", proportions}};
  return doc.dump(2) + "\n";
}

std::string emit_csv(const AggregateReport& r) {
  std::ostringstream out;
  out << "section,name,value\n";
  out << "summary,item_count," << r.item_count << "\n";
  out << "summary,failure_count," << r.failure_count << "\n";
  for (const MetricField& m : kMetrics) {
    if (r.*m.member) out << "metric," << m.key << "," << fmt("%.17g", *(r.*m.member)) << "\n";
  }
  const auto counts = error_counts(r.error_totals);
  for (std::size_t k = 0; k < 4; ++k) out << "error_total," << kErrorTypes[k] << "," << counts[k] << "\n";
  for (std::size_t k = 0; k < 4; ++k) {
    out << "error_proportion," << kErrorTypes[k] << "," << fmt("%.17g", r.error_proportions[k])
        << "\n";
  }
  return out.str();
}

std::string emit_markdown(const AggregateReport& r) {
  std::ostringstream out;
  out << "# Evaluation report\n\n";
  out << "Items: " << r.item_count << ", failures: " << r.failure_count << "\n\n";
  out << "| Metric | Value |\n| --- | ---: |\n";
  for (const MetricField& m : kMetrics) {
    if (!(r.*m.member)) continue;
    const bool percent_scale = std::string_view(m.key) == "bleu";
    out << "| " << m.label << " | " << fmt(percent_scale ? "%.2f" : "%.4f", *(r.*m.member))
        << " |\n";
  }
  out << "\n## Errors\n\n";
  out << emit_error_table(r);
  return out.str();
}

std::size_t parse_count(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad count " + s);
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::invalid_argument("bad number " + s);
  return v;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown") return ReportFormat::kMarkdown;
  return std::nullopt;
}

const char* file_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return "json";
    case ReportFormat::kCsv:
      return "csv";
    case ReportFormat::kMarkdown:
      return "md";
  }
  return "txt";
}

std::string emit_report(const AggregateReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return emit_json(report);
    case ReportFormat::kCsv:
      return emit_csv(report);
    case ReportFormat::kMarkdown:
      return emit_markdown(report);
  }
  return {};
}

std::string emit_error_table(const AggregateReport& report) {
  std::ostringstream out;
  out << "| Error type | Count | Proportion |\n| --- | ---: | ---: |\n";
  const auto counts = error_counts(report.error_totals);
  for (std::size_t k = 0; k < 4; ++k) {
    out << "| " << kErrorLabels[k] << " | " << counts[k] << " | "
        << fmt("%.4f", report.error_proportions[k]) << " |\n";
  }
  out << "| Total | " << report.error_totals.total() << " | "
      << (report.error_totals.total() > 0 ? "1.0000" : "0.0000") << " |\n";
  return out.str();
}

AggregateReport parse_csv_report(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "section,name,value") {
    throw std::invalid_argument("missing CSV header");
  }
  AggregateReport r;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("bad CSV line: " + line);
    const std::string section = line.substr(0, c1);
    const std::string name = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string value = line.substr(c2 + 1);
    bool known = false;
    if (section == "summary") {
      if (name == "item_count") r.item_count = parse_count(value), known = true;
      if (name == "failure_count") r.failure_count = parse_count(value), known = true;
    } else if (section == "metric") {
      for (const MetricField& m : kMetrics) {
        if (name == m.key) r.*m.member = parse_real(value), known = true;
      }
    } else if (section == "error_total" || section == "error_proportion") {
      std::size_t* counts[] = {&r.error_totals.structure_errors,
                               &r.error_totals.structure_naming_errors,
                               &r.error_totals.element_errors,
                               &r.error_totals.element_format_errors};
      for (std::size_t k = 0; k < 4; ++k) {
        if (name != kErrorTypes[k]) continue;
        if (section == "error_total") {
          *counts[k] = parse_count(value);
        } else {
          r.error_proportions[k] = parse_real(value);
        }
        known = true;
      }
    }
    if (!known) throw std::invalid_argument("unknown CSV field: " + section + "," + name);
  }
  return r;
}

std::string emit_items_jsonl(std::span<const ItemResult> items) {
  std::string out;
  for (const ItemResult& r : items) {
    ordered_json doc;
    doc["id"] = r.id;
    doc["format"] = std::string(to_string(r.format));
    doc["failed"] = r.failed;
    doc["missing_prediction"] = r.missing_prediction;
    doc["content_hscore"] = r.score.content.value();
    doc["format_hscore"] = r.score.structure.value();
    ordered_json components = ordered_json::object();
    for (const auto& [name, value] : r.score.components) components[name] = value;
    doc["components"] = components;
    doc["bleu"] = r.bleu;
    doc["rouge_l"] = r.rouge_l;
    const auto counts = error_counts(r.errors);
    ordered_json errors = ordered_json::object();
    for (std::size_t k = 0; k < 4; ++k) errors[kErrorTypes[k]] = counts[k];
    doc["errors"] = errors;
    if (r.gptscore) {
      doc["gptscore"] = {{"content_similarity", r.gptscore->content_similarity},
                         {"structural_similarity", r.gptscore->structural_similarity},
                         {"partial", r.gptscore_partial}};
    }
    doc["diagnostics"] = r.score.diagnostics;
    for (const std::string& d : r.diagnostics) doc["diagnostics"].push_back(d);
    out += doc.dump();
    out += '\n';
  }
  return out;
}

}  // namespace strucbench
