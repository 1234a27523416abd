#ifndef STRUCBENCH_REPORT_HPP
#define STRUCBENCH_REPORT_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "strucbench/corpus.hpp"
#include "strucbench/evaluate.hpp"

namespace strucbench {

enum class ReportFormat { kJson, kCsv, kMarkdown };

std::optional<ReportFormat> parse_report_format(std::string_view name);
const char* file_extension(ReportFormat format);

// Deterministic rendering of an aggregate. Absent metrics are left out.
std::string emit_report(const AggregateReport& report, ReportFormat format);

// Inverse of emit_report(..., kCsv). Throws std::invalid_argument.
AggregateReport parse_csv_report(std::string_view csv);

// One JSON object per line, corpus order.
std::string emit_items_jsonl(std::span<const ItemResult> items);

// Error-type table (markdown) for the `errors` subcommand.
std::string emit_error_table(const AggregateReport& report);

// Radar chart over kAbilityAxes, one closed polygon per model. Throws
// OutOfRange for scores outside [0, 10] and std::invalid_argument when
// `annotations` is empty.
std::string emit_ability_map(std::span<const AbilityAnnotation> annotations);

}  // namespace strucbench

#endif  // STRUCBENCH_REPORT_HPP
