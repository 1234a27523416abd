#ifndef STRUCBENCH_ERRORS_HPP
#define STRUCBENCH_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "strucbench/table.hpp"

namespace strucbench {

// Error counts between a prediction and the gold tables.
struct ErrorReport {
  std::size_t structure_errors = 0;         // excess or missing rows/columns/tables
  std::size_t structure_naming_errors = 0;  // differing row or column names
  std::size_t element_errors = 0;           // wrong or missing cell values
  std::size_t element_format_errors = 0;    // same value, different surface form

  std::size_t total() const {
    return structure_errors + structure_naming_errors + element_errors + element_format_errors;
  }
  ErrorReport& operator+=(const ErrorReport& other);
  friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

// Canonical form of a numeric cell, or nullopt when the cell is not numeric.
// Drops a trailing '%', a leading '+', thousands separators, leading zeros
// and trailing fractional zeros; "m:ss" and "h:mm:ss" become seconds.
// "50.0%" and "50" both map to "50".
std::optional<std::string> canonical_number(std::string_view cell);

// Tables are paired and aligned as for content_score. Per pair:
// |Rp - Rg| + |Cp - Cg| structure errors (plus one per unpaired table or
// one-sided header row), one naming error per aligned column-name or
// row-name pair that differs, and per aligned data cell either nothing
// (equal), an element format error (equal canonical numbers) or an element
// error.
ErrorReport classify_errors(std::span<const LabeledTable> pred, std::span<const LabeledTable> gold);

}  // namespace strucbench

#endif  // STRUCBENCH_ERRORS_HPP
