#ifndef STRUCBENCH_RAW_PARSER_HPP
#define STRUCBENCH_RAW_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "strucbench/table.hpp"

namespace strucbench {

inline constexpr std::string_view kTeamLabel = "Team";
inline constexpr std::string_view kPlayerLabel = "Player";
inline constexpr std::string_view kUnlabeled = "Unlabeled";

struct RawParseResult {
  // Source order; at most one "Team" and one "Player" table.
  std::vector<LabeledTable> tables;
  std::vector<std::string> diagnostics;
};

// Finds pipe-delimited tables in free text. A line that starts with "Team" or
// "Player" (any case) and has no pipe opens a labeled region that runs to the
// next blank line, label line, or end of input; other runs of piped lines
// become "Unlabeled" tables. The first row of a region is its header.
RawParseResult parse_raw_tables(std::string_view text);

// Splits one table row on '|'. Empty cells created by a leading or trailing
// boundary pipe are dropped.
Row split_raw_row(std::string_view line);

// Renders tables in the layout parse_raw_tables reads: label line, header
// row, data rows, all with boundary pipes, blank line between tables.
std::string render_raw_tables(const std::vector<LabeledTable>& tables);

}  // namespace strucbench

#endif  // STRUCBENCH_RAW_PARSER_HPP
