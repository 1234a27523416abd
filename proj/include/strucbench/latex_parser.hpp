#ifndef STRUCBENCH_LATEX_PARSER_HPP
#define STRUCBENCH_LATEX_PARSER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strucbench/table.hpp"

namespace strucbench {

class NoTableFound : public std::runtime_error {
 public:
  NoTableFound() : std::runtime_error("no tabular environment found") {}
};

struct LatexTableSource {
  // Text between the column spec and \end{tabular}, rule commands removed.
  std::string tabular_body;
  std::string column_spec;
  std::optional<std::string> caption;
  bool has_hlines = false;
  std::vector<std::string> diagnostics;
};

// Locates the first tabular (tabular*, tabularx) environment with
// brace-aware scanning. The caption is the \caption closest to the tabular
// inside the enclosing table environment, or anywhere in `src` when there is
// none. Throws NoTableFound.
LatexTableSource extract_latex_table(std::string_view src);

// Rows split on top-level \\ and cells on top-level &. Formatting commands
// are replaced by their argument text, \multicolumn{n}{..}{x} becomes x
// followed by n-1 empty cells. Warnings go to `diagnostics` when given.
NormalizedTable parse_latex_table(const LatexTableSource& source,
                                  std::vector<std::string>* diagnostics = nullptr);

// Maps l/c/r to alignments in order, honouring *{n}{...} repeats. Other
// column types (p{}, m{}, X, S, ...) become kLeft with a diagnostic.
std::vector<Alignment> parse_column_spec(std::string_view spec,
                                         std::vector<std::string>* diagnostics = nullptr);

// Plain text of a LaTeX fragment: escapes resolved, commands dropped with
// their brace arguments kept (except for a few non-content arguments such as
// colours and lengths), braces and math shifts removed. Not normalized.
std::string latex_to_text(std::string_view fragment,
                          std::vector<std::string>* diagnostics = nullptr);

struct LatexRenderOptions {
  bool hlines = true;
  bool table_environment = true;
};

// Emits a tabular for `table`. Column names, when present, become the first
// row. Special characters in cells are escaped.
std::string render_latex_table(const NormalizedTable& table, const LatexRenderOptions& options = {});

}  // namespace strucbench

#endif  // STRUCBENCH_LATEX_PARSER_HPP
