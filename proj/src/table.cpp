#include "strucbench/table.hpp"

#include <algorithm>
#include <utility>

namespace strucbench {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string_view to_string(Alignment alignment) {
  switch (alignment) {
    case Alignment::kLeft:
      return "left";
    case Alignment::kCenter:
      return "center";
    case Alignment::kRight:
      return "right";
    case Alignment::kUnspecified:
      break;
  }
  return "unspecified";
}

std::string_view to_string(TableFormat format) {
  switch (format) {
    case TableFormat::kRawText:
      return "raw_text";
    case TableFormat::kLatex:
      return "latex";
    case TableFormat::kHtml:
      break;
  }
  return "html";
}

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "raw_text") return TableFormat::kRawText;
  if (name == "latex") return TableFormat::kLatex;
  if (name == "html") return TableFormat::kHtml;
  return std::nullopt;
}

std::string normalize_cell(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

NormalizedTable NormalizedTable::create(TableDraft draft, PadMode mode,
                                        std::size_t* padded_cells) {
  NormalizedTable t;
  t.caption_ = normalize_cell(draft.caption);

  std::size_t width = draft.column_names.size();
  for (const Row& row : draft.cells) width = std::max(width, row.size());

  std::size_t padded = 0;
  auto fit = [&](Row& row, bool allow_empty) {
    if (allow_empty && row.empty()) return;
    if (row.size() < width) {
      if (mode == PadMode::kReject) {
        throw RaggedTableError("row has " + std::to_string(row.size()) + " cells, expected " +
                               std::to_string(width));
      }
      padded += width - row.size();
      row.resize(width);
    }
    for (std::string& cell : row) cell = normalize_cell(cell);
  };

  fit(draft.column_names, /*allow_empty=*/true);
  for (Row& row : draft.cells) fit(row, /*allow_empty=*/false);

  if (!draft.alignments.empty()) draft.alignments.resize(width, Alignment::kUnspecified);

  t.column_names_ = std::move(draft.column_names);
  t.cells_ = std::move(draft.cells);
  t.alignments_ = std::move(draft.alignments);
  // A header without data rows keeps its width but has no cells.
  t.cols_ = width;
  if (!t.column_names_.empty() && t.cols_ > 0) {
    t.row_names_.reserve(t.cells_.size());
    for (const Row& row : t.cells_) t.row_names_.push_back(row.front());
  }
  if (padded_cells != nullptr) *padded_cells = padded;
  return t;
}

TableShape table_shape(const NormalizedTable& table) {
  return TableShape{table.rows(), table.cols()};
}

}  // namespace strucbench
