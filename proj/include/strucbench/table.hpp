#ifndef STRUCBENCH_TABLE_HPP
#define STRUCBENCH_TABLE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strucbench {

enum class Alignment { kLeft, kCenter, kRight, kUnspecified };

enum class TableFormat { kRawText, kLatex, kHtml };

std::string_view to_string(Alignment alignment);
std::string_view to_string(TableFormat format);

// Accepts the wire names "raw_text", "latex" and "html".
std::optional<TableFormat> parse_table_format(std::string_view name);

// Strips leading/trailing whitespace and collapses internal whitespace runs
// to a single space.
std::string normalize_cell(std::string_view text);

using Row = std::vector<std::string>;
using Grid = std::vector<Row>;

enum class PadMode { kReject, kPad };

class RaggedTableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unvalidated input to NormalizedTable::create.
struct TableDraft {
  std::string caption;
  Row column_names;
  Grid cells;
  std::vector<Alignment> alignments;
};

// Format-agnostic table: a rectangular grid of normalized cell strings plus
// header names, caption and per-column alignment. Immutable once built.
class NormalizedTable {
 public:
  NormalizedTable() = default;

  // Normalizes every string in `draft` and enforces rectangularity. The
  // column count is the widest of the header and the data rows. In kReject
  // mode a short row or header throws RaggedTableError; in kPad mode they
  // are padded with empty strings and `padded_cells` (when given) receives
  // the number of cells added. Alignments are padded with kUnspecified or
  // truncated to the column count; empty alignments stay empty.
  static NormalizedTable create(TableDraft draft, PadMode mode = PadMode::kReject,
                                std::size_t* padded_cells = nullptr);

  const std::string& caption() const { return caption_; }
  const Row& column_names() const { return column_names_; }
  // First-column cells when the table has a header row, else empty.
  const Row& row_names() const { return row_names_; }
  const Grid& cells() const { return cells_; }
  const std::vector<Alignment>& alignments() const { return alignments_; }

  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t cell_count() const { return rows() * cols(); }
  bool empty() const { return cell_count() == 0; }

  friend bool operator==(const NormalizedTable&, const NormalizedTable&) = default;

 private:
  std::string caption_;
  Row column_names_;
  Row row_names_;
  Grid cells_;
  std::vector<Alignment> alignments_;
  std::size_t cols_ = 0;
};

struct TableShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  friend bool operator==(const TableShape&, const TableShape&) = default;
};

TableShape table_shape(const NormalizedTable& table);

// A table tagged with the label it was found under ("Team", "Player",
// "Unlabeled" for raw text; empty for LaTeX and HTML). Tables with equal
// labels are paired in source order when two lists are compared.
struct LabeledTable {
  std::string label;
  NormalizedTable table;
};

}  // namespace strucbench

#endif  // STRUCBENCH_TABLE_HPP
