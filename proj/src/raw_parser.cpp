#include "strucbench/raw_parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

namespace strucbench {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

std::optional<std::string_view> label_of(std::string_view line) {
  const std::string_view t = trim(line);
  if (t.find('|') != std::string_view::npos) return std::nullopt;
  if (starts_with_icase(t, "team")) return kTeamLabel;
  if (starts_with_icase(t, "player")) return kPlayerLabel;
  return std::nullopt;
}

// "---", ":--:", "-:" and similar markdown header rules.
bool is_separator_row(const Row& row) {
  if (row.empty()) return false;
  for (const std::string& cell : row) {
    if (cell.empty()) return false;
    std::string_view body = cell;
    if (body.front() == ':') body.remove_prefix(1);
    if (!body.empty() && body.back() == ':') body.remove_suffix(1);
    if (body.empty()) return false;
    if (body.find_first_not_of('-') != std::string_view::npos) return false;
  }
  return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

struct Region {
  std::string label;
  std::vector<std::string_view> lines;
};

}  // namespace

Row split_raw_row(std::string_view line) {
  const std::string_view t = trim(line);
  Row cells;
  std::size_t start = 0;
  while (true) {
    const auto bar = t.find('|', start);
    cells.push_back(normalize_cell(t.substr(start, bar == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (!t.empty() && t.back() == '|' && cells.size() > 1) cells.pop_back();
  if (!t.empty() && t.front() == '|' && cells.size() > 1) cells.erase(cells.begin());
  return cells;
}

RawParseResult parse_raw_tables(std::string_view text) {
  RawParseResult result;
  const std::vector<std::string_view> lines = split_lines(text);

  std::vector<Region> regions;
  std::optional<Region> open;
  auto close = [&] {
    if (open && !open->lines.empty()) {
      regions.push_back(std::move(*open));
    } else if (open && open->label != kUnlabeled) {
      result.diagnostics.push_back("empty table region under label \"" + open->label + "\"");
    }
    open.reset();
  };

  for (std::string_view line : lines) {
    const bool blank = trim(line).empty();
    if (const auto label = label_of(line)) {
      close();
      open = Region{std::string(*label), {}};
      continue;
    }
    if (blank) {
      // Blank lines between a label and its first row are tolerated.
      if (open && open->label != kUnlabeled && open->lines.empty()) continue;
      close();
      continue;
    }
    if (!open) {
      if (line.find('|') == std::string_view::npos) continue;  // prose
      open = Region{std::string(kUnlabeled), {}};
    } else if (open->label == kUnlabeled && line.find('|') == std::string_view::npos) {
      close();
      continue;
    }
    open->lines.push_back(line);
  }
  close();

  bool seen_team = false;
  bool seen_player = false;
  for (Region& region : regions) {
    Grid rows;
    for (std::string_view line : region.lines) {
      Row row = split_raw_row(line);
      if (!is_separator_row(row)) rows.push_back(std::move(row));
    }
    if (rows.size() < 2) {
      result.diagnostics.push_back("table \"" + region.label + "\" has no data rows; dropped");
      continue;
    }

    std::string label = region.label;
    bool& seen = label == kTeamLabel ? seen_team : seen_player;
    if (label != kUnlabeled) {
      if (seen) {
        result.diagnostics.push_back("duplicate \"" + label + "\" table kept as Unlabeled");
        label = std::string(kUnlabeled);
      } else {
        seen = true;
      }
    }

    TableDraft draft;
    draft.column_names = std::move(rows.front());
    draft.cells.assign(std::make_move_iterator(rows.begin() + 1),
                       std::make_move_iterator(rows.end()));
    std::size_t padded = 0;
    NormalizedTable table = NormalizedTable::create(std::move(draft), PadMode::kPad, &padded);
    if (padded > 0) {
      result.diagnostics.push_back("table \"" + label + "\": padded " + std::to_string(padded) +
                                   " missing cells");
    }
    result.tables.push_back(LabeledTable{std::move(label), std::move(table)});
  }

  if (result.tables.empty()) result.diagnostics.push_back("no tables found");
  return result;
}

std::string render_raw_tables(const std::vector<LabeledTable>& tables) {
  std::string out;
  auto emit_row = [&out](const Row& row, std::size_t width) {
    out += '|';
    for (std::size_t c = 0; c < width; ++c) {
      out += ' ';
      if (c < row.size()) out += row[c];
      out += " |";
    }
    out += '\n';
  };
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const LabeledTable& lt = tables[i];
    if (i > 0) out += '\n';
    if (lt.label != kUnlabeled) out += lt.label + ":\n";
    const std::size_t width = std::max<std::size_t>(lt.table.cols(), 1);
    emit_row(lt.table.column_names(), width);
    for (const Row& row : lt.table.cells()) emit_row(row, width);
  }
  return out;
}

}  // namespace strucbench
