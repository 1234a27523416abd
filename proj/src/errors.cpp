#include "strucbench/errors.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "strucbench/alignment.hpp"

namespace strucbench {

ErrorReport& ErrorReport::operator+=(const ErrorReport& other) {
  structure_errors += other.structure_errors;
  structure_naming_errors += other.structure_naming_errors;
  element_errors += other.element_errors;
  element_format_errors += other.element_format_errors;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

std::string strip_leading_zeros(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? "0" : std::string(digits.substr(first));
}

// "m:ss" or "h:mm:ss" to a seconds count.
std::optional<std::string> clock_seconds(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = s.find(':', start);
    parts.push_back(s.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) return std::nullopt;
  unsigned long long total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!all_digits(parts[i]) || parts[i].size() > 6) return std::nullopt;
    if (i > 0 && parts[i].size() != 2) return std::nullopt;
    total = total * 60 + std::stoull(std::string(parts[i]));
  }
  return "t" + std::to_string(total);
}

}  // namespace

std::optional<std::string> canonical_number(std::string_view cell) {
  std::string s = normalize_cell(cell);
  if (s.find(':') != std::string::npos) return clock_seconds(s);
  if (!s.empty() && s.back() == '%') s.pop_back();
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.erase(s.begin());
  }
  // Thousands separators: commas between digits.
  std::string digits;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ',' && i > 0 && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
        std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      continue;
    }
    digits += s[i];
  }
  const auto dot = digits.find('.');
  std::string_view whole = std::string_view(digits).substr(0, dot);
  std::string_view frac =
      dot == std::string::npos ? std::string_view{} : std::string_view(digits).substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !all_digits(whole)) return std::nullopt;
  if (dot != std::string::npos && !frac.empty() && !all_digits(frac)) return std::nullopt;
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  std::string out = strip_leading_zeros(whole);
  if (!frac.empty()) out += "." + std::string(frac);
  if (negative && out != "0") out = "-" + out;
  return out;
}

ErrorReport classify_errors(std::span<const LabeledTable> pred, std::span<const LabeledTable> gold) {
  ErrorReport report;
  for (const TableSlot& slot : pair_tables(pred, gold)) {
    if (!slot.pred || !slot.gold) {
      ++report.structure_errors;
      continue;
    }
    const NormalizedTable& p = pred[*slot.pred].table;
    const NormalizedTable& g = gold[*slot.gold].table;
    const auto diff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
    report.structure_errors += diff(p.rows(), g.rows()) + diff(p.cols(), g.cols());

    const TableMatching m = match_tables(p, g);
    const bool both_headers = !p.column_names().empty() && !g.column_names().empty();
    if (p.column_names().empty() != g.column_names().empty()) ++report.structure_errors;

    // First columns aligned to each other hold row names, not data.
    bool name_column = false;
    if (both_headers) {
      for (const auto& [pc, gc] : m.cols) {
        if (p.column_names()[pc] != g.column_names()[gc]) ++report.structure_naming_errors;
        if (pc == 0 && gc == 0) name_column = true;
      }
    }
    for (const auto& [pr, gr] : m.rows) {
      for (const auto& [pc, gc] : m.cols) {
        const std::string& pv = p.cells()[pr][pc];
        const std::string& gv = g.cells()[gr][gc];
        if (pv == gv) continue;
        if (name_column && pc == 0) {
          ++report.structure_naming_errors;
          continue;
        }
        const auto pn = canonical_number(pv);
        const auto gn = canonical_number(gv);
        if (pn && gn && *pn == *gn) {
          ++report.element_format_errors;
        } else {
          ++report.element_errors;
        }
      }
    }
  }
  return report;
}

}  // namespace strucbench
