#include "strucbench/latex_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <utility>

namespace strucbench {

namespace {

constexpr std::size_t npos = std::string_view::npos;

// Non-content arguments dropped together with the command.
const std::map<std::string_view, int, std::less<>> kDroppedArgs = {
    {"addlinespace", 0}, {"bottomrule", 0}, {"cellcolor", 1},   {"cline", 1},
    {"cmidrule", 1},     {"color", 1},      {"colorbox", 1},    {"columncolor", 1},
    {"hhline", 1},       {"hline", 0},      {"hspace", 1},      {"includegraphics", 1},
    {"midrule", 0},      {"multicolumn", 2}, {"multirow", 2},   {"renewcommand", 2},
    {"resizebox", 2},    {"rowcolor", 1},   {"rule", 2},        {"scalebox", 1},
    {"setlength", 2},    {"textcolor", 1},  {"toprule", 0},     {"vspace", 1},
};

const std::map<std::string_view, std::string_view, std::less<>> kSymbols = {
    {"textbackslash", "\\"}, {"textasciitilde", "~"}, {"textasciicircum", "^"},
    {"textbar", "|"},        {"textless", "<"},       {"textgreater", ">"},
    {"ldots", "..."},        {"dots", "..."},         {"textendash", "-"},
    {"textemdash", "-"},     {"quad", " "},           {"qquad", " "},
};

bool is_rule_command(std::string_view name) {
  return name == "hline" || name == "toprule" || name == "midrule" || name == "bottomrule" ||
         name == "cline" || name == "cmidrule" || name == "hhline";
}

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::size_t skip_ws(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

// Index of the '}' closing the '{' at `open`, or npos.
std::size_t match_group(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\\') {
      ++i;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return npos;
}

// Position after a `[...]` (or `(...)` when `open` is '(') starting at `pos`,
// or `pos` when there is none.
std::size_t skip_optional(std::string_view s, std::size_t pos, char open = '[') {
  const char close = open == '[' ? ']' : ')';
  const std::size_t p = skip_ws(s, pos);
  if (p >= s.size() || s[p] != open) return pos;
  int depth = 0;
  for (std::size_t i = p + 1; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}') --depth;
    if (depth == 0 && s[i] == close) return i + 1;
  }
  return pos;
}

// Reads a control word or control symbol starting at the backslash `pos`.
// Returns the name and sets `end` past it.
std::string_view read_command(std::string_view s, std::size_t pos, std::size_t& end) {
  std::size_t i = pos + 1;
  if (i >= s.size()) {
    end = i;
    return {};
  }
  if (!is_letter(s[i])) {
    end = i + 1;
    return s.substr(i, 1);
  }
  while (i < s.size() && is_letter(s[i])) ++i;
  end = i;
  return s.substr(pos + 1, i - pos - 1);
}

// Skips one mandatory argument: a brace group or a single token. Returns the
// position after it; `ok` turns false on an unbalanced group.
std::size_t skip_argument(std::string_view s, std::size_t pos, bool& ok,
                          std::string_view* content = nullptr) {
  std::size_t p = skip_ws(s, pos);
  if (p >= s.size()) return p;
  if (s[p] == '{') {
    const std::size_t close = match_group(s, p);
    if (close == npos) {
      ok = false;
      return s.size();
    }
    if (content) *content = s.substr(p + 1, close - p - 1);
    return close + 1;
  }
  if (s[p] == '\\') {
    std::size_t end = p;
    read_command(s, p, end);
    if (content) *content = s.substr(p, end - p);
    return end;
  }
  if (content) *content = s.substr(p, 1);
  return p + 1;
}

void note(std::vector<std::string>* diagnostics, std::string message) {
  if (diagnostics) diagnostics->push_back(std::move(message));
}

std::string strip_comments(std::string_view src) {
  std::string out;
  out.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '\\' && i + 1 < src.size()) {
      out += src[i];
      out += src[++i];
      continue;
    }
    if (src[i] == '%') {
      while (i < src.size() && src[i] != '\n') ++i;
      if (i < src.size()) out += '\n';
      continue;
    }
    out += src[i];
  }
  return out;
}

std::string remove_rule_commands(std::string_view body) {
  std::string out;
  out.reserve(body.size());
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '\\') {
      out += body[i++];
      continue;
    }
    std::size_t end = i;
    const std::string_view name = read_command(body, i, end);
    if (!is_rule_command(name)) {
      out.append(body.substr(i, end - i));
      i = end;
      continue;
    }
    i = skip_optional(body, end);
    if (name == "cmidrule") i = skip_optional(body, i, '(');
    if (name == "cline" || name == "cmidrule" || name == "hhline") {
      bool ok = true;
      i = skip_argument(body, i, ok);
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

struct Environment {
  std::size_t begin = npos;  // at "\begin"
  std::size_t content = npos;
  std::size_t end = npos;    // at "\end", or src.size() when unterminated
  std::size_t after = npos;  // past "\end{...}"
  std::string name;
};

bool is_tabular_name(std::string_view name) {
  return name == "tabular" || name == "tabular*" || name == "tabularx";
}

// Finds "\begin{name}" where pred(name) holds, starting at `from`.
template <typename Pred>
std::size_t find_begin(std::string_view s, std::size_t from, Pred pred, std::string* name) {
  for (std::size_t pos = s.find("\\begin", from); pos != npos; pos = s.find("\\begin", pos + 1)) {
    const std::size_t p = skip_ws(s, pos + 6);
    if (p >= s.size() || s[p] != '{') continue;
    const std::size_t close = s.find('}', p);
    if (close == npos) continue;
    const std::string_view env = trim(s.substr(p + 1, close - p - 1));
    if (pred(env)) {
      if (name) *name = std::string(env);
      return pos;
    }
  }
  return npos;
}

// End of the environment opened at `content`, counting nested environments
// accepted by `pred`.
template <typename Pred>
void find_end(std::string_view s, Environment& env, Pred pred) {
  int depth = 1;
  std::size_t pos = env.content;
  while (pos < s.size()) {
    const std::size_t b = s.find("\\begin", pos);
    const std::size_t e = s.find("\\end", pos);
    if (e == npos) break;
    const bool begin_first = b != npos && b < e;
    const std::size_t at = begin_first ? b : e;
    const std::size_t p = skip_ws(s, at + (begin_first ? 6 : 4));
    std::size_t next = at + 1;
    if (p < s.size() && s[p] == '{') {
      const std::size_t close = s.find('}', p);
      if (close != npos) {
        next = close + 1;
        if (pred(trim(s.substr(p + 1, close - p - 1)))) {
          depth += begin_first ? 1 : -1;
          if (depth == 0) {
            env.end = at;
            env.after = close + 1;
            return;
          }
        }
      }
    }
    pos = next;
  }
  env.end = s.size();
  env.after = s.size();
}

std::optional<std::string> find_caption(std::string_view s, std::size_t lo, std::size_t hi,
                                        std::size_t anchor) {
  std::optional<std::string> best;
  std::size_t best_distance = npos;
  for (std::size_t pos = s.find("\\caption", lo); pos != npos && pos < hi;
       pos = s.find("\\caption", pos + 1)) {
    std::size_t end = pos;
    if (read_command(s, pos, end) != "caption") continue;
    std::size_t p = skip_optional(s, end);
    p = skip_ws(s, p);
    if (p >= s.size() || s[p] != '{') continue;
    const std::size_t close = match_group(s, p);
    if (close == npos) continue;
    const std::size_t distance = pos > anchor ? pos - anchor : anchor - pos;
    if (distance < best_distance) {
      best_distance = distance;
      best = normalize_cell(latex_to_text(s.substr(p + 1, close - p - 1)));
    }
  }
  return best;
}

bool braces_balanced(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == '{') {
      ++depth;
    } else if (s[i] == '}') {
      if (--depth < 0) return false;
    }
  }
  return depth == 0;
}

// Splits a tabular body into raw cell strings.
std::vector<std::vector<std::string>> split_body(std::string_view body, bool use_braces) {
  std::vector<std::vector<std::string>> rows(1);
  rows.back().emplace_back();
  int depth = 0;
  std::size_t i = 0;
  auto new_row = [&] {
    rows.emplace_back();
    rows.back().emplace_back();
  };
  while (i < body.size()) {
    const char c = body[i];
    if (c == '\\') {
      if (i + 1 < body.size() && body[i + 1] == '\\' && depth == 0) {
        i += 2;
        if (i < body.size() && body[i] == '*') ++i;
        i = skip_optional(body, i);
        new_row();
        continue;
      }
      std::size_t end = i;
      const std::string_view name = read_command(body, i, end);
      if (name == "tabularnewline" && depth == 0) {
        i = skip_optional(body, end);
        new_row();
        continue;
      }
      rows.back().back().append(body.substr(i, end - i));
      i = end;
      continue;
    }
    if (use_braces && c == '{') ++depth;
    if (use_braces && c == '}' && depth > 0) --depth;
    if (c == '&' && depth == 0) {
      rows.back().emplace_back();
      ++i;
      continue;
    }
    rows.back().back() += c;
    ++i;
  }
  return rows;
}

// Expands a cell that starts with \multicolumn into its cells.
bool expand_multicolumn(std::string_view cell, Row& out, std::vector<std::string>* diagnostics) {
  const std::string_view t = trim(cell);
  if (t.rfind("\\multicolumn", 0) != 0) return false;
  std::size_t end = 0;
  if (read_command(t, 0, end) != "multicolumn") return false;

  bool ok = true;
  std::string_view count_text;
  std::string_view content;
  std::size_t p = skip_argument(t, end, ok, &count_text);
  p = skip_argument(t, p, ok);
  p = skip_argument(t, p, ok, &content);
  if (!ok) {
    note(diagnostics, "unbalanced braces in \\multicolumn; kept as text");
    return false;
  }
  long span = std::strtol(std::string(trim(count_text)).c_str(), nullptr, 10);
  if (span < 1 || span > 64) {
    note(diagnostics, "invalid \\multicolumn span \"" + std::string(count_text) + "\"");
    span = 1;
  }
  std::string text = latex_to_text(content, diagnostics);
  text += latex_to_text(t.substr(p), diagnostics);
  out.push_back(std::move(text));
  for (long k = 1; k < span; ++k) out.emplace_back();
  return true;
}

std::string escape_latex(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
      case '%':
      case '$':
      case '#':
      case '_':
      case '{':
      case '}':
        out += '\\';
        out += c;
        break;
      case '\\':
        out += "\\textbackslash{}";
        break;
      case '~':
        out += "\\textasciitilde{}";
        break;
      case '^':
        out += "\\textasciicircum{}";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string latex_to_text(std::string_view s, std::vector<std::string>* diagnostics) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '{' || c == '}' || c == '$') {
      ++i;
      continue;
    }
    if (c == '~') {
      out += ' ';
      ++i;
      continue;
    }
    if (c != '\\') {
      out += c;
      ++i;
      continue;
    }

    std::size_t end = i;
    const std::string_view name = read_command(s, i, end);
    if (name.empty()) {
      i = end;
      continue;
    }
    if (!is_letter(name.front())) {
      // Control symbol.
      if (std::string_view("&%$#_{}").find(name.front()) != npos) {
        out += name.front();
      } else if (name == "\\" || name == " " || name == "," || name == ";" || name == ":" ||
                 name == "!") {
        out += ' ';
      }
      i = end;
      continue;
    }
    if (const auto sym = kSymbols.find(name); sym != kSymbols.end()) {
      out += sym->second;
      i = end;
      if (i < s.size() && s[i] == '{' && i + 1 < s.size() && s[i + 1] == '}') i += 2;
      continue;
    }
    i = skip_optional(s, end);
    if (const auto dropped = kDroppedArgs.find(name); dropped != kDroppedArgs.end()) {
      if (name == "cmidrule") i = skip_optional(s, i, '(');
      bool ok = true;
      for (int k = 0; k < dropped->second && ok; ++k) {
        i = skip_argument(s, i, ok);
        i = skip_optional(s, i);
      }
      if (!ok) {
        note(diagnostics, "unbalanced braces after \\" + std::string(name) + "; kept as text");
        out.append(s.substr(end));
        break;
      }
    }
  }
  return out;
}

std::vector<Alignment> parse_column_spec(std::string_view spec,
                                         std::vector<std::string>* diagnostics) {
  std::vector<Alignment> out;
  std::size_t i = 0;
  while (i < spec.size()) {
    const char c = spec[i];
    switch (c) {
      case 'l':
        out.push_back(Alignment::kLeft);
        ++i;
        continue;
      case 'c':
        out.push_back(Alignment::kCenter);
        ++i;
        continue;
      case 'r':
        out.push_back(Alignment::kRight);
        ++i;
        continue;
      case '|':
      case ' ':
      case '\t':
      case '\n':
        ++i;
        continue;
      case '@':
      case '!':
      case '>':
      case '<': {
        bool ok = true;
        i = skip_argument(spec, i + 1, ok);
        continue;
      }
      case '*': {
        bool ok = true;
        std::string_view count_text;
        std::string_view inner;
        std::size_t p = skip_argument(spec, i + 1, ok, &count_text);
        p = skip_argument(spec, p, ok, &inner);
        const long count = std::strtol(std::string(count_text).c_str(), nullptr, 10);
        if (ok && count > 0 && count <= 64) {
          const std::vector<Alignment> unit = parse_column_spec(inner, diagnostics);
          for (long k = 0; k < count; ++k) out.insert(out.end(), unit.begin(), unit.end());
        } else {
          note(diagnostics, "unreadable *{n}{...} repeat in column spec");
        }
        i = p;
        continue;
      }
      default:
        break;
    }
    if (is_letter(c)) {
      note(diagnostics, std::string("column type '") + c + "' treated as left-aligned");
      out.push_back(Alignment::kLeft);
      std::size_t p = skip_ws(spec, i + 1);
      if ((c == 'p' || c == 'm' || c == 'b') && p < spec.size() && spec[p] == '{') {
        bool ok = true;
        p = skip_argument(spec, p, ok);
        i = p;
      } else {
        ++i;
      }
      continue;
    }
    note(diagnostics, std::string("ignored character '") + c + "' in column spec");
    ++i;
  }
  return out;
}

LatexTableSource extract_latex_table(std::string_view raw) {
  const std::string src = strip_comments(raw);
  const std::string_view s = src;

  Environment tab;
  tab.begin = find_begin(s, 0, is_tabular_name, &tab.name);
  if (tab.begin == npos) throw NoTableFound();

  LatexTableSource out;
  std::size_t p = s.find('}', s.find('{', tab.begin)) + 1;
  bool ok = true;
  if (tab.name != "tabular") p = skip_argument(s, p, ok);  // width
  p = skip_optional(s, p);
  p = skip_ws(s, p);
  if (p < s.size() && s[p] == '{') {
    const std::size_t close = match_group(s, p);
    if (close == npos) {
      out.diagnostics.push_back("unbalanced column spec");
      p = s.size();
    } else {
      out.column_spec = std::string(s.substr(p + 1, close - p - 1));
      p = close + 1;
    }
  } else {
    out.diagnostics.push_back("tabular without a column spec");
  }
  tab.content = p;
  find_end(s, tab, is_tabular_name);
  if (tab.end == s.size()) out.diagnostics.push_back("unterminated tabular environment");

  const std::string_view body = s.substr(tab.content, tab.end - tab.content);
  for (std::string_view rule : {"\\hline", "\\toprule", "\\midrule", "\\bottomrule", "\\cline",
                                "\\cmidrule", "\\hhline"}) {
    if (body.find(rule) != npos) out.has_hlines = true;
  }
  out.tabular_body = std::string(trim(remove_rule_commands(body)));

  if (find_begin(s, tab.after, is_tabular_name, nullptr) != npos) {
    out.diagnostics.push_back("multiple tabular environments; using the first");
  }

  // Caption search region: innermost table environment around the tabular.
  std::size_t lo = 0;
  std::size_t hi = s.size();
  auto is_float = [](std::string_view n) { return n == "table" || n == "table*"; };
  for (std::size_t b = find_begin(s, 0, is_float, nullptr); b != npos && b < tab.begin;
       b = find_begin(s, b + 1, is_float, nullptr)) {
    Environment env;
    env.content = s.find('}', b) + 1;
    find_end(s, env, is_float);
    if (env.after >= tab.after) {
      lo = b;
      hi = env.after;
    }
  }
  out.caption = find_caption(s, lo, hi, tab.begin);
  if (out.column_spec.find_first_of("lcr") == std::string::npos) {
    out.diagnostics.push_back("column spec has no l/c/r markers");
  }
  return out;
}

NormalizedTable parse_latex_table(const LatexTableSource& source,
                                  std::vector<std::string>* diagnostics) {
  const std::string body = remove_rule_commands(source.tabular_body);
  const bool balanced = braces_balanced(body);
  if (!balanced) note(diagnostics, "unbalanced braces in tabular body; splitting ignores braces");

  TableDraft draft;
  draft.caption = source.caption.value_or("");
  for (const auto& raw_row : split_body(body, balanced)) {
    if (raw_row.size() == 1 && trim(latex_to_text(raw_row.front())).empty()) continue;
    Row row;
    for (const std::string& cell : raw_row) {
      if (!expand_multicolumn(cell, row, diagnostics)) {
        row.push_back(latex_to_text(cell, diagnostics));
      }
    }
    draft.cells.push_back(std::move(row));
  }

  std::vector<Alignment> alignments = parse_column_spec(source.column_spec, diagnostics);
  std::size_t widest = 0;
  for (const Row& row : draft.cells) widest = std::max(widest, row.size());
  if (!alignments.empty() && widest > 0 && alignments.size() != widest) {
    note(diagnostics, "column spec declares " + std::to_string(alignments.size()) +
                          " columns, rows have up to " + std::to_string(widest));
  }
  draft.alignments = std::move(alignments);

  std::size_t padded = 0;
  NormalizedTable table = NormalizedTable::create(std::move(draft), PadMode::kPad, &padded);
  if (padded > 0) note(diagnostics, "padded " + std::to_string(padded) + " missing cells");
  return table;
}

std::string render_latex_table(const NormalizedTable& table, const LatexRenderOptions& options) {
  std::string spec;
  if (options.hlines) spec += '|';
  for (std::size_t c = 0; c < table.cols(); ++c) {
    const Alignment a = c < table.alignments().size() ? table.alignments()[c] : Alignment::kLeft;
    spec += a == Alignment::kCenter ? 'c' : a == Alignment::kRight ? 'r' : 'l';
    if (options.hlines) spec += '|';
  }

  std::string out;
  if (options.table_environment) {
    out += "\\begin{table}[ht]\n\\centering\n";
    if (!table.caption().empty()) out += "\\caption{" + escape_latex(table.caption()) + "}\n";
  }
  out += "\\begin{tabular}{" + spec + "}\n";
  if (options.hlines) out += "\\hline\n";
  auto emit = [&](const Row& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += " & ";
      out += escape_latex(row[c]);
    }
    out += " \\\\\n";
  };
  if (!table.column_names().empty()) {
    emit(table.column_names());
    if (options.hlines) out += "\\hline\n";
  }
  for (const Row& row : table.cells()) emit(row);
  if (options.hlines) out += "\\hline\n";
  out += "\\end{tabular}\n";
  if (options.table_environment) out += "\\end{table}\n";
  return out;
}

}  // namespace strucbench
