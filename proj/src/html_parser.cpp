#include "strucbench/html_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <utility>

#include "strucbench/utf8.hpp"

namespace strucbench {

bool is_recognized_tag(std::string_view tag) {
  return std::find(kRecognizedHtmlTags.begin(), kRecognizedHtmlTags.end(), tag) !=
         kRecognizedHtmlTags.end();
}

std::string serialize_structure_tree(const StructureTree& tree) {
  std::string out = "(" + tree.tag;
  for (const StructureTree& child : tree.children) out += serialize_structure_tree(child);
  out += ')';
  return out;
}

namespace {

constexpr std::size_t npos = std::string_view::npos;
constexpr std::size_t kMaxDepth = 256;

struct Node {
  std::string tag;  // empty for text nodes
  std::string text;
  std::vector<std::size_t> children;
  bool has_span = false;
};

class Document {
 public:
  explicit Document(std::string_view src) {
    nodes_.push_back(Node{"#root", {}, {}, false});
    open_.push_back(0);
    parse(src);
  }

  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::size_t root() const { return 0; }
  bool truncated() const { return truncated_; }

 private:
  void parse(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] != '<') {
        const std::size_t next = s.find('<', i);
        append_text(s.substr(i, next == npos ? npos : next - i));
        i = next == npos ? s.size() : next;
        continue;
      }
      if (s.compare(i, 4, "<!--") == 0) {
        const std::size_t end = s.find("-->", i + 4);
        i = end == npos ? s.size() : end + 3;
        continue;
      }
      if (i + 1 < s.size() && (s[i + 1] == '!' || s[i + 1] == '?')) {
        const std::size_t end = s.find('>', i);
        i = end == npos ? s.size() : end + 1;
        continue;
      }
      const bool closing = i + 1 < s.size() && s[i + 1] == '/';
      const std::size_t name_start = i + (closing ? 2 : 1);
      if (name_start >= s.size() || !std::isalpha(static_cast<unsigned char>(s[name_start]))) {
        append_text("<");
        ++i;
        continue;
      }
      std::size_t p = name_start;
      std::string name;
      while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '-' ||
                              s[p] == ':')) {
        name += static_cast<char>(std::tolower(static_cast<unsigned char>(s[p])));
        ++p;
      }
      // Attributes, respecting quoted values.
      const std::size_t attr_start = p;
      char quote = 0;
      while (p < s.size()) {
        if (quote) {
          if (s[p] == quote) quote = 0;
        } else if (s[p] == '"' || s[p] == '\'') {
          quote = s[p];
        } else if (s[p] == '>') {
          break;
        }
        ++p;
      }
      const std::string_view attrs = s.substr(attr_start, p - attr_start);
      i = p < s.size() ? p + 1 : s.size();
      if (closing) {
        end_tag(name);
        continue;
      }
      const bool self_closing = !attrs.empty() && attrs.back() == '/';
      start_tag(name, attrs, self_closing);
      if (!self_closing && (name == "script" || name == "style")) {
        const std::string close = "</" + name;
        std::size_t end = i;
        while (true) {
          end = s.find("</", end);
          if (end == npos) break;
          std::string probe(s.substr(end, close.size()));
          std::transform(probe.begin(), probe.end(), probe.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
          if (probe == close) break;
          end += 2;
        }
        i = end == npos ? s.size() : end;
      }
    }
  }

  static bool is_void(std::string_view tag) {
    static constexpr std::string_view kVoid[] = {"area", "base",  "br",   "col",  "embed",
                                                 "hr",   "img",   "input", "link", "meta",
                                                 "param", "source", "track", "wbr"};
    return std::find(std::begin(kVoid), std::end(kVoid), tag) != std::end(kVoid);
  }

  static bool has_span_attribute(std::string_view attrs) {
    std::string lower(attrs);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower.find("colspan") != npos || lower.find("rowspan") != npos;
  }

  // Pops the innermost open element named in `targets`, searching down the
  // stack no further than an element named in `boundaries`.
  void close_within(std::initializer_list<std::string_view> targets,
                    std::initializer_list<std::string_view> boundaries) {
    for (std::size_t k = open_.size(); k-- > 1;) {
      const std::string& tag = nodes_[open_[k]].tag;
      if (std::find(targets.begin(), targets.end(), tag) != targets.end()) {
        open_.resize(k);
        return;
      }
      if (std::find(boundaries.begin(), boundaries.end(), tag) != boundaries.end()) return;
    }
  }

  void start_tag(const std::string& tag, std::string_view attrs, bool self_closing) {
    if (tag == "tr") {
      close_within({"tr"}, {"table", "thead", "tbody", "tfoot"});
    } else if (tag == "td" || tag == "th") {
      close_within({"td", "th"}, {"tr", "table"});
    } else if (tag == "li") {
      close_within({"li"}, {"ul", "ol"});
    } else if (tag == "thead" || tag == "tbody" || tag == "tfoot") {
      close_within({"thead", "tbody", "tfoot"}, {"table"});
    } else if (tag == "p" && nodes_[open_.back()].tag == "p") {
      open_.pop_back();
    }

    const std::size_t index = nodes_.size();
    nodes_.push_back(Node{tag, {}, {}, has_span_attribute(attrs)});
    nodes_[open_.back()].children.push_back(index);
    if (self_closing || is_void(tag)) return;
    if (open_.size() > kMaxDepth) {
      truncated_ = true;
      return;
    }
    open_.push_back(index);
  }

  void end_tag(const std::string& tag) {
    for (std::size_t k = open_.size(); k-- > 1;) {
      if (nodes_[open_[k]].tag == tag) {
        open_.resize(k);
        return;
      }
    }
  }

  void append_text(std::string_view raw) {
    if (raw.empty()) return;
    const std::size_t index = nodes_.size();
    nodes_.push_back(Node{{}, decode_entities(raw), {}, false});
    nodes_[open_.back()].children.push_back(index);
  }

  static std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] != '&') {
        out += s[i++];
        continue;
      }
      const std::size_t semi = s.find(';', i);
      if (semi == npos || semi - i > 10) {
        out += s[i++];
        continue;
      }
      const std::string_view entity = s.substr(i + 1, semi - i - 1);
      std::u32string decoded;
      if (entity == "amp") {
        decoded = U"&";
      } else if (entity == "lt") {
        decoded = U"<";
      } else if (entity == "gt") {
        decoded = U">";
      } else if (entity == "quot") {
        decoded = U"\"";
      } else if (entity == "apos") {
        decoded = U"'";
      } else if (entity == "nbsp") {
        decoded = U" ";
      } else if (entity.size() > 1 && entity[0] == '#') {
        const bool hex = entity[1] == 'x' || entity[1] == 'X';
        const std::string digits(entity.substr(hex ? 2 : 1));
        char* end = nullptr;
        const unsigned long cp = std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
        if (!digits.empty() && end && *end == '\0' && cp > 0 && cp <= 0x10FFFF &&
            !(cp >= 0xD800 && cp <= 0xDFFF)) {
          decoded = std::u32string(1, static_cast<char32_t>(cp));
        }
      }
      if (decoded.empty()) {
        out += s[i++];
        continue;
      }
      out += encode_utf8(decoded);
      i = semi + 1;
    }
    return out;
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> open_;
  bool truncated_ = false;
};

bool is_block(std::string_view tag) {
  static constexpr std::string_view kBlock[] = {"br", "p",  "div", "li", "tr", "td", "th",
                                                "table", "ul", "ol", "h1", "h2", "h3", "h4",
                                                "h5", "h6", "pre"};
  return std::find(std::begin(kBlock), std::end(kBlock), tag) != std::end(kBlock);
}

void collect_text(const Document& doc, std::size_t index, std::string& out) {
  const Node& n = doc.node(index);
  if (n.tag.empty()) {
    out += n.text;
    return;
  }
  const bool block = is_block(n.tag);
  if (block) out += ' ';
  for (std::size_t child : n.children) collect_text(doc, child, out);
  if (block) out += ' ';
}

std::string text_of(const Document& doc, std::size_t index) {
  std::string out;
  for (std::size_t child : doc.node(index).children) collect_text(doc, child, out);
  return normalize_cell(out);
}

// Descendants of `index` with one of `tags`, not descending into matches or
// into elements named in `stop`.
void find_descendants(const Document& doc, std::size_t index,
                      std::initializer_list<std::string_view> tags,
                      std::initializer_list<std::string_view> stop,
                      std::vector<std::size_t>& out) {
  for (std::size_t child : doc.node(index).children) {
    const std::string& tag = doc.node(child).tag;
    if (tag.empty()) continue;
    if (std::find(tags.begin(), tags.end(), tag) != tags.end()) {
      out.push_back(child);
    } else if (std::find(stop.begin(), stop.end(), tag) == stop.end()) {
      find_descendants(doc, child, tags, stop, out);
    }
  }
}

NormalizedTable table_from_element(const Document& doc, std::size_t table,
                                   std::vector<std::string>& diagnostics) {
  std::vector<std::size_t> rows;
  find_descendants(doc, table, {"tr"}, {"table"}, rows);

  bool spans = false;
  TableDraft draft;
  bool first = true;
  for (std::size_t tr : rows) {
    std::vector<std::size_t> cells;
    find_descendants(doc, tr, {"td", "th"}, {"table", "tr"}, cells);
    Row row;
    bool all_th = !cells.empty();
    for (std::size_t cell : cells) {
      spans = spans || doc.node(cell).has_span;
      all_th = all_th && doc.node(cell).tag == "th";
      row.push_back(text_of(doc, cell));
    }
    if (first && all_th) {
      draft.column_names = std::move(row);
    } else {
      draft.cells.push_back(std::move(row));
    }
    first = false;
  }
  if (spans) diagnostics.push_back("colspan/rowspan present; spans are not expanded");
  std::size_t padded = 0;
  NormalizedTable t = NormalizedTable::create(std::move(draft), PadMode::kPad, &padded);
  if (padded > 0) diagnostics.push_back("padded " + std::to_string(padded) + " missing cells");
  return t;
}

NormalizedTable table_from_list(const Document& doc, std::size_t list) {
  std::vector<std::size_t> items;
  find_descendants(doc, list, {"li"}, {"ul", "ol"}, items);
  TableDraft draft;
  for (std::size_t li : items) draft.cells.push_back(Row{text_of(doc, li)});
  return NormalizedTable::create(std::move(draft), PadMode::kPad);
}

void walk_tables(const Document& doc, std::size_t index, bool inside_list,
                 HtmlParseResult& result) {
  for (std::size_t child : doc.node(index).children) {
    const std::string& tag = doc.node(child).tag;
    if (tag.empty()) continue;
    bool list_here = inside_list;
    if (tag == "table") {
      result.tables.push_back(table_from_element(doc, child, result.diagnostics));
    } else if ((tag == "ul" || tag == "ol") && !inside_list) {
      result.tables.push_back(table_from_list(doc, child));
      list_here = true;
    } else if (tag == "ul" || tag == "ol") {
      list_here = true;
    }
    walk_tables(doc, child, list_here, result);
  }
}

void filter_tree(const Document& doc, std::size_t index, StructureTree& parent) {
  for (std::size_t child : doc.node(index).children) {
    const std::string& tag = doc.node(child).tag;
    if (tag.empty()) continue;
    if (is_recognized_tag(tag)) {
      parent.children.push_back(StructureTree{tag, {}});
      filter_tree(doc, child, parent.children.back());
    } else {
      filter_tree(doc, child, parent);
    }
  }
}

std::string escape_html(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '&') {
      out += "&amp;";
    } else if (c == '<') {
      out += "&lt;";
    } else if (c == '>') {
      out += "&gt;";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

HtmlParseResult parse_html_tables(std::string_view src) {
  const Document doc(src);
  HtmlParseResult result;
  if (doc.truncated()) result.diagnostics.push_back("nesting deeper than 256 flattened");
  walk_tables(doc, doc.root(), false, result);
  if (result.tables.empty()) result.diagnostics.push_back("no tables found");
  return result;
}

StructureTree build_structure_tree(std::string_view src) {
  const Document doc(src);
  StructureTree root{"div", {}};
  filter_tree(doc, doc.root(), root);
  return root;
}

std::string render_html_table(const NormalizedTable& table) {
  std::string out = "<table>\n";
  if (!table.column_names().empty()) {
    out += "  <tr>";
    for (const std::string& name : table.column_names()) out += "<th>" + escape_html(name) + "</th>";
    out += "</tr>\n";
  }
  for (const Row& row : table.cells()) {
    out += "  <tr>";
    for (const std::string& cell : row) out += "<td>" + escape_html(cell) + "</td>";
    out += "</tr>\n";
  }
  out += "</table>\n";
  return out;
}

}  // namespace strucbench
