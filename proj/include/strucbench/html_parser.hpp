#ifndef STRUCBENCH_HTML_PARSER_HPP
#define STRUCBENCH_HTML_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "strucbench/structure_tree.hpp"
#include "strucbench/table.hpp"

namespace strucbench {

struct HtmlParseResult {
  std::vector<NormalizedTable> tables;
  std::vector<std::string> diagnostics;
};

// Every <table> (nested ones included, in document order) yields a table:
// rows from <tr>, cells from <td>/<th>, and a leading all-<th> row becomes
// the column names. Every <ul>/<ol> not inside another list yields a
// one-column table with one cell per <li>. The parser is lenient: unclosed
// elements close at their parent's end tag.
HtmlParseResult parse_html_tables(std::string_view src);

// Document tree filtered to kRecognizedHtmlTags under a synthetic "div"
// root. Other elements are transparent; text and attributes are ignored.
StructureTree build_structure_tree(std::string_view src);

std::string render_html_table(const NormalizedTable& table);

}  // namespace strucbench

#endif  // STRUCBENCH_HTML_PARSER_HPP
