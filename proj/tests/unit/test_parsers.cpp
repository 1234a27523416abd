#include <string>

#include "doctest.h"
#include "strucbench/html_parser.hpp"
#include "strucbench/latex_parser.hpp"
#include "strucbench/raw_parser.hpp"
#include "strucbench/table.hpp"

using namespace strucbench;

TEST_CASE("normalize_cell") {
  CHECK(normalize_cell("  23 \n pts ") == "23 pts");
  CHECK(normalize_cell("") == "");
  CHECK(normalize_cell("a  b") == "a b");
}

TEST_CASE("NormalizedTable shape and padding") {
  TableDraft d;
  d.cells = {{"a", "b", "c"}, {"d", "e", "f"}};
  CHECK(table_shape(NormalizedTable::create(d)) == TableShape{2, 3});
  CHECK(table_shape(NormalizedTable{}) == TableShape{0, 0});

  TableDraft ragged;
  ragged.cells = {{"a", "b"}, {"c"}};
  CHECK_THROWS_AS(NormalizedTable::create(ragged), RaggedTableError);
  std::size_t padded = 0;
  const NormalizedTable t = NormalizedTable::create(ragged, PadMode::kPad, &padded);
  CHECK(padded == 1);
  CHECK(t.cells()[1] == Row{"c", ""});
}

TEST_CASE("raw: single labeled table") {
  const RawParseResult r = parse_raw_tables("Team\nName | Wins\nSuns | 0\n");
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].label == "Team");
  CHECK(r.tables[0].table.column_names() == Row{"Name", "Wins"});
  CHECK(r.tables[0].table.cells() == Grid{{"Suns", "0"}});
}

TEST_CASE("raw: empty input") {
  const RawParseResult r = parse_raw_tables("");
  CHECK(r.tables.empty());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0] == "no tables found");
}

TEST_CASE("raw: team and player tables") {
  const std::string text =
      "Here are the tables.\n"
      "Team:\n"
      "| Team | Wins | Losses |\n"
      "| --- | --- | --- |\n"
      "| Suns | 3 | 1 |\n"
      "| Jazz | 2 | 2 |\n"
      "| Kings | 0 | 4 |\n"
      "\n"
      "Player:\n"
      "| Player | PTS | REB | AST |\n"
      "| A. One | 10 | 2 | 3 |\n"
      "| B. Two | 12 | 5 | 1 |\n"
      "| C. Three | 8 | 9 | 0 |\n"
      "| D. Four | 21 | 3 | 7 |\n"
      "| E. Five | 4 | 1 | 1 |\n";
  const RawParseResult r = parse_raw_tables(text);
  REQUIRE(r.tables.size() == 2);
  CHECK(r.tables[0].label == "Team");
  CHECK(r.tables[0].table.column_names() == Row{"Team", "Wins", "Losses"});
  CHECK(r.tables[0].table.cells() == Grid{{"Suns", "3", "1"}, {"Jazz", "2", "2"}, {"Kings", "0", "4"}});
  CHECK(r.tables[1].label == "Player");
  CHECK(table_shape(r.tables[1].table) == TableShape{5, 4});
  CHECK(r.tables[1].table.cells()[3] == Row{"D. Four", "21", "3", "7"});
  CHECK(r.tables[1].table.row_names() ==
        Row{"A. One", "B. Two", "C. Three", "D. Four", "E. Five"});
}

TEST_CASE("raw: render then parse round trip") {
  const std::string text = "Team:\n| Team | Wins |\n| Suns | 3 |\n\nPlayer:\n| Player | PTS |\n| X | 1 |\n";
  const RawParseResult first = parse_raw_tables(text);
  const RawParseResult second = parse_raw_tables(render_raw_tables(first.tables));
  REQUIRE(second.tables.size() == first.tables.size());
  for (std::size_t i = 0; i < first.tables.size(); ++i) {
    CHECK(second.tables[i].label == first.tables[i].label);
    CHECK(second.tables[i].table == first.tables[i].table);
  }
}

TEST_CASE("raw: split_raw_row") {
  CHECK(split_raw_row("| a | b |") == Row{"a", "b"});
  CHECK(split_raw_row("a | b") == Row{"a", "b"});
  CHECK(split_raw_row("| a || b |") == Row{"a", "", "b"});
}

TEST_CASE("latex: extract") {
  const LatexTableSource s =
      extract_latex_table("\\begin{tabular}{|c|c|}\\hline a & b \\\\ \\hline\\end{tabular}");
  CHECK(s.column_spec == "|c|c|");
  CHECK(s.tabular_body == "a & b \\\\");
  CHECK(s.has_hlines);
  CHECK_FALSE(s.caption.has_value());
}

TEST_CASE("latex: caption before the tabular") {
  const LatexTableSource s = extract_latex_table(
      "\\begin{table}\\caption{Results}\\begin{tabular}{cc}a & b\\\\\\end{tabular}\\end{table}");
  REQUIRE(s.caption.has_value());
  CHECK(*s.caption == "Results");
}

TEST_CASE("latex: first of two tabulars") {
  const std::string src =
      "\\begin{tabular}{ll}x & y \\\\\n\\end{tabular}\n"
      "\\begin{tabular}{ccc}1 & 2 & 3 \\\\\n\\end{tabular}\n";
  const LatexTableSource s = extract_latex_table(src);
  CHECK(s.column_spec == "ll");
  CHECK(s.tabular_body == "x & y \\\\");
  CHECK_FALSE(s.diagnostics.empty());
}

TEST_CASE("latex: no tabular") {
  CHECK_THROWS_AS(extract_latex_table("just text"), NoTableFound);
}

TEST_CASE("latex: parse grid and alignments") {
  LatexTableSource s;
  s.tabular_body = "a & b \\\\ c & d";
  s.column_spec = "cc";
  const NormalizedTable t = parse_latex_table(s);
  CHECK(t.cells() == Grid{{"a", "b"}, {"c", "d"}});
  CHECK(t.alignments() == std::vector<Alignment>{Alignment::kCenter, Alignment::kCenter});

  s.tabular_body = "\\textbf{x} & 1 \\\\";
  s.column_spec = "lr";
  const NormalizedTable u = parse_latex_table(s);
  CHECK(u.cells() == Grid{{"x", "1"}});
  CHECK(u.alignments() == std::vector<Alignment>{Alignment::kLeft, Alignment::kRight});
}

TEST_CASE("latex: multicolumn expands to empty cells") {
  LatexTableSource s;
  s.tabular_body = "\\multicolumn{2}{c}{T} & z \\\\";
  s.column_spec = "ccc";
  CHECK(parse_latex_table(s).cells() == Grid{{"T", "", "z"}});
}

TEST_CASE("latex: column spec") {
  using A = Alignment;
  CHECK(parse_column_spec("|l|c|r|") == std::vector<A>{A::kLeft, A::kCenter, A::kRight});
  CHECK(parse_column_spec("*{3}{c}l") == std::vector<A>{A::kCenter, A::kCenter, A::kCenter, A::kLeft});
  CHECK(parse_column_spec("@{}lr@{}") == std::vector<A>{A::kLeft, A::kRight});
  std::vector<std::string> diagnostics;
  CHECK(parse_column_spec("p{3cm}c", &diagnostics) == std::vector<A>{A::kLeft, A::kCenter});
  CHECK_FALSE(diagnostics.empty());
}

TEST_CASE("latex: text extraction") {
  CHECK(latex_to_text("\\textbf{bold} and \\emph{it}") == "bold and it");
  CHECK(latex_to_text("50\\%") == "50%");
  CHECK(latex_to_text("\\textcolor{red}{hot}") == "hot");
  CHECK(latex_to_text("$x$~y") == "x y");
}

TEST_CASE("latex: unbalanced braces do not throw") {
  LatexTableSource s;
  s.tabular_body = "{a & b \\\\ c & d";
  s.column_spec = "cc";
  std::vector<std::string> diagnostics;
  const NormalizedTable t = parse_latex_table(s, &diagnostics);
  CHECK(t.rows() == 2);
  CHECK_FALSE(diagnostics.empty());
}

TEST_CASE("latex: render then parse round trip") {
  TableDraft d;
  d.caption = "Scores";
  d.cells = {{"A & B", "50%"}, {"x_1", "$5"}};
  d.alignments = {Alignment::kLeft, Alignment::kRight};
  const NormalizedTable t = NormalizedTable::create(d);
  const LatexTableSource s = extract_latex_table(render_latex_table(t));
  CHECK(s.caption == std::optional<std::string>("Scores"));
  const NormalizedTable back = parse_latex_table(s);
  CHECK(back.cells() == t.cells());
  CHECK(back.alignments() == t.alignments());
}

TEST_CASE("html: header and cells") {
  const HtmlParseResult r = parse_html_tables("<table><tr><th>A</th></tr><tr><td>1</td></tr></table>");
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].column_names() == Row{"A"});
  CHECK(r.tables[0].cells() == Grid{{"1"}});
}

TEST_CASE("html: list becomes one column") {
  const HtmlParseResult r = parse_html_tables("<ul><li>x</li><li>y</li></ul>");
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].cells() == Grid{{"x"}, {"y"}});
}

TEST_CASE("html: nested table") {
  const HtmlParseResult r = parse_html_tables(
      "<table><tr><td>a</td><td><table><tr><td>p</td><td>q</td></tr></table></td></tr>"
      "<tr><td>b</td><td>c</td></tr></table>");
  REQUIRE(r.tables.size() == 2);
  CHECK(r.tables[0].cells() == Grid{{"a", "p q"}, {"b", "c"}});
  CHECK(r.tables[1].cells() == Grid{{"p", "q"}});
}

TEST_CASE("html: unclosed cells and entities") {
  const HtmlParseResult r =
      parse_html_tables("<TABLE><tr><td>1 &amp; 2<td>&lt;3&gt;<tr><td>x<td>&#65;</table>");
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].cells() == Grid{{"1 & 2", "<3>"}, {"x", "A"}});
}

TEST_CASE("html: structure tree") {
  CHECK(serialize_structure_tree(build_structure_tree("<table><tr><td>x</td></tr></table>")) ==
        "(div(table(tr(td))))");
  CHECK(serialize_structure_tree(build_structure_tree("<section><p>a</p></section>")) ==
        "(div(p))");
  CHECK(serialize_structure_tree(build_structure_tree("<b>x</b>")) == "(div)");
}

TEST_CASE("html: serialization") {
  CHECK(serialize_structure_tree(StructureTree{"table", {}}) == "(table)");
  CHECK(serialize_structure_tree(StructureTree{"div", {{"p", {}}, {"p", {}}}}) == "(div(p)(p))");
  // Seven nodes, written out by a pre-order walk.
  const StructureTree deep{
      "div",
      {{"table", {{"tr", {{"th", {}}, {"td", {}}}}}}, {"ul", {{"li", {}}}}}};
  CHECK(serialize_structure_tree(deep) == "(div(table(tr(th)(td)))(ul(li)))");
}

TEST_CASE("html: recognized tags") {
  CHECK(kRecognizedHtmlTags.size() == 22);
  CHECK(is_recognized_tag("button"));
  CHECK_FALSE(is_recognized_tag("section"));
}

TEST_CASE("html: deep nesting is capped") {
  std::string src;
  for (int i = 0; i < 5000; ++i) src += "<div>";
  const StructureTree tree = build_structure_tree(src);
  std::size_t depth = 0;
  for (const StructureTree* t = &tree; !t->children.empty(); t = &t->children[0]) ++depth;
  CHECK(depth <= 256 + 1);  // plus the synthetic root
}

TEST_CASE("html: render then parse round trip") {
  TableDraft d;
  d.column_names = {"City", "Temp"};
  d.cells = {{"Oslo", "<5"}, {"Lima & Cusco", "20"}};
  const NormalizedTable t = NormalizedTable::create(d);
  const HtmlParseResult r = parse_html_tables(render_html_table(t));
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0] == t);
}
