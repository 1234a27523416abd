#include "strucbench/prompts.hpp"

namespace strucbench {

namespace {

constexpr std::string_view kGptScoreHead =
    "We want to evaluate how similar the following tables/data structures are.\n"
    "\n"
    "Table 1:\n"
    "\n"
    "```\n";

constexpr std::string_view kGptScoreMiddle =
    "\n"
    "```\n"
    "\n"
    "Table 2:\n"
    "\n"
    "```\n";

constexpr std::string_view kGptScoreTail =
    "\n"
    "```\n"
    "\n"
    "Based on the above, we wanted to determine if the above tables are similar. Ideally, they "
    "should have identical content and structure. Score the \"content similarity\" and "
    "\"structural similarity\" between 0 and 10. \n"
    "\n"
    "- Content similarity: 10 if the contents of the table cells are identical, 0 if they are "
    "entirely different. If about 50% of the cells have the same data, the score should be 5.\n"
    "\n"
    "- Structural similarity: 10 if the tables have the same structure (e.g. same column and "
    "rows with identical ordering, same alignment, etc) although text formatting differences can "
    "be ignored (e.g. colors, font).\n"
    "\n"
    "Output a JSON object such as the following:\n"
    "\n"
    "```json\n"
    "{\n"
    "  \"content_similarity\": ...\n"
    "  \"structural_similarity\": ...\n"
    "}\n"
    "```\n"
    "\n"
    "Think carefully, and then output the scores.";

constexpr std::string_view kRawTextDescription =
    "Describe details about the given text. First, give the number of tables, and then for each "
    "table, describe its format such as the number of columns and rows, column names, and row "
    "names.";

constexpr std::string_view kHtmlDescription =
    "Describe the format of this HTML in detail according to each HTML tag of the following HTML "
    "code. Be careful and make sure don't miss any HTML tags. Please use more than 300 words to "
    "explain the format. Use specific numbers rather than being vague about several.";

constexpr std::string_view kLatexDescription =
    "Describe the detailed format of a given latex table according to the commands and tags with "
    "more than 500 words. Include: Whether there is table border lines? How is text alignment? "
    "What are table attributes? Whether to bold? Whether to add \\ref? Please clearly explain "
    "whether there are horizontal and vertical lines bordering each row and column. Say anything "
    "about a special \"\\\" format token in latex if there is. Don't display latex code directly. "
    "Use natural language. And provide enough format information for me to recreate this table "
    "based on your output description.";

}  // namespace

std::string build_gptscore_prompt(std::string_view table1, std::string_view table2) {
  std::string out;
  out.reserve(kGptScoreHead.size() + kGptScoreMiddle.size() + kGptScoreTail.size() +
              table1.size() + table2.size());
  out += kGptScoreHead;
  out += table1;
  out += kGptScoreMiddle;
  out += table2;
  out += kGptScoreTail;
  return out;
}

std::string build_description_prompt(TableFormat format, std::string_view payload) {
  std::string out;
  switch (format) {
    case TableFormat::kRawText:
      out = kRawTextDescription;
      break;
    case TableFormat::kHtml:
      out = kHtmlDescription;
      break;
    case TableFormat::kLatex:
      out = kLatexDescription;
      break;
  }
  out += "\n\n";
  out += payload;
  return out;
}

}  // namespace strucbench
