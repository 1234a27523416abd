#ifndef STRUCBENCH_HSCORE_HPP
#define STRUCBENCH_HSCORE_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strucbench/errors.hpp"
#include "strucbench/html_parser.hpp"
#include "strucbench/latex_parser.hpp"
#include "strucbench/raw_parser.hpp"
#include "strucbench/similarity.hpp"
#include "strucbench/structure_tree.hpp"
#include "strucbench/table.hpp"

namespace strucbench {

// A structure score and the components it averages.
struct StructureScore {
  SimilarityScore value;
  std::map<std::string, double> components;
  std::vector<std::string> diagnostics;
};

struct ScoreReport {
  SimilarityScore content;
  SimilarityScore structure;
  std::map<std::string, double> components;
  std::vector<std::string> diagnostics;
};

// Content H-Score: tables are paired by label (source order within a label),
// each pair scored by matched_cell_similarity under match_tables, and the
// result averaged over all slots with unpaired tables scoring 0. Two empty
// lists score 1.
SimilarityScore content_score(std::span<const LabeledTable> pred,
                              std::span<const LabeledTable> gold);

// Parsed forms of one document per format.
struct LatexDocument {
  std::optional<LatexTableSource> source;
  std::optional<NormalizedTable> table;
  std::vector<std::string> diagnostics;
};
LatexDocument parse_latex_document(std::string_view text);

struct HtmlDocument {
  StructureTree tree;
  std::vector<NormalizedTable> tables;
  std::vector<std::string> diagnostics;
};
HtmlDocument parse_html_document(std::string_view text);

std::vector<LabeledTable> labeled_tables(const LatexDocument& doc);
std::vector<LabeledTable> labeled_tables(const HtmlDocument& doc);

// Mean of row_count, column_count, caption and alignment. A prediction
// without a tabular scores 0 unless the gold has none either.
StructureScore structure_score_latex(const LatexDocument& pred, const LatexDocument& gold);

// Mean of tree (string similarity of serialized structure trees) and
// cell_count (min/max ratio of total cells).
StructureScore structure_score_html(const HtmlDocument& pred, const HtmlDocument& gold);

// Per label-paired table: mean of column_names, row_count and column_count;
// averaged over slots with unpaired tables contributing 0.
StructureScore structure_score_raw(const RawParseResult& pred, const RawParseResult& gold);

// min/max, or 1 when both are zero.
double count_ratio(std::size_t a, std::size_t b);

// Parses both texts in `format` and scores them. Parse failures become
// zero scores with diagnostics; never throws on malformed input.
ScoreReport score_pair(std::string_view pred_text, std::string_view gold_text, TableFormat format);

struct PairEvaluation {
  ScoreReport score;
  ErrorReport errors;
};

// score_pair plus classify_errors over the same parsed tables.
PairEvaluation evaluate_pair(std::string_view pred_text, std::string_view gold_text,
                             TableFormat format);

}  // namespace strucbench

#endif  // STRUCBENCH_HSCORE_HPP
