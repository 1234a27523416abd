#include "strucbench/hscore.hpp"

#include <algorithm>

#include "strucbench/alignment.hpp"

namespace strucbench {

namespace {

StructureScore averaged(std::map<std::string, double> components) {
  double sum = 0.0;
  for (const auto& [name, value] : components) sum += value;
  StructureScore s;
  s.value = SimilarityScore(components.empty() ? 1.0 : sum / static_cast<double>(components.size()));
  s.components = std::move(components);
  return s;
}

void append(std::vector<std::string>& out, const std::vector<std::string>& in,
            std::string_view prefix) {
  for (const std::string& d : in) out.push_back(std::string(prefix) + d);
}

}  // namespace

double count_ratio(std::size_t a, std::size_t b) {
  if (a == 0 && b == 0) return 1.0;
  return static_cast<double>(std::min(a, b)) / static_cast<double>(std::max(a, b));
}

SimilarityScore content_score(std::span<const LabeledTable> pred,
                              std::span<const LabeledTable> gold) {
  const std::vector<TableSlot> slots = pair_tables(pred, gold);
  if (slots.empty()) return SimilarityScore::one();
  double sum = 0.0;
  for (const TableSlot& slot : slots) {
    if (!slot.pred || !slot.gold) continue;
    const NormalizedTable& p = pred[*slot.pred].table;
    const NormalizedTable& g = gold[*slot.gold].table;
    sum += matched_cell_similarity(p, g, match_tables(p, g)).value();
  }
  return SimilarityScore(sum / static_cast<double>(slots.size()));
}

LatexDocument parse_latex_document(std::string_view text) {
  LatexDocument doc;
  try {
    doc.source = extract_latex_table(text);
  } catch (const NoTableFound& e) {
    doc.diagnostics.push_back(std::string("NoTableFound: ") + e.what());
    return doc;
  }
  doc.diagnostics = doc.source->diagnostics;
  doc.table = parse_latex_table(*doc.source, &doc.diagnostics);
  return doc;
}

HtmlDocument parse_html_document(std::string_view text) {
  HtmlDocument doc;
  doc.tree = build_structure_tree(text);
  HtmlParseResult parsed = parse_html_tables(text);
  doc.tables = std::move(parsed.tables);
  doc.diagnostics = std::move(parsed.diagnostics);
  return doc;
}

std::vector<LabeledTable> labeled_tables(const LatexDocument& doc) {
  std::vector<LabeledTable> out;
  if (doc.table) out.push_back(LabeledTable{"", *doc.table});
  return out;
}

std::vector<LabeledTable> labeled_tables(const HtmlDocument& doc) {
  std::vector<LabeledTable> out;
  for (const NormalizedTable& t : doc.tables) out.push_back(LabeledTable{"", t});
  return out;
}

StructureScore structure_score_latex(const LatexDocument& pred, const LatexDocument& gold) {
  if (!pred.table || !gold.table) {
    const double v = !pred.table && !gold.table ? 1.0 : 0.0;
    StructureScore s = averaged({{"row_count", v}, {"column_count", v}, {"caption", v},
                                 {"alignment", v}});
    if (!pred.table) s.diagnostics.push_back("prediction: NoTableFound");
    if (!gold.table) s.diagnostics.push_back("gold: NoTableFound");
    return s;
  }
  const NormalizedTable& p = *pred.table;
  const NormalizedTable& g = *gold.table;

  double caption = 1.0;
  const bool p_cap = pred.source->caption.has_value();
  const bool g_cap = gold.source->caption.has_value();
  if (p_cap && g_cap) {
    caption = string_similarity(*pred.source->caption, *gold.source->caption).value();
  } else if (p_cap != g_cap) {
    caption = 0.0;
  }

  const std::size_t width = std::max(p.cols(), g.cols());
  double alignment = 1.0;
  if (width > 0) {
    std::size_t same = 0;
    const std::size_t both = std::min(p.alignments().size(), g.alignments().size());
    for (std::size_t c = 0; c < both; ++c) {
      if (p.alignments()[c] == g.alignments()[c]) ++same;
    }
    alignment = static_cast<double>(same) / static_cast<double>(width);
  }

  return averaged({{"row_count", count_ratio(p.rows(), g.rows())},
                   {"column_count", count_ratio(p.cols(), g.cols())},
                   {"caption", caption},
                   {"alignment", alignment}});
}

StructureScore structure_score_html(const HtmlDocument& pred, const HtmlDocument& gold) {
  std::size_t pred_cells = 0;
  std::size_t gold_cells = 0;
  for (const NormalizedTable& t : pred.tables) pred_cells += t.cell_count();
  for (const NormalizedTable& t : gold.tables) gold_cells += t.cell_count();
  return averaged({{"tree", string_similarity(serialize_structure_tree(pred.tree),
                                              serialize_structure_tree(gold.tree))
                                .value()},
                   {"cell_count", count_ratio(pred_cells, gold_cells)}});
}

StructureScore structure_score_raw(const RawParseResult& pred, const RawParseResult& gold) {
  const std::vector<TableSlot> slots = pair_tables(pred.tables, gold.tables);
  if (slots.empty()) {
    return averaged({{"column_names", 1.0}, {"row_count", 1.0}, {"column_count", 1.0}});
  }
  double names = 0.0, rows = 0.0, cols = 0.0;
  std::size_t unpaired = 0;
  for (const TableSlot& slot : slots) {
    if (!slot.pred || !slot.gold) {
      ++unpaired;
      continue;
    }
    const NormalizedTable& p = pred.tables[*slot.pred].table;
    const NormalizedTable& g = gold.tables[*slot.gold].table;
    const std::size_t width = std::max(p.column_names().size(), g.column_names().size());
    double name_sum = 0.0;
    for (std::size_t c = 0; c < std::min(p.column_names().size(), g.column_names().size()); ++c) {
      name_sum += string_similarity(p.column_names()[c], g.column_names()[c]).value();
    }
    names += width == 0 ? 1.0 : name_sum / static_cast<double>(width);
    rows += count_ratio(p.rows(), g.rows());
    cols += count_ratio(p.cols(), g.cols());
  }
  const double n = static_cast<double>(slots.size());
  StructureScore s =
      averaged({{"column_names", names / n}, {"row_count", rows / n}, {"column_count", cols / n}});
  if (unpaired > 0) s.diagnostics.push_back(std::to_string(unpaired) + " unpaired table(s)");
  return s;
}

namespace {

PairEvaluation score_texts(std::string_view pred_text, std::string_view gold_text,
                           TableFormat format, bool with_errors) {
  PairEvaluation out;
  ScoreReport& report = out.score;
  StructureScore structure;
  auto finish_content = [&](const std::vector<LabeledTable>& pred,
                            const std::vector<LabeledTable>& gold) {
    report.content = content_score(pred, gold);
    if (with_errors) out.errors = classify_errors(pred, gold);
  };
  switch (format) {
    case TableFormat::kRawText: {
      const RawParseResult pred = parse_raw_tables(pred_text);
      const RawParseResult gold = parse_raw_tables(gold_text);
      finish_content(pred.tables, gold.tables);
      structure = structure_score_raw(pred, gold);
      append(report.diagnostics, pred.diagnostics, "prediction: ");
      append(report.diagnostics, gold.diagnostics, "gold: ");
      break;
    }
    case TableFormat::kLatex: {
      const LatexDocument pred = parse_latex_document(pred_text);
      const LatexDocument gold = parse_latex_document(gold_text);
      finish_content(labeled_tables(pred), labeled_tables(gold));
      structure = structure_score_latex(pred, gold);
      append(report.diagnostics, pred.diagnostics, "prediction: ");
      append(report.diagnostics, gold.diagnostics, "gold: ");
      break;
    }
    case TableFormat::kHtml: {
      const HtmlDocument pred = parse_html_document(pred_text);
      const HtmlDocument gold = parse_html_document(gold_text);
      finish_content(labeled_tables(pred), labeled_tables(gold));
      structure = structure_score_html(pred, gold);
      append(report.diagnostics, pred.diagnostics, "prediction: ");
      append(report.diagnostics, gold.diagnostics, "gold: ");
      break;
    }
  }
  report.structure = structure.value;
  report.components = std::move(structure.components);
  append(report.diagnostics, structure.diagnostics, "");
  return out;
}

}  // namespace

ScoreReport score_pair(std::string_view pred_text, std::string_view gold_text,
                       TableFormat format) {
  return score_texts(pred_text, gold_text, format, /*with_errors=*/false).score;
}

PairEvaluation evaluate_pair(std::string_view pred_text, std::string_view gold_text,
                             TableFormat format) {
  return score_texts(pred_text, gold_text, format, /*with_errors=*/true);
}

}  // namespace strucbench
