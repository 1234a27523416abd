#ifndef STRUCBENCH_EVALUATE_HPP
#define STRUCBENCH_EVALUATE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strucbench/corpus.hpp"
#include "strucbench/errors.hpp"
#include "strucbench/gpt_client.hpp"
#include "strucbench/hscore.hpp"

namespace strucbench {

struct EvaluateOptions {
  bool enable_gptscore = false;
  ChatClient* client = nullptr;  // required when enable_gptscore
  int jobs = 1;                  // 0: OpenMP default
};

struct ItemResult {
  std::string id;
  TableFormat format = TableFormat::kRawText;
  bool failed = false;  // missing prediction, GPTscore unavailable or internal error
  bool missing_prediction = false;
  ScoreReport score;
  ErrorReport errors;
  double bleu = 0.0;  // sentence BLEU, 0..100
  double rouge_l = 0.0;
  std::optional<GptScorePair> gptscore;
  bool gptscore_partial = false;
  std::vector<std::string> diagnostics;
};

inline constexpr std::array<const char*, 4> kErrorTypes = {
    "structure_errors", "structure_naming_errors", "element_errors", "element_format_errors"};

struct AggregateReport {
  std::size_t item_count = 0;
  std::size_t failure_count = 0;
  // Corpus BLEU over all items, 0..100.
  std::optional<double> bleu;
  // Means over items.
  std::optional<double> rouge_l;
  std::optional<double> content_hscore;
  std::optional<double> format_hscore;
  // Means over items that have a GPTscore.
  std::optional<double> content_gptscore;
  std::optional<double> format_gptscore;
  ErrorReport error_totals;
  std::array<double, 4> error_proportions{};  // kErrorTypes order; all 0 without errors

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

struct Evaluation {
  AggregateReport aggregate;
  std::vector<ItemResult> items;  // corpus order
};

// Scores one item. A null prediction scores as a missing one.
ItemResult evaluate_item(const CorpusItem& item, const std::string* prediction,
                         const EvaluateOptions& options);

// Builds the aggregate from per-item results in their given order.
AggregateReport aggregate(std::span<const ItemResult> items);

// Parallel over items (OpenMP, dynamic schedule). Throws
// std::invalid_argument for an empty corpus, a prediction id not in the
// corpus, or enable_gptscore without a client.
Evaluation evaluate(std::span<const CorpusItem> corpus,
                    std::span<const PredictionRecord> predictions, const EvaluateOptions& options);

// Single-threaded reference with the same contract.
Evaluation evaluate_serial(std::span<const CorpusItem> corpus,
                           std::span<const PredictionRecord> predictions,
                           const EvaluateOptions& options);

}  // namespace strucbench

#endif  // STRUCBENCH_EVALUATE_HPP
