#include "strucbench/evaluate.hpp"

#include <omp.h>

#include <map>
#include <stdexcept>

#include "strucbench/text_metrics.hpp"

namespace strucbench {

namespace {

std::vector<const std::string*> join_predictions(std::span<const CorpusItem> corpus,
                                                 std::span<const PredictionRecord> predictions,
                                                 const EvaluateOptions& options) {
  if (corpus.empty()) throw std::invalid_argument("evaluate: corpus is empty");
  if (options.enable_gptscore && options.client == nullptr) {
    throw std::invalid_argument("evaluate: GPTscore enabled without a client");
  }
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) index.emplace(corpus[i].id, i);
  std::vector<const std::string*> joined(corpus.size(), nullptr);
  for (const PredictionRecord& p : predictions) {
    const auto it = index.find(p.id);
    if (it == index.end()) {
      throw std::invalid_argument("evaluate: prediction id \"" + p.id + "\" is not in the corpus");
    }
    joined[it->second] = &p.prediction;
  }
  return joined;
}

}  // namespace

ItemResult evaluate_item(const CorpusItem& item, const std::string* prediction,
                         const EvaluateOptions& options) {
  ItemResult r;
  r.id = item.id;
  r.format = item.format;
  if (prediction == nullptr) {
    r.failed = true;
    r.missing_prediction = true;
    r.score.content = SimilarityScore::zero();
    r.score.structure = SimilarityScore::zero();
    if (options.enable_gptscore) r.gptscore = GptScorePair{};
    r.diagnostics.push_back("missing prediction");
    return r;
  }
  try {
    PairEvaluation pair = evaluate_pair(*prediction, item.output, item.format);
    r.score = std::move(pair.score);
    r.errors = pair.errors;
    r.bleu = sentence_bleu(*prediction, item.output).score;
    r.rouge_l = rouge_l(*prediction, item.output);
  } catch (const std::exception& e) {
    r.failed = true;
    r.score = ScoreReport{};
    r.diagnostics.push_back(std::string("scoring failed: ") + e.what());
  }
  if (options.enable_gptscore) {
    try {
      GptScoreResult g = gptscore(*prediction, item.output, *options.client);
      r.gptscore = g.pair;
      r.gptscore_partial = g.status == GptScoreStatus::kPartial;
      for (std::string& d : g.diagnostics) r.diagnostics.push_back("gptscore: " + std::move(d));
    } catch (const std::exception& e) {
      r.failed = true;
      r.diagnostics.push_back(std::string("gptscore unavailable: ") + e.what());
    }
  }
  return r;
}

AggregateReport aggregate(std::span<const ItemResult> items) {
  AggregateReport a;
  a.item_count = items.size();
  if (items.empty()) return a;

  double rouge = 0.0, content = 0.0, format = 0.0, gpt_content = 0.0, gpt_format = 0.0;
  std::size_t gpt_items = 0;
  for (const ItemResult& r : items) {
    if (r.failed) ++a.failure_count;
    rouge += r.rouge_l;
    content += r.score.content.value();
    format += r.score.structure.value();
    if (r.gptscore) {
      gpt_content += r.gptscore->content_similarity;
      gpt_format += r.gptscore->structural_similarity;
      ++gpt_items;
    }
    a.error_totals += r.errors;
  }
  const double n = static_cast<double>(items.size());
  a.rouge_l = rouge / n;
  a.content_hscore = content / n;
  a.format_hscore = format / n;
  if (gpt_items > 0) {
    a.content_gptscore = gpt_content / static_cast<double>(gpt_items);
    a.format_gptscore = gpt_format / static_cast<double>(gpt_items);
  }
  const ErrorReport& t = a.error_totals;
  if (t.total() > 0) {
    const double total = static_cast<double>(t.total());
    a.error_proportions = {static_cast<double>(t.structure_errors) / total,
                           static_cast<double>(t.structure_naming_errors) / total,
                           static_cast<double>(t.element_errors) / total,
                           static_cast<double>(t.element_format_errors) / total};
  }
  return a;
}

namespace {

// Corpus BLEU needs the texts, not per-item results; missing predictions
// count as empty hypotheses.
double corpus_bleu(std::span<const CorpusItem> corpus,
                   const std::vector<const std::string*>& joined) {
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
  hyps.reserve(corpus.size());
  refs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    hyps.push_back(joined[i] ? *joined[i] : std::string());
    refs.push_back(corpus[i].output);
  }
  return bleu(hyps, refs).score;
}

Evaluation finish(std::span<const CorpusItem> corpus, const std::vector<const std::string*>& joined,
                  std::vector<ItemResult> items) {
  Evaluation out;
  out.aggregate = aggregate(items);
  out.aggregate.bleu = corpus_bleu(corpus, joined);
  out.items = std::move(items);
  return out;
}

}  // namespace

Evaluation evaluate_serial(std::span<const CorpusItem> corpus,
                           std::span<const PredictionRecord> predictions,
                           const EvaluateOptions& options) {
  const std::vector<const std::string*> joined = join_predictions(corpus, predictions, options);
  std::vector<ItemResult> items;
  items.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    items.push_back(evaluate_item(corpus[i], joined[i], options));
  }
  return finish(corpus, joined, std::move(items));
}

Evaluation evaluate(std::span<const CorpusItem> corpus,
                    std::span<const PredictionRecord> predictions, const EvaluateOptions& options) {
  const std::vector<const std::string*> joined = join_predictions(corpus, predictions, options);
  std::vector<ItemResult> items(corpus.size());
  const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    items[i] = evaluate_item(corpus[i], joined[i], options);
  }
  return finish(corpus, joined, std::move(items));
}

}  // namespace strucbench
