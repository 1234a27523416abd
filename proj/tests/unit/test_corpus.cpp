#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "strucbench/corpus.hpp"
#include "strucbench/evaluate.hpp"
#include "strucbench/report.hpp"

using namespace strucbench;

namespace {

const std::string kData = STRUCBENCH_TEST_DATA;
const std::string kGolden = STRUCBENCH_GOLDEN_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<CorpusItem> fixture() { return load_corpus(kData + "/fixture_corpus.jsonl").items; }

std::vector<PredictionRecord> gold_as_predictions(const std::vector<CorpusItem>& corpus) {
  std::vector<PredictionRecord> out;
  for (const CorpusItem& item : corpus) out.push_back({item.id, item.output});
  return out;
}

// A hand-built aggregate used for the golden report files.
AggregateReport sample_report() {
  AggregateReport r;
  r.item_count = 4;
  r.failure_count = 1;
  r.bleu = 41.25;
  r.rouge_l = 0.625;
  r.content_hscore = 0.8125;
  r.format_hscore = 0.75;
  r.content_gptscore = 6.5;
  r.format_gptscore = 7.0;
  r.error_totals = {2, 1, 4, 1};
  r.error_proportions = {0.25, 0.125, 0.5, 0.125};
  return r;
}

}  // namespace

TEST_CASE("load a well-formed corpus") {
  std::istringstream in(
      R"({"id":"a","instruction":"i","input":"x","output":"o","format":"raw_text"})"
      "\n"
      R"({"id":"b","instruction":"i","input":"x","output":"o","format":"latex"})"
      "\n\n"
      R"({"id":"c","instruction":"i","input":"x","output":"o","format":"html"})"
      "\n");
  const LoadResult<CorpusItem> r = read_corpus(in);
  CHECK(r.items.size() == 3);
  CHECK(r.errors.empty());
  CHECK(r.items[1].format == TableFormat::kLatex);
}

TEST_CASE("bad lines are reported with their line number") {
  std::istringstream in(
      R"({"id":"a","instruction":"i","input":"x","output":"o","format":"raw_text"})"
      "\n"
      R"({"id":"b","instruction":"i","input":"x","format":"latex"})"
      "\n"
      "not json\n"
      R"({"id":"d","instruction":"i","input":"x","output":"o","format":"pdf"})"
      "\n");
  const LoadResult<CorpusItem> r = read_corpus(in);
  CHECK(r.items.size() == 1);
  REQUIRE(r.errors.size() == 3);
  CHECK(r.errors[0].line == 2);
  CHECK(r.errors[0].message.find("output") != std::string::npos);
  CHECK(r.errors[1].line == 3);
  CHECK(r.errors[2].line == 4);
}

TEST_CASE("duplicate ids name both lines") {
  std::istringstream in(
      R"({"id":"a","instruction":"i","input":"x","output":"o","format":"html"})"
      "\n"
      R"({"id":"b","instruction":"i","input":"x","output":"o","format":"html"})"
      "\n"
      R"({"id":"a","instruction":"i","input":"x","output":"o","format":"html"})"
      "\n");
  try {
    read_corpus(in);
    FAIL("expected DuplicateId");
  } catch (const DuplicateId& e) {
    CHECK(e.id() == "a");
    CHECK(e.first_line() == 1);
    CHECK(e.second_line() == 3);
  }
}

TEST_CASE("a file with no parsable line is malformed") {
  std::istringstream in("garbage\n{}\n");
  CHECK_THROWS_AS(read_corpus(in), MalformedFile);
  std::istringstream empty("");
  CHECK(read_corpus(empty).items.empty());
}

TEST_CASE("fixture corpus shape") {
  const auto corpus = fixture();
  REQUIRE(corpus.size() == 60);
  std::size_t per_format[3] = {};
  for (const auto& item : corpus) ++per_format[static_cast<int>(item.format)];
  CHECK(per_format[0] == 20);
  CHECK(per_format[1] == 20);
  CHECK(per_format[2] == 20);
}

TEST_CASE("identity predictions") {
  const auto corpus = fixture();
  const Evaluation e = evaluate(corpus, gold_as_predictions(corpus), EvaluateOptions{});
  CHECK(*e.aggregate.content_hscore == 1.0);
  CHECK(*e.aggregate.format_hscore == 1.0);
  CHECK(*e.aggregate.bleu == 100.0);
  CHECK(*e.aggregate.rouge_l == 1.0);
  CHECK(e.aggregate.error_totals.total() == 0);
  CHECK(e.aggregate.failure_count == 0);
  CHECK(e.aggregate.error_proportions == std::array<double, 4>{});
}

TEST_CASE("half identical, half empty") {
  const auto corpus = fixture();
  std::vector<PredictionRecord> preds;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    preds.push_back({corpus[i].id, i % 2 ? std::string() : corpus[i].output});
  }
  const Evaluation e = evaluate(corpus, preds, EvaluateOptions{});
  CHECK(*e.aggregate.content_hscore == 0.5);
}

TEST_CASE("planted mutations are counted exactly") {
  const auto corpus = fixture();
  const auto preds = load_predictions(kData + "/fixture_planted.jsonl").items;
  const nlohmann::json counts = nlohmann::json::parse(slurp(kData + "/fixture_planted_counts.json"));
  const Evaluation e = evaluate(corpus, preds, EvaluateOptions{});
  const ErrorReport& t = e.aggregate.error_totals;
  CHECK(t.structure_errors == counts["structure_errors"].get<std::size_t>());
  CHECK(t.structure_naming_errors == counts["structure_naming_errors"].get<std::size_t>());
  CHECK(t.element_errors == counts["element_errors"].get<std::size_t>());
  CHECK(t.element_format_errors == counts["element_format_errors"].get<std::size_t>());
  double sum = 0.0;
  for (double p : e.aggregate.error_proportions) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("missing and unknown predictions") {
  const auto corpus = fixture();
  std::vector<PredictionRecord> preds = gold_as_predictions(corpus);
  preds.erase(preds.begin() + 5);
  const Evaluation e = evaluate(corpus, preds, EvaluateOptions{});
  CHECK(e.aggregate.failure_count == 1);
  CHECK(e.items[5].missing_prediction);
  CHECK(e.items[5].score.content.value() == 0.0);
  CHECK(*e.aggregate.content_hscore == 59.0 / 60.0);

  preds.push_back({"no-such-id", "x"});
  CHECK_THROWS_AS(evaluate(corpus, preds, EvaluateOptions{}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate({}, {}, EvaluateOptions{}), std::invalid_argument);
}

TEST_CASE("parallel and serial runs agree and aggregates match items") {
  const auto corpus = fixture();
  const auto preds = load_predictions(kData + "/fixture_planted.jsonl").items;
  const Evaluation serial = evaluate_serial(corpus, preds, EvaluateOptions{});
  EvaluateOptions eight;
  eight.jobs = 8;
  const Evaluation parallel = evaluate(corpus, preds, eight);
  CHECK(serial.aggregate == parallel.aggregate);
  for (ReportFormat f : {ReportFormat::kJson, ReportFormat::kCsv, ReportFormat::kMarkdown}) {
    CHECK(emit_report(serial.aggregate, f) == emit_report(parallel.aggregate, f));
  }
  CHECK(emit_items_jsonl(serial.items) == emit_items_jsonl(parallel.items));

  double content = 0.0, rouge = 0.0;
  for (const ItemResult& r : parallel.items) {
    content += r.score.content.value();
    rouge += r.rouge_l;
  }
  CHECK(std::abs(*parallel.aggregate.content_hscore - content / 60.0) <= 1e-12);
  CHECK(std::abs(*parallel.aggregate.rouge_l - rouge / 60.0) <= 1e-12);
}

TEST_CASE("gptscore in the runner") {
  class Fixed : public ChatTransport {
   public:
    std::string complete(const ChatRequest&) override {
      return "{\"content_similarity\": 8, \"structural_similarity\": 6}";
    }
  };
  ChatEndpointConfig config;
  config.model_name = "judge";
  ChatClient client(config, std::make_shared<Fixed>());
  const auto corpus = fixture();
  EvaluateOptions options;
  options.enable_gptscore = true;
  options.client = &client;
  options.jobs = 4;
  const Evaluation e = evaluate(corpus, gold_as_predictions(corpus), options);
  CHECK(*e.aggregate.content_gptscore == 8.0);
  CHECK(*e.aggregate.format_gptscore == 6.0);
  CHECK(client.request_count() == 120);

  options.client = nullptr;
  CHECK_THROWS_AS(evaluate(corpus, {}, options), std::invalid_argument);
}

TEST_CASE("reports match the golden files") {
  const AggregateReport r = sample_report();
  CHECK(emit_report(r, ReportFormat::kJson) == slurp(kGolden + "/report.json"));
  CHECK(emit_report(r, ReportFormat::kCsv) == slurp(kGolden + "/report.csv"));
  CHECK(emit_report(r, ReportFormat::kMarkdown) == slurp(kGolden + "/report.md"));
}

TEST_CASE("empty run report") {
  const AggregateReport empty = aggregate({});
  CHECK(empty.item_count == 0);
  const std::string md = emit_report(empty, ReportFormat::kMarkdown);
  CHECK(md.find("| Metric | Value |\n| --- | ---: |\n\n") != std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(emit_report(empty, ReportFormat::kJson));
  CHECK(j["item_count"] == 0);
  CHECK(j["metrics"].empty());
}

TEST_CASE("csv round trip") {
  const auto corpus = fixture();
  const auto preds = load_predictions(kData + "/fixture_planted.jsonl").items;
  for (const AggregateReport& r :
       {sample_report(), aggregate({}), evaluate(corpus, preds, EvaluateOptions{}).aggregate}) {
    CHECK(parse_csv_report(emit_report(r, ReportFormat::kCsv)) == r);
  }
  CHECK_THROWS_AS(parse_csv_report("nope"), std::invalid_argument);
}

TEST_CASE("ability map geometry") {
  AbilityAnnotation full{"full", {10, 10, 10, 10, 10, 10}};
  const std::string svg = emit_ability_map(std::vector<AbilityAnnotation>{full});
  // Axis tips at radius 200 around (250, 250), starting straight up.
  CHECK(svg.find("data-model=\"full\" points=\"250.000,50.000 423.205,150.000 423.205,350.000 "
                 "250.000,450.000 76.795,350.000 76.795,150.000\"") != std::string::npos);

  AbilityAnnotation zero{"zero", {0, 0, 0, 0, 0, 0}};
  const std::string center = emit_ability_map(std::vector<AbilityAnnotation>{zero});
  CHECK(center.find("points=\"250.000,250.000 250.000,250.000 250.000,250.000 250.000,250.000 "
                    "250.000,250.000 250.000,250.000\"") != std::string::npos);

  AbilityAnnotation bad{"bad", {0, 0, 11, 0, 0, 0}};
  CHECK_THROWS_AS(emit_ability_map(std::vector<AbilityAnnotation>{bad}), OutOfRange);
  CHECK_THROWS_AS(emit_ability_map(std::vector<AbilityAnnotation>{}), std::invalid_argument);
}

TEST_CASE("ability map golden") {
  const auto annotations = load_annotations(kData + "/annotations.jsonl");
  CHECK(annotations.errors.empty());
  CHECK(emit_ability_map(annotations.items) == slurp(kGolden + "/ability_map.svg"));
}
