#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "strucbench/corpus.hpp"
#include "strucbench/evaluate.hpp"
#include "strucbench/gpt_client.hpp"
#include "strucbench/hscore.hpp"
#include "strucbench/prompts.hpp"
#include "strucbench/report.hpp"

namespace fs = std::filesystem;
using namespace strucbench;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

TableFormat format_or_throw(const std::string& name) {
  const auto f = parse_table_format(name);
  if (!f) throw std::runtime_error("unknown format " + name);
  return *f;
}

template <class T>
std::vector<T> report_line_errors(LoadResult<T> result, const std::string& path) {
  for (const LineError& e : result.errors) {
    std::cerr << path << ":" << e.line << ": " << e.message << "\n";
  }
  return std::move(result.items);
}

struct EvalArgs {
  std::string corpus;
  std::string pred;
  bool gptscore = false;
  std::string endpoint;
  std::string model;
  std::string auth_env = "STRUCBENCH_API_KEY";
  std::string replay;
  std::string record;
  int jobs = 1;
  std::string out;
  std::string report_format = "json";
};

int run_score(const std::string& format, const std::string& gold, const std::string& pred,
              bool as_json) {
  const ScoreReport r = score_pair(read_file(pred), read_file(gold), format_or_throw(format));
  if (as_json) {
    nlohmann::ordered_json doc;
    doc["content"] = r.content.value();
    doc["structure"] = r.structure.value();
    doc["components"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.components) doc["components"][name] = value;
    doc["diagnostics"] = r.diagnostics;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::printf("content   %.6f\nstructure %.6f\n", r.content.value(), r.structure.value());
    for (const auto& [name, value] : r.components) std::printf("  %-13s %.6f\n", name.c_str(), value);
    for (const std::string& d : r.diagnostics) std::fprintf(stderr, "note: %s\n", d.c_str());
  }
  return 0;
}

int run_eval(const EvalArgs& a) {
  const auto report_format = parse_report_format(a.report_format);
  if (!report_format) throw std::runtime_error("unknown report format " + a.report_format);
  const std::vector<CorpusItem> corpus = report_line_errors(load_corpus(a.corpus), a.corpus);
  const std::vector<PredictionRecord> preds = report_line_errors(load_predictions(a.pred), a.pred);

  EvaluateOptions options;
  options.jobs = a.jobs;
  std::unique_ptr<ChatClient> client;
  if (a.gptscore) {
    ChatEndpointConfig config;
    config.base_url = a.endpoint;
    config.model_name = a.model;
    config.auth_token_env = a.auth_env;
    std::shared_ptr<ChatTransport> transport;
    if (!a.replay.empty()) {
      transport = std::make_shared<ReplayTransport>(a.replay);
    } else {
      if (a.endpoint.empty()) throw std::runtime_error("--gptscore needs --endpoint or --replay");
      transport = std::make_shared<HttpChatTransport>(config);
    }
    if (!a.record.empty()) transport = std::make_shared<RecordingTransport>(transport, a.record);
    client = std::make_unique<ChatClient>(config, transport);
    options.enable_gptscore = true;
    options.client = client.get();
  }

  const Evaluation result = evaluate(corpus, preds, options);
  fs::create_directories(a.out);
  const fs::path report_path =
      fs::path(a.out) / (std::string("report.") + file_extension(*report_format));
  write_file(report_path, emit_report(result.aggregate, *report_format));
  write_file(fs::path(a.out) / "items.jsonl", emit_items_jsonl(result.items));
  std::cout << "wrote " << report_path.string() << " (" << result.aggregate.item_count
            << " items, " << result.aggregate.failure_count << " failures)\n";
  return 0;
}

int run_errors(const std::string& corpus_path, const std::string& pred_path) {
  const std::vector<CorpusItem> corpus = report_line_errors(load_corpus(corpus_path), corpus_path);
  const std::vector<PredictionRecord> preds =
      report_line_errors(load_predictions(pred_path), pred_path);
  const Evaluation result = evaluate(corpus, preds, EvaluateOptions{});
  std::cout << emit_error_table(result.aggregate);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Table evaluation: H-Score, error taxonomy, GPTscore, BLEU/ROUGE-L"};
  app.require_subcommand(1);

  std::string format, gold, pred;
  bool as_json = false;
  auto* score = app.add_subcommand("score", "Score one prediction against one gold table");
  score->add_option("--format", format, "raw_text, latex or html")->required();
  score->add_option("--gold", gold)->required()->check(CLI::ExistingFile);
  score->add_option("--pred", pred)->required()->check(CLI::ExistingFile);
  score->add_flag("--json", as_json);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score a prediction file against a corpus");
  eval->add_option("--corpus", ea.corpus)->required()->check(CLI::ExistingFile);
  eval->add_option("--pred", ea.pred)->required()->check(CLI::ExistingFile);
  eval->add_flag("--gptscore", ea.gptscore, "Also query an LLM judge");
  eval->add_option("--endpoint", ea.endpoint, "Chat-completions URL");
  eval->add_option("--model", ea.model);
  eval->add_option("--auth-env", ea.auth_env, "Variable holding the bearer token")
      ->capture_default_str();
  eval->add_option("--replay", ea.replay, "Serve judge responses from a transcript");
  eval->add_option("--record", ea.record, "Append judge exchanges to a transcript");
  eval->add_option("--jobs", ea.jobs, "Worker threads (0: all cores)")->capture_default_str();
  eval->add_option("--out", ea.out)->required();
  eval->add_option("--report-format", ea.report_format)
      ->check(CLI::IsMember({"json", "csv", "markdown"}))
      ->capture_default_str();

  std::string err_corpus, err_pred;
  auto* errors = app.add_subcommand("errors", "Error-type table for a prediction file");
  errors->add_option("--corpus", err_corpus)->required()->check(CLI::ExistingFile);
  errors->add_option("--pred", err_pred)->required()->check(CLI::ExistingFile);

  auto* prompt = app.add_subcommand("prompt", "Print an exact prompt");
  prompt->require_subcommand(1);
  std::string t1, t2;
  auto* prompt_gpt = prompt->add_subcommand("gptscore", "Similarity-rating prompt");
  prompt_gpt->add_option("--t1", t1)->required()->check(CLI::ExistingFile);
  prompt_gpt->add_option("--t2", t2)->required()->check(CLI::ExistingFile);
  std::string describe_format, describe_in;
  auto* prompt_describe = prompt->add_subcommand("describe", "Format-description prompt");
  prompt_describe->add_option("--format", describe_format)->required();
  prompt_describe->add_option("--in", describe_in)->required()->check(CLI::ExistingFile);

  std::string annotations, svg_out;
  auto* ability = app.add_subcommand("ability-map", "Radar chart from annotation JSONL");
  ability->add_option("--annotations", annotations)->required()->check(CLI::ExistingFile);
  ability->add_option("--out", svg_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*score) return run_score(format, gold, pred, as_json);
    if (*eval) return run_eval(ea);
    if (*errors) return run_errors(err_corpus, err_pred);
    if (*prompt_gpt) {
      std::cout << build_gptscore_prompt(read_file(t1), read_file(t2));
      return 0;
    }
    if (*prompt_describe) {
      std::cout << build_description_prompt(format_or_throw(describe_format),
                                            read_file(describe_in));
      return 0;
    }
    if (*ability) {
      const std::vector<AbilityAnnotation> items =
          report_line_errors(load_annotations(annotations), annotations);
      write_file(svg_out, emit_ability_map(items));
      return 0;
    }
  } catch (const DuplicateId& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const LineError& le : e.errors()) std::cerr << "  line " << le.line << ": " << le.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
