#include "strucbench/corpus.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include "json.hpp"

namespace strucbench {

DuplicateId::DuplicateId(std::string id, std::size_t first_line, std::size_t second_line)
    : std::runtime_error("duplicate id \"" + id + "\" on lines " + std::to_string(first_line) +
                         " and " + std::to_string(second_line)),
      id_(std::move(id)),
      first_line_(first_line),
      second_line_(second_line) {}

namespace {

using nlohmann::json;

struct FieldError {
  std::string message;
};

std::string string_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FieldError{std::string("missing \"") + key + "\""};
  if (!doc[key].is_string()) throw FieldError{std::string("\"") + key + "\" must be a string"};
  return doc[key].get<std::string>();
}

double number_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FieldError{std::string("missing \"") + key + "\""};
  if (!doc[key].is_number()) throw FieldError{std::string("\"") + key + "\" must be a number"};
  return doc[key].get<double>();
}

// Shared JSONL loop: `convert` returns the record or throws FieldError.
// `id_of` gives the key checked for duplicates (empty to skip the check).
template <class T, class Convert, class IdOf>
LoadResult<T> read_jsonl(std::istream& in, Convert convert, IdOf id_of) {
  LoadResult<T> result;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t number = 0;
  std::size_t nonblank = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++nonblank;
    const json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      result.errors.push_back({number, "invalid JSON"});
      continue;
    }
    if (!doc.is_object()) {
      result.errors.push_back({number, "expected a JSON object"});
      continue;
    }
    try {
      T record = convert(doc);
      const std::string id = id_of(record);
      if (!id.empty()) {
        const auto [it, inserted] = seen.emplace(id, number);
        if (!inserted) throw DuplicateId(id, it->second, number);
      }
      result.items.push_back(std::move(record));
    } catch (const FieldError& e) {
      result.errors.push_back({number, e.message});
    }
  }
  if (nonblank > 0 && result.items.empty()) {
    throw MalformedFile("no line could be parsed", result.errors);
  }
  return result;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

LoadResult<CorpusItem> read_corpus(std::istream& in) {
  return read_jsonl<CorpusItem>(
      in,
      [](const json& doc) {
        CorpusItem item;
        item.id = string_field(doc, "id");
        item.instruction = string_field(doc, "instruction");
        item.input = string_field(doc, "input");
        item.output = string_field(doc, "output");
        const std::string format = string_field(doc, "format");
        if (item.id.empty()) throw FieldError{"\"id\" must not be empty"};
        if (item.output.empty()) throw FieldError{"\"output\" must not be empty"};
        const std::optional<TableFormat> parsed = parse_table_format(format);
        if (!parsed) throw FieldError{"unknown format \"" + format + "\""};
        item.format = *parsed;
        return item;
      },
      [](const CorpusItem& item) { return item.id; });
}

LoadResult<CorpusItem> load_corpus(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  return read_corpus(in);
}

LoadResult<PredictionRecord> read_predictions(std::istream& in) {
  return read_jsonl<PredictionRecord>(
      in,
      [](const json& doc) {
        PredictionRecord record;
        record.id = string_field(doc, "id");
        record.prediction = string_field(doc, "prediction");
        if (record.id.empty()) throw FieldError{"\"id\" must not be empty"};
        return record;
      },
      [](const PredictionRecord& record) { return record.id; });
}

LoadResult<PredictionRecord> load_predictions(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  return read_predictions(in);
}

void validate(const AbilityAnnotation& annotation) {
  for (std::size_t k = 0; k < kAbilityAxes.size(); ++k) {
    const double v = annotation.scores[k];
    if (!(v >= 0.0 && v <= 10.0)) {
      throw OutOfRange(annotation.model_name + ": " + std::string(kAbilityAxes[k]) + " = " +
                       std::to_string(v) + " is outside [0, 10]");
    }
  }
}

LoadResult<AbilityAnnotation> read_annotations(std::istream& in) {
  return read_jsonl<AbilityAnnotation>(
      in,
      [](const json& doc) {
        AbilityAnnotation a;
        a.model_name = string_field(doc, "model");
        for (std::size_t k = 0; k < kAbilityAxes.size(); ++k) {
          a.scores[k] = number_field(doc, std::string(kAbilityAxes[k]).c_str());
        }
        try {
          validate(a);
        } catch (const OutOfRange& e) {
          throw FieldError{e.what()};
        }
        return a;
      },
      [](const AbilityAnnotation& a) { return a.model_name; });
}

LoadResult<AbilityAnnotation> load_annotations(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  return read_annotations(in);
}

}  // namespace strucbench
