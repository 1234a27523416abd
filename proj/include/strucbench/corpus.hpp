#ifndef STRUCBENCH_CORPUS_HPP
#define STRUCBENCH_CORPUS_HPP

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strucbench/table.hpp"

namespace strucbench {

struct CorpusItem {
  std::string id;
  std::string instruction;
  std::string input;
  std::string output;  // gold
  TableFormat format = TableFormat::kRawText;
};

struct PredictionRecord {
  std::string id;
  std::string prediction;
};

struct LineError {
  std::size_t line = 0;
  std::string message;
};

template <class T>
struct LoadResult {
  std::vector<T> items;
  std::vector<LineError> errors;
};

// No line of a non-empty file parsed.
class MalformedFile : public std::runtime_error {
 public:
  MalformedFile(const std::string& what, std::vector<LineError> errors)
      : std::runtime_error(what), errors_(std::move(errors)) {}
  const std::vector<LineError>& errors() const { return errors_; }

 private:
  std::vector<LineError> errors_;
};

class DuplicateId : public std::runtime_error {
 public:
  DuplicateId(std::string id, std::size_t first_line, std::size_t second_line);
  const std::string& id() const { return id_; }
  std::size_t first_line() const { return first_line_; }
  std::size_t second_line() const { return second_line_; }

 private:
  std::string id_;
  std::size_t first_line_;
  std::size_t second_line_;
};

// JSONL readers. Blank lines are skipped; line numbers are 1-based. Lines
// that fail validation are reported in `errors` and the rest still load.
LoadResult<CorpusItem> read_corpus(std::istream& in);
LoadResult<CorpusItem> load_corpus(const std::filesystem::path& path);
LoadResult<PredictionRecord> read_predictions(std::istream& in);
LoadResult<PredictionRecord> load_predictions(const std::filesystem::path& path);

inline constexpr std::array<std::string_view, 6> kAbilityAxes = {
    "coverage", "formatting", "reasoning", "comprehension", "pragmatics", "hallucination_control"};

struct AbilityAnnotation {
  std::string model_name;
  std::array<double, 6> scores{};  // in kAbilityAxes order
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Throws OutOfRange for a score outside [0, 10].
void validate(const AbilityAnnotation& annotation);

LoadResult<AbilityAnnotation> read_annotations(std::istream& in);
LoadResult<AbilityAnnotation> load_annotations(const std::filesystem::path& path);

}  // namespace strucbench

#endif  // STRUCBENCH_CORPUS_HPP
