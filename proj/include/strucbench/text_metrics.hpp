#ifndef STRUCBENCH_TEXT_METRICS_HPP
#define STRUCBENCH_TEXT_METRICS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strucbench {

// Whitespace split after putting spaces around every ASCII punctuation
// character, so "(a,b)" gives "(", "a", ",", "b", ")".
std::vector<std::string> tokenize(std::string_view text);

class EmptyCorpus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BleuReport {
  double score = 0.0;  // 0..100
  std::array<double, 4> precisions{};
  double brevity_penalty = 1.0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
};

inline constexpr double kBleuEpsilon = 1e-9;

// Corpus BLEU over n = 1..4 with clipped counts and a single reference per
// hypothesis. Zero precisions become epsilon / total (epsilon when the order
// has no candidate n-grams). Throws EmptyCorpus for empty input and
// std::invalid_argument for lists of different length.
BleuReport bleu(std::span<const std::string> hypotheses, std::span<const std::string> references);

// bleu() over a single pair.
BleuReport sentence_bleu(std::string_view hypothesis, std::string_view reference);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// LCS F1 over tokens; 0 when either side has no tokens (unless both are
// empty, which scores 1).
double rouge_l(std::string_view hypothesis, std::string_view reference);

}  // namespace strucbench

#endif  // STRUCBENCH_TEXT_METRICS_HPP
