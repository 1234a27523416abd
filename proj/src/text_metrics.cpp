#include "strucbench/text_metrics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>

namespace strucbench {

namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

bool is_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_space(c)) {
      flush();
    } else if (is_ascii_punct(c)) {
      flush();
      tokens.emplace_back(1, ch);
    } else {
      current.push_back(ch);
    }
  }
  flush();
  return tokens;
}

BleuReport bleu(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  if (hypotheses.empty()) throw EmptyCorpus("bleu needs at least one hypothesis");
  if (hypotheses.size() != references.size()) {
    throw std::invalid_argument("bleu: hypotheses and references differ in length");
  }
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  BleuReport report;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const std::vector<std::string> hyp = tokenize(hypotheses[i]);
    const std::vector<std::string> ref = tokenize(references[i]);
    report.hyp_len += hyp.size();
    report.ref_len += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      const NgramCounts h = count_ngrams(hyp, n);
      const NgramCounts r = count_ngrams(ref, n);
      for (const auto& [gram, count] : h) {
        totals[n - 1] += count;
        const auto it = r.find(gram);
        if (it != r.end()) matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    const double total = static_cast<double>(totals[n]);
    double p;
    if (totals[n] == 0) {
      p = kBleuEpsilon;
    } else if (matches[n] == 0) {
      p = kBleuEpsilon / total;
    } else {
      p = static_cast<double>(matches[n]) / total;
    }
    report.precisions[n] = p;
    log_sum += std::log(p);
  }

  if (report.hyp_len < report.ref_len) {
    const double hyp = static_cast<double>(std::max<std::size_t>(report.hyp_len, 1));
    report.brevity_penalty =
        std::max(std::exp(1.0 - static_cast<double>(report.ref_len) / hyp), DBL_MIN);
  }
  report.score = report.brevity_penalty * std::exp(log_sum / 4.0) * 100.0;
  return report;
}

BleuReport sentence_bleu(std::string_view hypothesis, std::string_view reference) {
  const std::string hyp[] = {std::string(hypothesis)};
  const std::string ref[] = {std::string(reference)};
  return bleu(hyp, ref);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_l(std::string_view hypothesis, std::string_view reference) {
  const std::vector<std::string> hyp = tokenize(hypothesis);
  const std::vector<std::string> ref = tokenize(reference);
  if (hyp.empty() && ref.empty()) return 1.0;
  if (hyp.empty() || ref.empty()) return 0.0;
  // 2PR / (P + R) with P = lcs/|hyp| and R = lcs/|ref|, reduced to one division.
  const double lcs = static_cast<double>(lcs_length(hyp, ref));
  return 2.0 * lcs / static_cast<double>(hyp.size() + ref.size());
}

}  // namespace strucbench
