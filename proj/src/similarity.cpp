#include "strucbench/similarity.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "strucbench/utf8.hpp"

namespace strucbench {

SimilarityScore::SimilarityScore(double value) : value_(value) {
  constexpr double kSlack = 1e-12;
  if (!(value >= -kSlack && value <= 1.0 + kSlack)) {
    throw std::out_of_range("similarity outside [0, 1]: " + std::to_string(value));
  }
  value_ = std::clamp(value, 0.0, 1.0);
}

std::size_t levenshtein_distance(std::u32string_view a, std::u32string_view b) {
  // Keep one DP row over the shorter string.
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;

  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diag = above;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  return levenshtein_distance(decode_utf8(a), decode_utf8(b));
}

SimilarityScore levenshtein_similarity(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return SimilarityScore::one();
  const double distance = static_cast<double>(levenshtein_distance(a, b));
  return SimilarityScore(1.0 - distance / static_cast<double>(longest));
}

SimilarityScore levenshtein_similarity(std::string_view a, std::string_view b) {
  return levenshtein_similarity(decode_utf8(a), decode_utf8(b));
}

namespace {

struct Block {
  std::size_t a_pos = 0;
  std::size_t b_pos = 0;
  std::size_t size = 0;
};

// Longest common substring of a[alo, ahi) and b[blo, bhi). Scans `a` left to
// right and only replaces the best block on a strictly longer match, so ties
// resolve to the earliest start in `a`, then in `b`.
Block longest_match(std::u32string_view a, std::u32string_view b, std::size_t alo,
                    std::size_t ahi, std::size_t blo, std::size_t bhi,
                    std::vector<std::size_t>& prev, std::vector<std::size_t>& cur) {
  Block best{alo, blo, 0};
  const std::size_t width = bhi - blo;
  std::fill(prev.begin(), prev.begin() + width + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    cur[0] = 0;
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = j - blo + 1;
      if (a[i] == b[j]) {
        cur[k] = prev[k - 1] + 1;
        if (cur[k] > best.size) {
          best = Block{i + 1 - cur[k], j + 1 - cur[k], cur[k]};
        }
      } else {
        cur[k] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::size_t ratcliff_obershelp_matches(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  std::size_t matched = 0;
  // Explicit stack of (alo, ahi, blo, bhi) ranges; recursion depth would
  // otherwise grow with input length.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> pending;
  pending.emplace_back(0, a.size(), 0, b.size());
  while (!pending.empty()) {
    const auto [alo, ahi, blo, bhi] = pending.back();
    pending.pop_back();
    if (alo >= ahi || blo >= bhi) continue;
    const Block block = longest_match(a, b, alo, ahi, blo, bhi, prev, cur);
    if (block.size == 0) continue;
    matched += block.size;
    pending.emplace_back(alo, block.a_pos, blo, block.b_pos);
    pending.emplace_back(block.a_pos + block.size, ahi, block.b_pos + block.size, bhi);
  }
  return matched;
}

SimilarityScore ratcliff_obershelp(std::u32string_view a, std::u32string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return SimilarityScore::one();
  const double matched = static_cast<double>(ratcliff_obershelp_matches(a, b));
  return SimilarityScore(2.0 * matched / static_cast<double>(total));
}

SimilarityScore ratcliff_obershelp(std::string_view a, std::string_view b) {
  return ratcliff_obershelp(decode_utf8(a), decode_utf8(b));
}

SimilarityScore string_similarity(std::u32string_view a, std::u32string_view b) {
  if (a == b) return SimilarityScore::one();
  const double lev = levenshtein_similarity(a, b).value();
  const double ro = ratcliff_obershelp(a, b).value();
  return SimilarityScore((lev + ro) / 2.0);
}

SimilarityScore string_similarity(std::string_view a, std::string_view b) {
  if (a == b) return SimilarityScore::one();
  return string_similarity(decode_utf8(a), decode_utf8(b));
}

}  // namespace strucbench
