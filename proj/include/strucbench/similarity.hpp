#ifndef STRUCBENCH_SIMILARITY_HPP
#define STRUCBENCH_SIMILARITY_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace strucbench {

// A similarity in [0, 1]. Construction clamps tiny floating-point excursions
// and rejects anything else.
class SimilarityScore {
 public:
  constexpr SimilarityScore() = default;
  explicit SimilarityScore(double value);

  static SimilarityScore zero() { return SimilarityScore(0.0); }
  static SimilarityScore one() { return SimilarityScore(1.0); }

  double value() const { return value_; }

  friend auto operator<=>(const SimilarityScore&, const SimilarityScore&) = default;

 private:
  double value_ = 0.0;
};

// All string operations below compare Unicode scalar values; the
// std::string_view overloads decode UTF-8 first.

std::size_t levenshtein_distance(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein_distance(std::string_view a, std::string_view b);

// 1 - distance / max(|a|, |b|); 1 when both are empty.
SimilarityScore levenshtein_similarity(std::u32string_view a, std::u32string_view b);
SimilarityScore levenshtein_similarity(std::string_view a, std::string_view b);

// Total length of the blocks found by gestalt pattern matching: take the
// longest common contiguous block (earliest in `a`, then earliest in `b` on
// ties) and recurse on both flanks. No junk heuristics.
std::size_t ratcliff_obershelp_matches(std::u32string_view a, std::u32string_view b);

// 2 * matches / (|a| + |b|); 1 when both are empty.
SimilarityScore ratcliff_obershelp(std::u32string_view a, std::u32string_view b);
SimilarityScore ratcliff_obershelp(std::string_view a, std::string_view b);

// Mean of levenshtein_similarity and ratcliff_obershelp.
SimilarityScore string_similarity(std::u32string_view a, std::u32string_view b);
SimilarityScore string_similarity(std::string_view a, std::string_view b);

}  // namespace strucbench

#endif  // STRUCBENCH_SIMILARITY_HPP
