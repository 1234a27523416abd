#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "strucbench/text_metrics.hpp"

using namespace strucbench;

TEST_CASE("tokenize detaches punctuation") {
  CHECK(tokenize("(a,b) 50.0%") ==
        std::vector<std::string>{"(", "a", ",", "b", ")", "50", ".", "0", "%"});
  CHECK(tokenize("  ").empty());
  CHECK(tokenize("| Suns | 3 |") == std::vector<std::string>{"|", "Suns", "|", "3", "|"});
}

TEST_CASE("bleu: hand-computed short hypothesis") {
  // hyp "the cat sat" (3 tokens) against "the cat sat on the mat" (6 tokens):
  // clipped 1-, 2- and 3-gram precisions are 3/3, 2/2 and 1/1; there are no
  // 4-grams, so p4 = 1e-9. BP = exp(1 - 6/3).
  const BleuReport r = sentence_bleu("the cat sat", "the cat sat on the mat");
  CHECK(r.hyp_len == 3);
  CHECK(r.ref_len == 6);
  CHECK(r.precisions[0] == 1.0);
  CHECK(r.precisions[1] == 1.0);
  CHECK(r.precisions[2] == 1.0);
  CHECK(r.precisions[3] == 1e-9);
  CHECK(r.brevity_penalty == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  const double expected = 100.0 * std::exp(-1.0) * std::pow(1e-9, 0.25);
  CHECK(r.score == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bleu: clipping") {
  // "the the the the" vs "the cat": unigram matches clipped to 1 of 4.
  const BleuReport r = sentence_bleu("the the the the", "the cat");
  CHECK(r.precisions[0] == 0.25);
  CHECK(r.precisions[1] == 1e-9 / 3.0);
}

TEST_CASE("bleu: identical and disjoint corpora") {
  const std::vector<std::string> refs = {"the quick brown fox jumps over", "| Suns | 3 | 1 |",
                                         "a b c d e f g"};
  CHECK(bleu(refs, refs).score == 100.0);
  const std::vector<std::string> other = {"one two three four five", "six seven eight nine",
                                          "ten eleven twelve thirteen"};
  CHECK(bleu(other, refs).score <= 1e-6);
}

TEST_CASE("bleu: invariants") {
  const std::vector<std::string> hyps = {"the cat sat on a mat", "a b c d", "x y z w v"};
  const std::vector<std::string> refs = {"the cat sat on the mat", "a b c e d", "x y w z v u"};
  const BleuReport r = bleu(hyps, refs);
  double log_sum = 0.0;
  for (double p : r.precisions) log_sum += std::log(p);
  CHECK(r.score == doctest::Approx(r.brevity_penalty * std::exp(log_sum / 4.0) * 100.0).epsilon(1e-9));

  std::vector<std::size_t> order = {0, 1, 2};
  do {
    std::vector<std::string> h, f;
    for (std::size_t i : order) {
      h.push_back(hyps[i]);
      f.push_back(refs[i]);
    }
    CHECK(bleu(h, f).score == r.score);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("bleu: errors and empty hypotheses") {
  CHECK_THROWS_AS(bleu(std::vector<std::string>{}, std::vector<std::string>{}), EmptyCorpus);
  CHECK_THROWS_AS(bleu(std::vector<std::string>{"a"}, std::vector<std::string>{}),
                  std::invalid_argument);
  const BleuReport r = sentence_bleu("", "a b c");
  CHECK(r.brevity_penalty > 0.0);
  CHECK(r.score >= 0.0);
  CHECK(r.score <= 1e-6);
}

TEST_CASE("rouge-l") {
  CHECK(rouge_l("the cat", "the cat sat") == 0.8);
  CHECK(rouge_l("a b c", "a b c") == 1.0);
  CHECK(rouge_l("a b", "c d") == 0.0);
  CHECK(rouge_l("", "a") == 0.0);
}

TEST_CASE("lcs agrees with subsequence enumeration") {
  std::mt19937 rng(5);
  const char* vocab[] = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::string> a(rng() % 9), b(rng() % 9);
    for (auto& t : a) t = vocab[rng() % 4];
    for (auto& t : b) t = vocab[rng() % 4];
    CHECK(lcs_length(a, b) == oracle::lcs_by_enumeration(a, b));
  }
}
