#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "strucbench/similarity.hpp"
#include "strucbench/utf8.hpp"

using namespace strucbench;

namespace {

std::vector<std::u32string> all_strings(std::size_t max_len, std::u32string_view alphabet) {
  std::vector<std::u32string> out = {U""};
  std::vector<std::u32string> frontier = {U""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::u32string> next;
    for (const auto& s : frontier) {
      for (char32_t c : alphabet) next.push_back(s + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("levenshtein matches the recursive definition on short strings") {
  const auto strings = all_strings(4, U"abc");
  for (const auto& a : strings) {
    for (const auto& b : strings) {
      REQUIRE(levenshtein_distance(a, b) == oracle::levenshtein(a, b));
    }
  }
}

TEST_CASE("levenshtein known values") {
  CHECK(levenshtein_distance(std::string_view("kitten"), std::string_view("sitting")) == 3);
  CHECK(levenshtein_distance(std::string_view(""), std::string_view("abc")) == 3);
  CHECK(levenshtein_distance(std::string_view("flaw"), std::string_view("lawn")) == 2);
  CHECK(levenshtein_similarity(std::string_view(""), std::string_view("")).value() == 1.0);
  CHECK(levenshtein_similarity(std::string_view("abcd"), std::string_view("abce")).value() == 0.75);
}

TEST_CASE("levenshtein counts code points, not bytes") {
  CHECK(levenshtein_distance(std::string_view("café"), std::string_view("cafe")) == 1);
  CHECK(levenshtein_distance(std::string_view("日本"), std::string_view("日本語")) == 1);
}

TEST_CASE("ratcliff/obershelp against hand-derived block matches") {
  struct Case {
    const char* a;
    const char* b;
    double expected;
  };
  // 2M / T with M the matched characters and T the combined length.
  const Case cases[] = {
      {"abcd", "bcde", 6.0 / 8.0},
      {"", "", 1.0},
      {"abc", "", 0.0},
      {"abc", "abc", 1.0},
      {"abc", "xyz", 0.0},
      {"kitten", "sitting", 8.0 / 13.0},
      {"GESTALT PATTERN MATCHING", "GESTALT PRACTICE", 24.0 / 40.0},
      {"WIKIMEDIA", "WIKIMANIA", 14.0 / 18.0},
      {"tide", "diet", 2.0 / 8.0},
      {"50.0%", "50", 4.0 / 7.0},
      {"Team", "Teams", 8.0 / 9.0},
      {"ab", "ba", 2.0 / 4.0},
  };
  for (const Case& c : cases) {
    CAPTURE(c.a);
    CAPTURE(c.b);
    CHECK(ratcliff_obershelp(std::string_view(c.a), std::string_view(c.b)).value() ==
          doctest::Approx(c.expected).epsilon(1e-12));
  }
}

TEST_CASE("ratcliff/obershelp is order dependent") {
  // The longest block is "t" in one order and "di"/"e"... in the other.
  CHECK(ratcliff_obershelp(std::string_view("tide"), std::string_view("diet")).value() == 0.25);
  CHECK(ratcliff_obershelp(std::string_view("diet"), std::string_view("tide")).value() == 0.5);
}

TEST_CASE("ratcliff/obershelp with many single-character blocks") {
  std::string a(400, 'a'), b;
  for (int i = 0; i < 400; ++i) b += (i % 2 ? 'a' : 'b');
  const double v = ratcliff_obershelp(std::string_view(a), std::string_view(b)).value();
  CHECK(v == 2.0 * 200.0 / 800.0);
}

TEST_CASE("string_similarity is the mean of the two metrics") {
  const std::string_view a = "kitten", b = "sitting";
  const double expected =
      (levenshtein_similarity(a, b).value() + ratcliff_obershelp(a, b).value()) / 2.0;
  CHECK(string_similarity(a, b).value() == expected);
  CHECK(string_similarity(a, a).value() == 1.0);
  CHECK(string_similarity(std::string_view(""), std::string_view("x")).value() == 0.0);
}

TEST_CASE("SimilarityScore range") {
  CHECK(SimilarityScore(1.0 + 1e-13).value() == 1.0);
  CHECK(SimilarityScore(-1e-13).value() == 0.0);
  CHECK_THROWS_AS(SimilarityScore(1.1), std::out_of_range);
  CHECK_THROWS_AS(SimilarityScore(-0.5), std::out_of_range);
}

TEST_CASE("utf8 decoding is tolerant") {
  CHECK(decode_utf8("a\xff" "b") == U"a�" "b");
  CHECK(decode_utf8("\xe6\x97") == U"��");
  CHECK(decode_utf8("\xc0\xaf") == U"��");  // overlong
  CHECK(encode_utf8(decode_utf8("日本語 café")) == "日本語 café");
}

TEST_CASE("string_similarity of abcd/bcde") {
  // Distance 2 (drop a, append e) over length 4, and 2*3/8 from the block "bcd".
  const std::u32string a = U"abcd", b = U"bcde";
  CHECK(oracle::levenshtein(a, b) == 2);
  CHECK(string_similarity(std::string_view("abcd"), std::string_view("bcde")).value() ==
        (0.5 + 0.75) / 2.0);
}
