#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "textadv/metrics.hpp"
#include "textadv/util.hpp"

using namespace textadv;

namespace {

// Independent reference implementation: full-matrix DP over codepoints.
std::size_t lev_oracle(std::string_view a, std::string_view b) {
  std::vector<char32_t> u = decode_utf8(a);
  std::vector<char32_t> v = decode_utf8(b);
  std::vector<std::vector<std::size_t>> d(u.size() + 1,
                                          std::vector<std::size_t>(v.size() + 1));
  for (std::size_t i = 0; i <= u.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= v.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    for (std::size_t j = 1; j <= v.size(); ++j) {
      std::size_t del = d[i - 1][j] + 1;
      std::size_t ins = d[i][j - 1] + 1;
      std::size_t sub = d[i - 1][j - 1] + (u[i - 1] == v[j - 1] ? 0 : 1);
      d[i][j] = std::min({del, ins, sub});
    }
  }
  return d[u.size()][v.size()];
}

std::string random_string(std::mt19937_64& rng, std::size_t max_len) {
  static const char* alphabet[] = {"a", "b", "c", " ", "é", "漢"};
  std::size_t len = rand_index(rng, max_len + 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += alphabet[rand_index(rng, 6)];
  return out;
}

}  // namespace

TEST_CASE("edit distance on known pairs") {
  CHECK(levenshtein_distance("kitten", "sitting") == 3);
  CHECK(levenshtein_distance("flaw", "lawn") == 2);
  CHECK(levenshtein_distance("", "") == 0);
  CHECK(levenshtein_distance("", "abc") == 3);
  CHECK(levenshtein_distance("abc", "") == 3);
  CHECK(levenshtein_distance("same", "same") == 0);

  // Codepoints, not bytes: the accent is one substitution.
  CHECK(levenshtein_distance("café", "cafe") == 1);
  CHECK(levenshtein_distance("αβγ", "αγ") == 1);
}

TEST_CASE("edit distance agrees with a full-matrix reference") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    std::string a = random_string(rng, 24);
    std::string b = random_string(rng, 24);
    CHECK(levenshtein_distance(a, b) == lev_oracle(a, b));
  }
}

TEST_CASE("edit distance is a metric") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 2000; ++i) {
    std::string a = random_string(rng, 12);
    std::string b = random_string(rng, 12);
    std::string c = random_string(rng, 12);
    std::size_t ab = levenshtein_distance(a, b);
    std::size_t bc = levenshtein_distance(b, c);
    std::size_t ac = levenshtein_distance(a, c);
    CHECK(levenshtein_distance(a, a) == 0);
    CHECK(ab == levenshtein_distance(b, a));
    CHECK(ac <= ab + bc);
    if (ab == 0) CHECK(a == b);
  }
}

TEST_CASE("sentence BLEU on frozen fixtures") {
  // Identical texts score 1; without smoothing that needs at least one
  // 4-gram, since an order with no n-grams at all zeroes the strict product.
  CHECK(sentence_bleu("the cat sat", "the cat sat") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sentence_bleu("the cat sat down", "the cat sat down", false) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sentence_bleu("the cat sat", "the cat sat", false) == 0.0);

  // p1 = 5/6, p2 = 3/5, p3 = 1/4, p4 smoothed to 1/4; BP = 1.
  // (5/6 * 3/5 * 1/4 * 1/4)^(1/4) = 2^(-5/4).
  CHECK(sentence_bleu("the cat sat on the mat", "the cat is on the mat") ==
        doctest::Approx(std::pow(2.0, -1.25)).epsilon(1e-9));
  // Without smoothing the zero-match 4-gram order zeroes the score.
  CHECK(sentence_bleu("the cat sat on the mat", "the cat is on the mat", false) == 0.0);

  // Perfect prefix: every populated order matches fully, orders with no
  // hypothesis n-grams smooth to 1, so only the brevity penalty remains.
  CHECK(sentence_bleu("the cat", "the cat is on the mat") ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
  CHECK(sentence_bleu("the cat", "the cat is on the mat", false) == 0.0);

  // Disjoint texts: unsmoothed is exactly 0, smoothed is not.
  CHECK(sentence_bleu("aa bb", "cc dd", false) == 0.0);
  CHECK(sentence_bleu("aa bb", "cc dd", true) ==
        doctest::Approx(std::pow(1.0 / 6.0, 0.25)).epsilon(1e-9));

  // Empty hypothesis scores 0 regardless of mode.
  CHECK(sentence_bleu("", "the cat") == 0.0);
  CHECK(sentence_bleu("...", "the cat") == 0.0);
}

TEST_CASE("sentence BLEU properties") {
  std::mt19937_64 rng(303);
  static const char* vocab[] = {"a", "b", "c", "d", "e"};
  auto random_sentence = [&](std::size_t max_words, std::size_t* words_out) {
    std::size_t n = rand_index(rng, max_words + 1);
    *words_out = n;
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += vocab[rand_index(rng, 5)];
    }
    return s;
  };
  for (int i = 0; i < 2000; ++i) {
    std::size_t hyp_words = 0, ref_words = 0;
    std::string hyp = random_sentence(10, &hyp_words);
    std::string ref = random_sentence(10, &ref_words);
    double smoothed = sentence_bleu(hyp, ref, true);
    double raw = sentence_bleu(hyp, ref, false);
    CHECK(smoothed >= 0.0);
    CHECK(smoothed <= 1.0 + 1e-12);
    CHECK(raw >= 0.0);
    CHECK(raw <= 1.0 + 1e-12);
    // Smoothing never lowers the score.
    CHECK(smoothed >= raw - 1e-12);
    if (hyp_words > 0) {
      CHECK(sentence_bleu(hyp, hyp, true) == doctest::Approx(1.0).epsilon(1e-12));
    }
    if (hyp_words >= 4) {
      CHECK(sentence_bleu(hyp, hyp, false) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("chrF on frozen fixtures") {
  CHECK(chrf_score("abc", "abc") == doctest::Approx(1.0).epsilon(1e-12));

  // P = (1 + 1 + 0 + 0)/4, R = (1/2 + 1/3 + 0 + 0)/4, beta = 2:
  // F = 5PR / (4P + R) = 25/106.
  CHECK(chrf_score("ab", "abcd") == doctest::Approx(25.0 / 106.0).epsilon(1e-9));

  // Whitespace is stripped before n-gram extraction.
  CHECK(chrf_score("a b c", "abc") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chrf_score("the cat", "thecat") == doctest::Approx(1.0).epsilon(1e-12));

  // Degenerate inputs.
  CHECK(chrf_score("", "") == 0.0);
  CHECK(chrf_score("", "abc") == 0.0);
  CHECK(chrf_score("abc", "") == 0.0);
  CHECK(chrf_score("xyz", "abc") == 0.0);
}

TEST_CASE("chrF properties") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 2000; ++i) {
    std::string a = random_string(rng, 16);
    std::string b = random_string(rng, 16);
    double f = chrf_score(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    // Identity holds whenever the text has any non-whitespace content.
    bool has_content = a.find_first_not_of(" \t\n\r") != std::string::npos;
    if (has_content) CHECK(chrf_score(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
