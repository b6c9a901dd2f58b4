#pragma once

#include <cstddef>
#include <string_view>

namespace textadv {

// Character-level edit distance over Unicode codepoints (insert, delete,
// substitute, all cost 1).
std::size_t levenshtein_distance(std::string_view a, std::string_view b);

// Sentence BLEU-4 with uniform weights and the standard brevity penalty.
// Texts are word-segmented with the same rule the attack engine uses and
// compared case-sensitively. An empty hypothesis scores 0.
//
// With add_one_smoothing, any n-gram order with zero matches contributes
// (0 + 1) / (total + 1) instead of zeroing the whole product; without it a
// single empty order makes the score 0 (so fully disjoint texts score 0).
double sentence_bleu(std::string_view hypothesis, std::string_view reference,
                     bool add_one_smoothing = true);

// chrF: character n-gram F-score (orders 1..max_order, default 6, beta = 2,
// whitespace stripped). Precision/recall are averaged over the orders that
// have any n-grams on either side.
double chrf_score(std::string_view hypothesis, std::string_view reference,
                  int max_order = 6, double beta = 2.0);

}  // namespace textadv
