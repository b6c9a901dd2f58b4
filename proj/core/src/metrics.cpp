#include "textadv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/util.hpp"

namespace textadv {

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  std::vector<char32_t> u = decode_utf8(a);
  std::vector<char32_t> v = decode_utf8(b);
  if (u.size() < v.size()) std::swap(u, v);
  const std::size_t n = u.size(), m = v.size();
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (u[i - 1] == v[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

namespace {

std::vector<std::string> bleu_tokens(std::string_view text) {
  return AttackedText(text).words();
}

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts word_ngrams(const std::vector<std::string>& toks, std::size_t n) {
  NgramCounts counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    counts[std::vector<std::string>(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                    toks.begin() + static_cast<std::ptrdiff_t>(i + n))]++;
  }
  return counts;
}

}  // namespace

double sentence_bleu(std::string_view hypothesis, std::string_view reference,
                     bool add_one_smoothing) {
  const std::vector<std::string> hyp = bleu_tokens(hypothesis);
  const std::vector<std::string> ref = bleu_tokens(reference);
  if (hyp.empty()) return 0.0;

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    NgramCounts h = word_ngrams(hyp, n);
    NgramCounts r = word_ngrams(ref, n);
    std::size_t matches = 0, total = 0;
    for (const auto& [gram, count] : h) {
      total += count;
      auto it = r.find(gram);
      if (it != r.end()) matches += std::min(count, it->second);
    }
    double p;
    if (matches > 0) {
      p = static_cast<double>(matches) / static_cast<double>(total);
    } else if (add_one_smoothing) {
      p = 1.0 / static_cast<double>(total + 1);
    } else {
      return 0.0;
    }
    log_sum += 0.25 * std::log(p);
  }

  const double c = static_cast<double>(hyp.size());
  const double r = static_cast<double>(ref.size());
  const double bp = (c >= r) ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum);
}

namespace {

std::vector<char32_t> chrf_chars(std::string_view text) {
  std::vector<char32_t> cps = decode_utf8(text);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r') continue;
    out.push_back(c);
  }
  return out;
}

using CharNgramCounts = std::map<std::u32string, std::size_t>;

CharNgramCounts char_ngrams(const std::vector<char32_t>& chars, std::size_t n) {
  CharNgramCounts counts;
  if (chars.size() < n) return counts;
  for (std::size_t i = 0; i + n <= chars.size(); ++i) {
    counts[std::u32string(chars.begin() + static_cast<std::ptrdiff_t>(i),
                          chars.begin() + static_cast<std::ptrdiff_t>(i + n))]++;
  }
  return counts;
}

}  // namespace

double chrf_score(std::string_view hypothesis, std::string_view reference,
                  int max_order, double beta) {
  const std::vector<char32_t> hyp = chrf_chars(hypothesis);
  const std::vector<char32_t> ref = chrf_chars(reference);

  double precision_sum = 0.0, recall_sum = 0.0;
  int effective_orders = 0;
  for (int n = 1; n <= max_order; ++n) {
    CharNgramCounts h = char_ngrams(hyp, static_cast<std::size_t>(n));
    CharNgramCounts r = char_ngrams(ref, static_cast<std::size_t>(n));
    std::size_t h_total = 0, r_total = 0, matches = 0;
    for (const auto& [gram, count] : h) {
      h_total += count;
      auto it = r.find(gram);
      if (it != r.end()) matches += std::min(count, it->second);
    }
    for (const auto& [gram, count] : r) r_total += count;
    if (h_total == 0 && r_total == 0) continue;
    ++effective_orders;
    precision_sum += h_total > 0 ? static_cast<double>(matches) / static_cast<double>(h_total) : 0.0;
    recall_sum += r_total > 0 ? static_cast<double>(matches) / static_cast<double>(r_total) : 0.0;
  }
  if (effective_orders == 0) return 0.0;
  const double p = precision_sum / effective_orders;
  const double r = recall_sum / effective_orders;
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * p * r / denom;
}

}  // namespace textadv
