#include "textadv/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "textadv/metrics.hpp"
#include "textadv/util.hpp"

namespace textadv {

namespace {

// Current index per original position, for words that survive from the root.
std::unordered_map<int, std::size_t> original_to_current(const AttackedText& t) {
  std::unordered_map<int, std::size_t> out;
  out.reserve(t.num_words());
  for (std::size_t i = 0; i < t.num_words(); ++i) {
    int oi = t.original_index(i);
    if (oi >= 0) out.emplace(oi, i);
  }
  return out;
}

// Inserted words keyed by (anchor, word), where the anchor is the original
// index of the nearest surviving word to the left (-1 at the front). Two
// texts that inserted the same word at the same anchor agree there even when
// other edits shifted current indices.
std::map<std::pair<int, std::string>, std::size_t> insertion_multiset(const AttackedText& t) {
  std::map<std::pair<int, std::string>, std::size_t> out;
  int anchor = -1;
  for (std::size_t i = 0; i < t.num_words(); ++i) {
    int oi = t.original_index(i);
    if (oi >= 0) {
      anchor = oi;
    } else {
      ++out[{anchor, t.words()[i]}];
    }
  }
  return out;
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Cosine over raw vectors; 0 when either side has no magnitude, so degenerate
// texts fail any positive similarity threshold instead of passing vacuously.
double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na <= 0 || nb <= 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

// --- Word alignment ----------------------------------------------------------

std::vector<std::pair<std::size_t, std::size_t>> aligned_word_swaps(
    const AttackedText& reference, const AttackedText& candidate) {
  auto cand_by_orig = original_to_current(candidate);
  std::vector<std::pair<std::size_t, std::size_t>> swaps;
  for (std::size_t i = 0; i < reference.num_words(); ++i) {
    int oi = reference.original_index(i);
    if (oi < 0) continue;
    auto it = cand_by_orig.find(oi);
    if (it == cand_by_orig.end()) continue;
    if (reference.words()[i] != candidate.words()[it->second]) {
      swaps.emplace_back(i, it->second);
    }
  }
  return swaps;
}

std::size_t aligned_word_differences(const AttackedText& reference,
                                     const AttackedText& candidate) {
  auto ref_by_orig = original_to_current(reference);
  auto cand_by_orig = original_to_current(candidate);

  std::size_t diffs = 0;
  for (const auto& [oi, ri] : ref_by_orig) {
    auto it = cand_by_orig.find(oi);
    if (it == cand_by_orig.end()) {
      ++diffs;  // deleted on the candidate side
    } else if (reference.words()[ri] != candidate.words()[it->second]) {
      ++diffs;
    }
  }
  for (const auto& [oi, ci] : cand_by_orig) {
    (void)ci;
    if (!ref_by_orig.count(oi)) ++diffs;  // deleted on the reference side
  }

  auto ref_ins = insertion_multiset(reference);
  auto cand_ins = insertion_multiset(candidate);
  for (const auto& [key, n] : ref_ins) {
    auto it = cand_ins.find(key);
    std::size_t other = it == cand_ins.end() ? 0 : it->second;
    diffs += n > other ? n - other : other - n;
  }
  for (const auto& [key, n] : cand_ins) {
    if (!ref_ins.count(key)) diffs += n;
  }
  return diffs;
}

// --- Pairwise constraints ------------------------------------------------

LevenshteinEditDistance::LevenshteinEditDistance(std::size_t max_edit_distance,
                                                 bool compare_against_original)
    : Constraint(compare_against_original), max_edit_distance_(max_edit_distance) {}

bool LevenshteinEditDistance::check(const AttackedText& reference,
                                    const AttackedText& candidate) const {
  return levenshtein_distance(reference.text(), candidate.text()) <= max_edit_distance_;
}

MaxWordsPerturbed::MaxWordsPerturbed(std::optional<double> max_percent,
                                     std::optional<std::size_t> max_num_words,
                                     bool compare_against_original)
    : Constraint(compare_against_original),
      max_percent_(max_percent),
      max_num_words_(max_num_words) {}

MaxWordsPerturbed MaxWordsPerturbed::percent(double max_percent, bool compare_against_original) {
  if (max_percent < 0.0 || max_percent > 1.0) {
    throw std::invalid_argument("MaxWordsPerturbed: max_percent must be in [0, 1]");
  }
  return MaxWordsPerturbed(max_percent, std::nullopt, compare_against_original);
}

MaxWordsPerturbed MaxWordsPerturbed::count(std::size_t max_num_words,
                                           bool compare_against_original) {
  return MaxWordsPerturbed(std::nullopt, max_num_words, compare_against_original);
}

bool MaxWordsPerturbed::check(const AttackedText& reference,
                              const AttackedText& candidate) const {
  std::size_t diffs = aligned_word_differences(reference, candidate);
  if (max_num_words_) return diffs <= *max_num_words_;
  if (reference.num_words() == 0) return diffs == 0;
  // Exact ratio: 2 changed words out of 10 pass a 0.2 bound, 3 do not.
  double ratio = static_cast<double>(diffs) / static_cast<double>(reference.num_words());
  return ratio <= *max_percent_;
}

WordEmbeddingDistance::WordEmbeddingDistance(std::shared_ptr<const EmbeddingStore> store,
                                             WordEmbeddingDistanceOptions options)
    : Constraint(options.compare_against_original),
      store_(std::move(store)),
      options_(options) {
  if (!store_) throw std::invalid_argument("WordEmbeddingDistance: null embedding store");
  if (options_.min_cos_sim.has_value() == options_.max_mse_dist.has_value()) {
    throw std::invalid_argument(
        "WordEmbeddingDistance: set exactly one of min_cos_sim and max_mse_dist");
  }
}

bool WordEmbeddingDistance::check(const AttackedText& reference,
                                  const AttackedText& candidate) const {
  for (const auto& [ri, ci] : aligned_word_swaps(reference, candidate)) {
    std::string a = reference.words()[ri];
    std::string b = candidate.words()[ci];
    if (!options_.cased) {
      a = lowercase(a);
      b = lowercase(b);
    }
    if (!store_->contains(a) || !store_->contains(b)) {
      if (options_.include_unknown_words) continue;
      return false;
    }
    if (options_.min_cos_sim) {
      if (*store_->cosine_similarity(a, b) < *options_.min_cos_sim) return false;
    } else {
      if (*store_->mse_distance(a, b) > *options_.max_mse_dist) return false;
    }
  }
  return true;
}

PartOfSpeech::PartOfSpeech(std::shared_ptr<const PosLexicon> lexicon, bool allow_verb_noun_swap,
                           bool compare_against_original)
    : Constraint(compare_against_original),
      lexicon_(std::move(lexicon)),
      allow_verb_noun_swap_(allow_verb_noun_swap) {
  if (!lexicon_) throw std::invalid_argument("PartOfSpeech: null lexicon");
}

bool PartOfSpeech::check(const AttackedText& reference, const AttackedText& candidate) const {
  for (const auto& [ri, ci] : aligned_word_swaps(reference, candidate)) {
    PosTag a = lexicon_->tag(reference.words()[ri]);
    PosTag b = lexicon_->tag(candidate.words()[ci]);
    if (a == b) continue;
    bool noun_verb = (a == PosTag::kNoun && b == PosTag::kVerb) ||
                     (a == PosTag::kVerb && b == PosTag::kNoun);
    if (allow_verb_noun_swap_ && noun_verb) continue;
    return false;
  }
  return true;
}

ThoughtVector::ThoughtVector(std::shared_ptr<const EmbeddingStore> store,
                             ThoughtVectorOptions options)
    : Constraint(options.compare_against_original), store_(std::move(store)), options_(options) {
  if (!store_) throw std::invalid_argument("ThoughtVector: null embedding store");
  if (!(options_.window_size >= 1)) {
    throw std::invalid_argument("ThoughtVector: window_size must be >= 1");
  }
}

namespace {

// Mean of the known word embeddings over words [lo, hi); all-unknown spans
// give the zero vector.
std::vector<double> span_vector(const EmbeddingStore& store,
                                const std::vector<std::string>& words, std::size_t lo,
                                std::size_t hi) {
  std::vector<double> mean(store.dim(), 0.0);
  std::size_t known = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const float* v = store.vector_of(lowercase(words[i]));
    if (!v) continue;
    for (std::size_t d = 0; d < store.dim(); ++d) mean[d] += v[d];
    ++known;
  }
  if (known > 0) {
    for (double& x : mean) x /= static_cast<double>(known);
  }
  return mean;
}

// Window of `size` words centered on index i, clamped to the text.
std::pair<std::size_t, std::size_t> window_around(std::size_t i, std::size_t size,
                                                  std::size_t n) {
  std::size_t len = std::min(size, n);
  if (len == 0) return {0, 0};
  std::size_t half = (len - 1) / 2;
  std::size_t lo = i > half ? i - half : 0;
  if (lo + len > n) lo = n - len;
  return {lo, lo + len};
}

}  // namespace

bool ThoughtVector::check(const AttackedText& reference, const AttackedText& candidate) const {
  auto passes = [&](const std::vector<double>& a, const std::vector<double>& b) {
    if (options_.metric == ThoughtVectorMetric::kMaxEuclidean) {
      return -euclidean(a, b) >= options_.threshold;
    }
    return cosine(a, b) >= options_.threshold;
  };

  if (std::isinf(options_.window_size)) {
    return passes(span_vector(*store_, reference.words(), 0, reference.num_words()),
                  span_vector(*store_, candidate.words(), 0, candidate.num_words()));
  }

  auto w = static_cast<std::size_t>(options_.window_size);
  if (options_.skip_text_shorter_than_window &&
      (reference.num_words() < w || candidate.num_words() < w)) {
    return true;
  }
  for (const auto& [ri, ci] : aligned_word_swaps(reference, candidate)) {
    auto [rlo, rhi] = window_around(ri, w, reference.num_words());
    auto [clo, chi] = window_around(ci, w, candidate.num_words());
    if (!passes(span_vector(*store_, reference.words(), rlo, rhi),
                span_vector(*store_, candidate.words(), clo, chi))) {
      return false;
    }
  }
  return true;
}

BleuDifference::BleuDifference(double max_diff, bool compare_against_original)
    : Constraint(compare_against_original), max_diff_(max_diff) {
  if (max_diff < 0.0 || max_diff > 1.0) {
    throw std::invalid_argument("BleuDifference: max_diff must be in [0, 1]");
  }
}

bool BleuDifference::check(const AttackedText& reference, const AttackedText& candidate) const {
  double diff =
      1.0 - sentence_bleu(candidate.text(), reference.text(), /*add_one_smoothing=*/false);
  return diff <= max_diff_;
}

ChrfDifference::ChrfDifference(double max_diff, bool compare_against_original)
    : Constraint(compare_against_original), max_diff_(max_diff) {
  if (max_diff < 0.0 || max_diff > 1.0) {
    throw std::invalid_argument("ChrfDifference: max_diff must be in [0, 1]");
  }
}

bool ChrfDifference::check(const AttackedText& reference, const AttackedText& candidate) const {
  double diff = 1.0 - chrf_score(candidate.text(), reference.text());
  return diff <= max_diff_;
}

PercentWordsChanged::PercentWordsChanged(double max_percent, bool compare_against_original)
    : Constraint(compare_against_original), max_percent_(max_percent) {
  if (max_percent < 0.0 || max_percent > 1.0) {
    throw std::invalid_argument("PercentWordsChanged: max_percent must be in [0, 1]");
  }
}

bool PercentWordsChanged::check(const AttackedText& reference,
                                const AttackedText& candidate) const {
  std::size_t diffs = aligned_word_differences(reference, candidate);
  if (reference.num_words() == 0) return diffs == 0;
  double ratio = static_cast<double>(diffs) / static_cast<double>(reference.num_words());
  return ratio <= max_percent_;
}

// --- Pre-transformation constraints ----------------------------------------

std::set<std::size_t> RepeatModification::allowed_indices(const AttackedText& t) const {
  std::set<std::size_t> allowed;
  for (std::size_t i = 0; i < t.num_words(); ++i) {
    if (!t.modified_indices().count(i)) allowed.insert(i);
  }
  return allowed;
}

StopwordModification::StopwordModification(std::shared_ptr<const StopwordSet> stopwords)
    : stopwords_(std::move(stopwords)) {}

std::set<std::size_t> StopwordModification::allowed_indices(const AttackedText& t) const {
  const StopwordSet& words = stopwords_ ? *stopwords_ : StopwordSet::default_english();
  std::set<std::size_t> allowed;
  for (std::size_t i = 0; i < t.num_words(); ++i) {
    if (!words.contains(t.words()[i])) allowed.insert(i);
  }
  return allowed;
}

MinWordLength::MinWordLength(std::size_t min_length) : min_length_(min_length) {
  if (min_length == 0) throw std::invalid_argument("MinWordLength: min_length must be >= 1");
}

std::set<std::size_t> MinWordLength::allowed_indices(const AttackedText& t) const {
  std::set<std::size_t> allowed;
  for (std::size_t i = 0; i < t.num_words(); ++i) {
    if (decode_utf8(t.words()[i]).size() >= min_length_) allowed.insert(i);
  }
  return allowed;
}

MaxWordIndexModification::MaxWordIndexModification(std::size_t max_length)
    : max_length_(max_length) {}

std::set<std::size_t> MaxWordIndexModification::allowed_indices(const AttackedText& t) const {
  std::set<std::size_t> allowed;
  std::size_t n = std::min(t.num_words(), max_length_);
  for (std::size_t i = 0; i < n; ++i) allowed.insert(i);
  return allowed;
}

InputColumnModification::InputColumnModification(std::vector<std::string> matching_column_labels,
                                                 std::set<std::string> columns_to_ignore)
    : matching_column_labels_(std::move(matching_column_labels)),
      columns_to_ignore_(std::move(columns_to_ignore)) {}

std::set<std::size_t> InputColumnModification::allowed_indices(const AttackedText& t) const {
  std::set<std::size_t> allowed;
  for (std::size_t i = 0; i < t.num_words(); ++i) allowed.insert(i);
  if (t.column_labels() != matching_column_labels_) return allowed;
  for (const std::string& label : columns_to_ignore_) {
    for (std::size_t i : t.column_indices(label)) allowed.erase(i);
  }
  return allowed;
}

}  // namespace textadv
