#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/pos.hpp"
#include "textadv/resources.hpp"

namespace textadv {

// --- Word alignment ----------------------------------------------------------

// Number of word positions that differ between two descendants of the same
// original text. Positions are aligned by original index, so insertions and
// deletions elsewhere never shift the comparison: a position counts when the
// two sides hold different words there, when only one side still has it, and
// for inserted words (which have no original index) when one side carries an
// (anchor, word) insertion the other lacks.
std::size_t aligned_word_differences(const AttackedText& reference,
                                     const AttackedText& candidate);

// Index pairs (in reference, in candidate) that share an original position
// but hold different words; the word-for-word swaps between the two texts.
std::vector<std::pair<std::size_t, std::size_t>> aligned_word_swaps(
    const AttackedText& reference, const AttackedText& candidate);

// --- Pairwise constraints ------------------------------------------------

// Validity predicate over (reference, candidate) pairs. The engine chooses
// the reference per the compare_against_original flag: the original text, or
// the search's previously accepted text.
class Constraint {
 public:
  explicit Constraint(bool compare_against_original)
      : compare_against_original_(compare_against_original) {}
  virtual ~Constraint() = default;

  virtual std::string name() const = 0;
  bool compare_against_original() const { return compare_against_original_; }
  virtual bool check(const AttackedText& reference, const AttackedText& candidate) const = 0;

 private:
  bool compare_against_original_;
};

// Character-level edit distance over the whole text, at most max_edit_distance.
class LevenshteinEditDistance final : public Constraint {
 public:
  LevenshteinEditDistance(std::size_t max_edit_distance, bool compare_against_original = true);

  std::string name() const override { return "LevenshteinEditDistance"; }
  std::size_t max_edit_distance() const { return max_edit_distance_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  std::size_t max_edit_distance_;
};

// Bounds how many aligned word positions may differ, as an absolute count or
// as an exact (unrounded) fraction of the reference's word count.
class MaxWordsPerturbed final : public Constraint {
 public:
  static MaxWordsPerturbed percent(double max_percent, bool compare_against_original = true);
  static MaxWordsPerturbed count(std::size_t max_num_words, bool compare_against_original = true);

  std::string name() const override { return "MaxWordsPerturbed"; }
  std::optional<double> max_percent() const { return max_percent_; }
  std::optional<std::size_t> max_num_words() const { return max_num_words_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  MaxWordsPerturbed(std::optional<double> max_percent, std::optional<std::size_t> max_num_words,
                    bool compare_against_original);

  std::optional<double> max_percent_;
  std::optional<std::size_t> max_num_words_;
};

struct WordEmbeddingDistanceOptions {
  // Exactly one bound must be set.
  std::optional<double> min_cos_sim;
  std::optional<double> max_mse_dist;
  bool cased = false;
  bool include_unknown_words = true;
  bool compare_against_original = true;
};

// Each swapped word pair must stay close in embedding space: cosine at least
// min_cos_sim, or squared euclidean distance at most max_mse_dist.
class WordEmbeddingDistance final : public Constraint {
 public:
  WordEmbeddingDistance(std::shared_ptr<const EmbeddingStore> store,
                        WordEmbeddingDistanceOptions options);

  std::string name() const override { return "WordEmbeddingDistance"; }
  const WordEmbeddingDistanceOptions& options() const { return options_; }
  const EmbeddingStore& store() const { return *store_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  std::shared_ptr<const EmbeddingStore> store_;
  WordEmbeddingDistanceOptions options_;
};

// Each swapped word must keep its part of speech, optionally allowing
// noun/verb interchange. Words the lexicon does not know tag as OTHER and
// therefore only match other unknown words.
class PartOfSpeech final : public Constraint {
 public:
  PartOfSpeech(std::shared_ptr<const PosLexicon> lexicon, bool allow_verb_noun_swap = true,
               bool compare_against_original = true);

  std::string name() const override { return "PartOfSpeech"; }
  bool allow_verb_noun_swap() const { return allow_verb_noun_swap_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  std::shared_ptr<const PosLexicon> lexicon_;
  bool allow_verb_noun_swap_;
};

enum class ThoughtVectorMetric { kMaxEuclidean, kCosine };

struct ThoughtVectorOptions {
  ThoughtVectorMetric metric = ThoughtVectorMetric::kMaxEuclidean;
  double threshold = -0.2;
  // Number of words considered around each swap; infinity means whole-text.
  double window_size = std::numeric_limits<double>::infinity();
  bool skip_text_shorter_than_window = false;
  bool compare_against_original = true;
};

// Compares sentence vectors (mean of known word embeddings, case-folded).
// max_euclidean passes while -distance >= threshold; cosine passes while
// similarity >= threshold.
class ThoughtVector final : public Constraint {
 public:
  ThoughtVector(std::shared_ptr<const EmbeddingStore> store, ThoughtVectorOptions options);

  std::string name() const override { return "ThoughtVector"; }
  const ThoughtVectorOptions& options() const { return options_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  std::shared_ptr<const EmbeddingStore> store_;
  ThoughtVectorOptions options_;
};

// 1 - BLEU(candidate; reference) at most max_diff. Uses strict (unsmoothed)
// BLEU-4 so fully disjoint texts measure a difference of exactly 1.
class BleuDifference final : public Constraint {
 public:
  BleuDifference(double max_diff, bool compare_against_original = true);

  std::string name() const override { return "BleuDifference"; }
  double max_diff() const { return max_diff_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  double max_diff_;
};

// 1 - chrF(candidate; reference) at most max_diff.
class ChrfDifference final : public Constraint {
 public:
  ChrfDifference(double max_diff, bool compare_against_original = true);

  std::string name() const override { return "ChrfDifference"; }
  double max_diff() const { return max_diff_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  double max_diff_;
};

// Fraction of aligned word positions changed at most max_percent (exact
// ratio, no rounding).
class PercentWordsChanged final : public Constraint {
 public:
  PercentWordsChanged(double max_percent, bool compare_against_original = true);

  std::string name() const override { return "PercentWordsChanged"; }
  double max_percent() const { return max_percent_; }
  bool check(const AttackedText& reference, const AttackedText& candidate) const override;

 private:
  double max_percent_;
};

// --- Pre-transformation constraints ----------------------------------------

// Filters which word indices a transformation may touch, before any
// candidates are generated.
class PreTransformationConstraint {
 public:
  virtual ~PreTransformationConstraint() = default;
  virtual std::string name() const = 0;
  virtual std::set<std::size_t> allowed_indices(const AttackedText& t) const = 0;
};

// Words already modified in this attack cannot be modified again.
class RepeatModification final : public PreTransformationConstraint {
 public:
  std::string name() const override { return "RepeatModification"; }
  std::set<std::size_t> allowed_indices(const AttackedText& t) const override;
};

// Stopwords cannot be modified.
class StopwordModification final : public PreTransformationConstraint {
 public:
  // Null falls back to the built-in English list.
  explicit StopwordModification(std::shared_ptr<const StopwordSet> stopwords = nullptr);

  std::string name() const override { return "StopwordModification"; }
  std::set<std::size_t> allowed_indices(const AttackedText& t) const override;

 private:
  std::shared_ptr<const StopwordSet> stopwords_;
};

// Words shorter than min_length codepoints cannot be modified.
class MinWordLength final : public PreTransformationConstraint {
 public:
  explicit MinWordLength(std::size_t min_length);

  std::string name() const override { return "MinWordLength"; }
  std::size_t min_length() const { return min_length_; }
  std::set<std::size_t> allowed_indices(const AttackedText& t) const override;

 private:
  std::size_t min_length_;
};

// Only the first max_length words can be modified.
class MaxWordIndexModification final : public PreTransformationConstraint {
 public:
  explicit MaxWordIndexModification(std::size_t max_length);

  std::string name() const override { return "MaxWordIndexModification"; }
  std::size_t max_length() const { return max_length_; }
  std::set<std::size_t> allowed_indices(const AttackedText& t) const override;

 private:
  std::size_t max_length_;
};

// For multi-column inputs whose labels match exactly, words in the ignored
// columns cannot be modified. Texts with any other column shape pass through
// unfiltered.
class InputColumnModification final : public PreTransformationConstraint {
 public:
  InputColumnModification(std::vector<std::string> matching_column_labels,
                          std::set<std::string> columns_to_ignore);

  std::string name() const override { return "InputColumnModification"; }
  const std::vector<std::string>& matching_column_labels() const {
    return matching_column_labels_;
  }
  const std::set<std::string>& columns_to_ignore() const { return columns_to_ignore_; }
  std::set<std::size_t> allowed_indices(const AttackedText& t) const override;

 private:
  std::vector<std::string> matching_column_labels_;
  std::set<std::string> columns_to_ignore_;
};

}  // namespace textadv
