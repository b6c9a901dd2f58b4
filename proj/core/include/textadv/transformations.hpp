#pragma once

#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/linear_model.hpp"
#include "textadv/resources.hpp"

namespace textadv {

// Candidate generator: perturbed copies of a text, each differing from the
// input and touching only allowed word indices. Outputs are deduplicated by
// printable text (identical strings reached by different edits are the same
// search node) and deterministic for a fixed rng state; transformations that
// never sample leave the rng untouched, so their output is seed-independent.
class Transformation {
 public:
  virtual ~Transformation() = default;

  virtual std::string name() const = 0;
  // False for transformations that read model internals (gradients).
  virtual bool is_black_box() const { return true; }
  virtual std::vector<AttackedText> generate(const AttackedText& t,
                                             const std::set<std::size_t>& allowed,
                                             std::mt19937_64& rng) const = 0;
};

// Replaces words with their nearest neighbors in embedding space, up to
// max_candidates per word. Lookups are case-folded; replacements inherit the
// original word's casing.
class WordSwapEmbedding final : public Transformation {
 public:
  WordSwapEmbedding(std::shared_ptr<const EmbeddingStore> store, std::size_t max_candidates);

  std::string name() const override { return "WordSwapEmbedding"; }
  std::size_t max_candidates() const { return max_candidates_; }
  const EmbeddingStore& store() const { return *store_; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;

 private:
  std::shared_ptr<const EmbeddingStore> store_;
  std::size_t max_candidates_;
};

// Replaces words with entries from a synonym lexicon. Thesaurus-kind lexicons
// substitute freely; sememe-kind lexicons additionally require the entry's
// tag to match the word's part of speech, so they need a POS lexicon.
class WordSwapLexicon final : public Transformation {
 public:
  WordSwapLexicon(std::shared_ptr<const SynonymLexicon> lexicon,
                  std::shared_ptr<const PosLexicon> pos_lexicon = nullptr,
                  int max_candidates = -1);

  // WordSwapWordNet for thesaurus-kind, WordSwapHowNet for sememe-kind.
  std::string name() const override;
  int max_candidates() const { return max_candidates_; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;

 private:
  std::shared_ptr<const SynonymLexicon> lexicon_;
  std::shared_ptr<const PosLexicon> pos_lexicon_;
  int max_candidates_;
};

enum class CharSwapKind {
  kInsert,        // a random lowercase letter appears inside the word
  kDelete,        // a character disappears
  kNeighborSwap,  // two adjacent characters trade places
  kSubstitute,    // a character becomes a random lowercase letter
  kHomoglyph,     // a character becomes its visual lookalike
  kQwerty,        // a character becomes a physically adjacent key
};

// Character-level perturbations. Positions are codepoints, so multi-byte
// words stay well-formed. Words of length >= 3 keep their first and last
// characters untouched; shorter words are fair game end to end. With
// random_one, each word yields one randomly placed candidate per call;
// otherwise every eligible position is enumerated and the rng is never
// consulted.
class CharacterTransform final : public Transformation {
 public:
  explicit CharacterTransform(CharSwapKind kind, bool random_one = false,
                              std::shared_ptr<const CharMaps> maps = nullptr);

  std::string name() const override;
  CharSwapKind kind() const { return kind_; }
  bool random_one() const { return random_one_; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;

 private:
  std::vector<std::string> word_variants(const std::string& word, std::mt19937_64& rng) const;
  const CharMaps& maps() const;

  CharSwapKind kind_;
  bool random_one_;
  std::shared_ptr<const CharMaps> maps_;
};

// Deletes one word per candidate.
class WordDeletion final : public Transformation {
 public:
  std::string name() const override { return "WordDeletion"; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;
};

// Replaces words with other inflected forms of the same lemma.
class WordSwapInflections final : public Transformation {
 public:
  explicit WordSwapInflections(std::shared_ptr<const InflectionTable> inflections);

  std::string name() const override { return "WordSwapInflections"; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;

 private:
  std::shared_ptr<const InflectionTable> inflections_;
};

// White-box swap: ranks vocabulary replacements for every allowed index by
// the loss increase they cause (exact on this model family) and keeps the
// top_n overall. The loss is taken against the model's own prediction on the
// input text. Ties break toward the lower word index, then the better
// per-index rank.
class WordSwapGradientBased final : public Transformation {
 public:
  WordSwapGradientBased(std::shared_ptr<const LinearTextClassifier> model, std::size_t top_n);

  std::string name() const override { return "WordSwapGradientBased"; }
  bool is_black_box() const override { return false; }
  std::size_t top_n() const { return top_n_; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;

 private:
  std::shared_ptr<const LinearTextClassifier> model_;
  std::size_t top_n_;
};

// Union of member outputs in member order, deduplicated by printable text.
class CompositeTransformation final : public Transformation {
 public:
  explicit CompositeTransformation(std::vector<std::shared_ptr<const Transformation>> members);

  std::string name() const override { return "CompositeTransformation"; }
  bool is_black_box() const override;
  const std::vector<std::shared_ptr<const Transformation>>& members() const { return members_; }
  std::vector<AttackedText> generate(const AttackedText& t,
                                     const std::set<std::size_t>& allowed,
                                     std::mt19937_64& rng) const override;

 private:
  std::vector<std::shared_ptr<const Transformation>> members_;
};

}  // namespace textadv
