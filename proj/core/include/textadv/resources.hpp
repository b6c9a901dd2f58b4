#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "textadv/pos.hpp"

namespace textadv {

// Word vectors with a precomputed exact nearest-neighbor index (cosine).
//
// File format: one word per line, `word v1 v2 ... vd`, single spaces. Every
// line must carry the same dimensionality. Lookups are case-sensitive as
// stored; callers wanting case folding lower the query themselves.
//
// The neighbor index is built eagerly at load time: for each word the top
// `nn_list_size` other words by cosine similarity, ties broken by insertion
// order. Build cost is quadratic in vocabulary size, which is fine at the
// corpus sizes this engine targets.
class EmbeddingStore {
 public:
  static EmbeddingStore load_file(const std::string& path, std::size_t nn_list_size = 64);
  static EmbeddingStore load(std::istream& in, const std::string& name,
                             std::size_t nn_list_size = 64);
  // Builds directly from (word, vector) pairs; used by tests and fixtures.
  static EmbeddingStore from_vectors(
      const std::vector<std::pair<std::string, std::vector<float>>>& entries,
      std::size_t nn_list_size = 64);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::string& embedding_type() const { return embedding_type_; }
  void set_embedding_type(std::string type) { embedding_type_ = std::move(type); }

  bool contains(std::string_view word) const;
  // Vector for a word, or nullptr when absent.
  const float* vector_of(std::string_view word) const;

  // Top-k neighbors by cosine similarity, most similar first. Returns
  // min(k, neighbor list size) entries; empty for out-of-vocabulary words.
  std::vector<std::pair<std::string, double>> nearest_neighbors(std::string_view word,
                                                                std::size_t k) const;

  // Cosine similarity between two stored words; nullopt if either is absent.
  std::optional<double> cosine_similarity(std::string_view a, std::string_view b) const;
  // Squared euclidean distance between two stored words.
  std::optional<double> mse_distance(std::string_view a, std::string_view b) const;

 private:
  void build_index(std::size_t nn_list_size);

  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<float> vectors_;  // row-major, size() * dim_
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::vector<std::pair<std::uint32_t, float>>> neighbors_;
  std::string embedding_type_ = "paragramcf";
};

// Grouped word substitutions: thesaurus-style (synonym sets) or
// sememe-style (same-meaning sets requiring a POS check at use time).
//
// File format, one headword per line:
//   head<TAB>synonym[:TAG]<TAB>synonym[:TAG]...
// Entry order is preserved so a loaded lexicon dumps back identically.
class SynonymLexicon {
 public:
  enum class Kind { kThesaurus, kSememe };

  explicit SynonymLexicon(Kind kind = Kind::kThesaurus) : kind_(kind) {}

  static SynonymLexicon load_file(const std::string& path, Kind kind);
  static SynonymLexicon load(std::istream& in, const std::string& name, Kind kind);

  Kind kind() const { return kind_; }

  void add(std::string_view head,
           std::vector<std::pair<std::string, std::optional<PosTag>>> synonyms);

  // Synonyms for a word (case-insensitive head lookup). When pos is given,
  // entries carrying a different tag are filtered out; untagged entries pass.
  std::vector<std::string> synonyms(std::string_view word,
                                    std::optional<PosTag> pos = std::nullopt) const;

  std::size_t size() const { return heads_.size(); }
  void dump(std::ostream& out) const;

 private:
  Kind kind_;
  std::vector<std::string> heads_;  // insertion order, lowercased
  std::unordered_map<std::string,
                     std::vector<std::pair<std::string, std::optional<PosTag>>>>
      entries_;
};

// Inflection groups keyed by lemma. File format:
//   lemma<TAB>form:TAG[<TAB>form:TAG...]
// The lemma itself is implicitly one of its own forms (tagged by its first
// listed form's tag). Surface lookup is case-insensitive.
class InflectionTable {
 public:
  static InflectionTable load_file(const std::string& path);
  static InflectionTable load(std::istream& in, const std::string& name);

  void add(std::string_view lemma, std::vector<std::pair<std::string, PosTag>> forms);

  // All forms sharing the word's lemma, excluding the word itself; empty for
  // unknown words.
  std::vector<std::string> other_forms(std::string_view word) const;

  std::size_t size() const { return lemmas_.size(); }

 private:
  std::vector<std::string> lemmas_;
  std::unordered_map<std::string, std::vector<std::pair<std::string, PosTag>>> groups_;
  std::unordered_map<std::string, std::string> lemma_of_;  // surface -> lemma
};

// Case-insensitive stopword membership.
class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(const std::vector<std::string>& words);

  static StopwordSet load_file(const std::string& path);
  static StopwordSet load(std::istream& in);
  // Compact built-in English list.
  static const StopwordSet& default_english();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Character substitution tables for the character-level transformations.
// Both maps are total over [a-z0-9]; loaders enforce it.
class CharMaps {
 public:
  // Visually confusable replacement for a key character, possibly multi-byte.
  static const CharMaps& defaults();

  static CharMaps load_homoglyphs(const std::string& path);
  static CharMaps load_keyboard(const std::string& path);

  // Replacement glyph for a character, empty if unmapped.
  std::string homoglyph(char c) const;
  // Physically adjacent keys for a character, empty if unmapped.
  std::string keyboard_neighbors(char c) const;

  void set_homoglyph(char c, std::string_view glyph);
  void set_keyboard(char c, std::string_view neighbors);

  void validate() const;  // throws if either map misses [a-z0-9]

 private:
  std::unordered_map<char, std::string> homoglyphs_;
  std::unordered_map<char, std::string> keyboard_;
};

// Everything recipe construction may need. Individual entries may be null;
// a component requiring a missing resource reports which one.
struct ResourceSet {
  std::shared_ptr<const EmbeddingStore> embedding;
  std::shared_ptr<const SynonymLexicon> thesaurus;
  std::shared_ptr<const SynonymLexicon> sememes;
  std::shared_ptr<const InflectionTable> inflections;
  std::shared_ptr<const PosLexicon> pos_lexicon;
  std::shared_ptr<const StopwordSet> stopwords;
  std::shared_ptr<const CharMaps> char_maps;

  const StopwordSet& stopwords_or_default() const;
  const CharMaps& char_maps_or_default() const;
};

}  // namespace textadv
