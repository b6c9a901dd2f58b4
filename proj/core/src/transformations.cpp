#include "textadv/transformations.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "textadv/util.hpp"

namespace textadv {

namespace {

// Drops candidates identical to the input and later duplicates of an earlier
// candidate, comparing printable text.
std::vector<AttackedText> finalize(const AttackedText& input, std::vector<AttackedText> cands) {
  std::vector<AttackedText> out;
  out.reserve(cands.size());
  std::unordered_set<std::string> seen;
  seen.insert(input.text());
  for (auto& c : cands) {
    if (seen.insert(c.text()).second) out.push_back(std::move(c));
  }
  return out;
}

std::size_t argmax_row(const std::vector<double>& row) {
  return static_cast<std::size_t>(
      std::max_element(row.begin(), row.end()) - row.begin());
}

}  // namespace

// --- WordSwapEmbedding -------------------------------------------------------

WordSwapEmbedding::WordSwapEmbedding(std::shared_ptr<const EmbeddingStore> store,
                                     std::size_t max_candidates)
    : store_(std::move(store)), max_candidates_(max_candidates) {
  if (!store_) throw std::invalid_argument("WordSwapEmbedding: null embedding store");
}

std::vector<AttackedText> WordSwapEmbedding::generate(const AttackedText& t,
                                                      const std::set<std::size_t>& allowed,
                                                      std::mt19937_64& /*rng*/) const {
  std::vector<AttackedText> out;
  for (std::size_t i : allowed) {
    if (i >= t.num_words()) continue;
    std::string key = lowercase(t.words()[i]);
    for (const auto& [neighbor, sim] : store_->nearest_neighbors(key, max_candidates_)) {
      (void)sim;
      out.push_back(t.replace_word_at(i, neighbor));
    }
  }
  return finalize(t, std::move(out));
}

// --- WordSwapLexicon ---------------------------------------------------------

WordSwapLexicon::WordSwapLexicon(std::shared_ptr<const SynonymLexicon> lexicon,
                                 std::shared_ptr<const PosLexicon> pos_lexicon,
                                 int max_candidates)
    : lexicon_(std::move(lexicon)),
      pos_lexicon_(std::move(pos_lexicon)),
      max_candidates_(max_candidates) {
  if (!lexicon_) throw std::invalid_argument("WordSwapLexicon: null synonym lexicon");
  if (lexicon_->kind() == SynonymLexicon::Kind::kSememe && !pos_lexicon_) {
    throw std::invalid_argument("WordSwapLexicon: sememe lexicon requires a POS lexicon");
  }
}

std::string WordSwapLexicon::name() const {
  return lexicon_->kind() == SynonymLexicon::Kind::kSememe ? "WordSwapHowNet"
                                                           : "WordSwapWordNet";
}

std::vector<AttackedText> WordSwapLexicon::generate(const AttackedText& t,
                                                    const std::set<std::size_t>& allowed,
                                                    std::mt19937_64& /*rng*/) const {
  std::vector<AttackedText> out;
  for (std::size_t i : allowed) {
    if (i >= t.num_words()) continue;
    const std::string& word = t.words()[i];
    std::optional<PosTag> pos;
    if (lexicon_->kind() == SynonymLexicon::Kind::kSememe) pos = pos_lexicon_->tag(word);
    std::vector<std::string> syns = lexicon_->synonyms(word, pos);
    if (max_candidates_ >= 0 && syns.size() > static_cast<std::size_t>(max_candidates_)) {
      syns.resize(static_cast<std::size_t>(max_candidates_));
    }
    for (const std::string& s : syns) out.push_back(t.replace_word_at(i, s));
  }
  return finalize(t, std::move(out));
}

// --- CharacterTransform ------------------------------------------------------

CharacterTransform::CharacterTransform(CharSwapKind kind, bool random_one,
                                       std::shared_ptr<const CharMaps> maps)
    : kind_(kind), random_one_(random_one), maps_(std::move(maps)) {}

std::string CharacterTransform::name() const {
  switch (kind_) {
    case CharSwapKind::kInsert:
      return "WordSwapRandomCharacterInsertion";
    case CharSwapKind::kDelete:
      return "WordSwapRandomCharacterDeletion";
    case CharSwapKind::kNeighborSwap:
      return "WordSwapNeighboringCharacterSwap";
    case CharSwapKind::kSubstitute:
      return "WordSwapRandomCharacterSubstitution";
    case CharSwapKind::kHomoglyph:
      return "WordSwapHomoglyphSwap";
    case CharSwapKind::kQwerty:
      return "WordSwapQWERTY";
  }
  return "CharacterTransform";
}

const CharMaps& CharacterTransform::maps() const {
  return maps_ ? *maps_ : CharMaps::defaults();
}

namespace {

// Single-character edit positions for a word of `n` codepoints: words of
// length >= 3 keep their first and last characters, shorter words are
// editable everywhere.
std::pair<std::size_t, std::size_t> edit_range(std::size_t n) {
  if (n >= 3) return {1, n - 1};  // [1, n-2] inclusive
  return {0, n};                  // [0, n-1] inclusive
}

// Gap positions for insertion; interior gaps only once the word has a
// protected first and last character.
std::pair<std::size_t, std::size_t> gap_range(std::size_t n) {
  if (n >= 3) return {1, n};  // between chars only
  return {0, n + 1};          // ends included
}

// Adjacent-pair positions (i, i+1) that avoid protected end characters.
std::pair<std::size_t, std::size_t> pair_range(std::size_t n) {
  if (n >= 3) return {1, n >= 4 ? n - 2 : 1};  // [1, n-3] inclusive
  return {0, n >= 2 ? n - 1 : 0};              // [0, n-2] inclusive
}

std::string replace_cp(const std::vector<char32_t>& cps, std::size_t i, std::string_view with) {
  std::string out;
  for (std::size_t k = 0; k < cps.size(); ++k) {
    if (k == i) {
      out += with;
    } else {
      append_utf8(out, cps[k]);
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> CharacterTransform::word_variants(const std::string& word,
                                                           std::mt19937_64& rng) const {
  std::vector<char32_t> cps = decode_utf8(word);
  std::size_t n = cps.size();
  if (n == 0) return {};
  std::vector<std::string> out;

  auto emit_erase = [&](std::size_t i) {
    std::vector<char32_t> v = cps;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(encode_utf8(v));
  };
  auto emit_insert = [&](std::size_t gap, char c) {
    std::vector<char32_t> v = cps;
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(gap), static_cast<char32_t>(c));
    out.push_back(encode_utf8(v));
  };
  auto emit_swap = [&](std::size_t i) {
    std::vector<char32_t> v = cps;
    std::swap(v[i], v[i + 1]);
    out.push_back(encode_utf8(v));
  };
  // The letter at `k` among a-z with the current codepoint skipped, so a
  // substitution never reproduces the original word.
  auto letter_avoiding = [&](std::size_t i, std::size_t k) {
    char cur = cps[i] < 0x80 ? static_cast<char>(cps[i]) : '\0';
    char c = static_cast<char>('a' + k);
    if (cur >= 'a' && cur <= 'z' && c >= cur) c = static_cast<char>(c + 1);
    return c;
  };
  auto substitute_count = [&](std::size_t i) {
    return cps[i] >= 'a' && cps[i] <= 'z' ? std::size_t{25} : std::size_t{26};
  };

  switch (kind_) {
    case CharSwapKind::kDelete: {
      if (n < 2) break;  // a word cannot shrink to nothing
      auto [lo, hi] = edit_range(n);
      if (random_one_) {
        emit_erase(lo + rand_index(rng, hi - lo));
      } else {
        for (std::size_t i = lo; i < hi; ++i) emit_erase(i);
      }
      break;
    }
    case CharSwapKind::kInsert: {
      auto [lo, hi] = gap_range(n);
      if (random_one_) {
        std::size_t gap = lo + rand_index(rng, hi - lo);
        emit_insert(gap, static_cast<char>('a' + rand_index(rng, 26)));
      } else {
        for (std::size_t gap = lo; gap < hi; ++gap) {
          for (char c = 'a'; c <= 'z'; ++c) emit_insert(gap, c);
        }
      }
      break;
    }
    case CharSwapKind::kNeighborSwap: {
      auto [lo, hi] = pair_range(n);
      std::vector<std::size_t> swappable;
      for (std::size_t i = lo; i < hi; ++i) {
        if (cps[i] != cps[i + 1]) swappable.push_back(i);
      }
      if (swappable.empty()) break;
      if (random_one_) {
        emit_swap(swappable[rand_index(rng, swappable.size())]);
      } else {
        for (std::size_t i : swappable) emit_swap(i);
      }
      break;
    }
    case CharSwapKind::kSubstitute: {
      auto [lo, hi] = edit_range(n);
      if (random_one_) {
        std::size_t i = lo + rand_index(rng, hi - lo);
        std::size_t k = rand_index(rng, substitute_count(i));
        out.push_back(replace_cp(cps, i, std::string(1, letter_avoiding(i, k))));
      } else {
        for (std::size_t i = lo; i < hi; ++i) {
          for (std::size_t k = 0; k < substitute_count(i); ++k) {
            out.push_back(replace_cp(cps, i, std::string(1, letter_avoiding(i, k))));
          }
        }
      }
      break;
    }
    case CharSwapKind::kHomoglyph: {
      auto [lo, hi] = edit_range(n);
      std::vector<std::pair<std::size_t, std::string>> mapped;
      for (std::size_t i = lo; i < hi; ++i) {
        if (cps[i] >= 0x80) continue;
        std::string glyph = maps().homoglyph(static_cast<char>(cps[i]));
        if (!glyph.empty()) mapped.emplace_back(i, std::move(glyph));
      }
      if (mapped.empty()) break;
      if (random_one_) {
        const auto& [i, glyph] = mapped[rand_index(rng, mapped.size())];
        out.push_back(replace_cp(cps, i, glyph));
      } else {
        for (const auto& [i, glyph] : mapped) out.push_back(replace_cp(cps, i, glyph));
      }
      break;
    }
    case CharSwapKind::kQwerty: {
      auto [lo, hi] = edit_range(n);
      std::vector<std::pair<std::size_t, std::string>> mapped;
      for (std::size_t i = lo; i < hi; ++i) {
        if (cps[i] >= 0x80) continue;
        std::string neighbors = maps().keyboard_neighbors(static_cast<char>(cps[i]));
        if (!neighbors.empty()) mapped.emplace_back(i, std::move(neighbors));
      }
      if (mapped.empty()) break;
      if (random_one_) {
        const auto& [i, neighbors] = mapped[rand_index(rng, mapped.size())];
        char c = neighbors[rand_index(rng, neighbors.size())];
        out.push_back(replace_cp(cps, i, std::string(1, c)));
      } else {
        for (const auto& [i, neighbors] : mapped) {
          for (char c : neighbors) out.push_back(replace_cp(cps, i, std::string(1, c)));
        }
      }
      break;
    }
  }
  return out;
}

std::vector<AttackedText> CharacterTransform::generate(const AttackedText& t,
                                                       const std::set<std::size_t>& allowed,
                                                       std::mt19937_64& rng) const {
  std::vector<AttackedText> out;
  for (std::size_t i : allowed) {
    if (i >= t.num_words()) continue;
    for (const std::string& v : word_variants(t.words()[i], rng)) {
      if (v.empty()) continue;
      out.push_back(t.replace_word_at(i, v));
    }
  }
  return finalize(t, std::move(out));
}

// --- WordDeletion ------------------------------------------------------------

std::vector<AttackedText> WordDeletion::generate(const AttackedText& t,
                                                 const std::set<std::size_t>& allowed,
                                                 std::mt19937_64& /*rng*/) const {
  std::vector<AttackedText> out;
  for (std::size_t i : allowed) {
    if (i >= t.num_words()) continue;
    out.push_back(t.delete_word_at(i));
  }
  return finalize(t, std::move(out));
}

// --- WordSwapInflections -----------------------------------------------------

WordSwapInflections::WordSwapInflections(std::shared_ptr<const InflectionTable> inflections)
    : inflections_(std::move(inflections)) {
  if (!inflections_) throw std::invalid_argument("WordSwapInflections: null inflection table");
}

std::vector<AttackedText> WordSwapInflections::generate(const AttackedText& t,
                                                        const std::set<std::size_t>& allowed,
                                                        std::mt19937_64& /*rng*/) const {
  std::vector<AttackedText> out;
  for (std::size_t i : allowed) {
    if (i >= t.num_words()) continue;
    for (const std::string& form : inflections_->other_forms(t.words()[i])) {
      out.push_back(t.replace_word_at(i, form));
    }
  }
  return finalize(t, std::move(out));
}

// --- WordSwapGradientBased ---------------------------------------------------

WordSwapGradientBased::WordSwapGradientBased(std::shared_ptr<const LinearTextClassifier> model,
                                             std::size_t top_n)
    : model_(std::move(model)), top_n_(top_n) {
  if (!model_) throw std::invalid_argument("WordSwapGradientBased: null model");
  if (top_n_ == 0) throw std::invalid_argument("WordSwapGradientBased: top_n must be >= 1");
}

std::vector<AttackedText> WordSwapGradientBased::generate(const AttackedText& t,
                                                          const std::set<std::size_t>& allowed,
                                                          std::mt19937_64& /*rng*/) const {
  if (t.num_words() == 0) return {};
  std::size_t label = argmax_row(model_->predict_proba({t.text()})[0]);

  struct Swap {
    double gain;
    std::size_t index;
    std::size_t rank;  // position in that index's own ranking
    std::string word;
  };
  std::vector<Swap> swaps;
  for (std::size_t i : allowed) {
    if (i >= t.num_words()) continue;
    auto ranking = model_->word_swap_loss_ranking(t, label, i);
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      swaps.push_back({ranking[r].second, i, r, std::move(ranking[r].first)});
    }
  }
  std::sort(swaps.begin(), swaps.end(), [](const Swap& a, const Swap& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.index != b.index) return a.index < b.index;
    return a.rank < b.rank;
  });

  // Candidates that casing-matching collapses back into the input (or into an
  // earlier candidate) don't count against top_n.
  std::vector<AttackedText> out;
  std::unordered_set<std::string> seen;
  seen.insert(t.text());
  for (const Swap& s : swaps) {
    if (out.size() >= top_n_) break;
    AttackedText cand = t.replace_word_at(s.index, s.word);
    if (seen.insert(cand.text()).second) out.push_back(std::move(cand));
  }
  return out;
}

// --- CompositeTransformation -------------------------------------------------

CompositeTransformation::CompositeTransformation(
    std::vector<std::shared_ptr<const Transformation>> members)
    : members_(std::move(members)) {
  for (const auto& m : members_) {
    if (!m) throw std::invalid_argument("CompositeTransformation: null member");
  }
}

bool CompositeTransformation::is_black_box() const {
  for (const auto& m : members_) {
    if (!m->is_black_box()) return false;
  }
  return true;
}

std::vector<AttackedText> CompositeTransformation::generate(
    const AttackedText& t, const std::set<std::size_t>& allowed, std::mt19937_64& rng) const {
  std::vector<AttackedText> out;
  for (const auto& m : members_) {
    for (auto& c : m->generate(t, allowed, rng)) out.push_back(std::move(c));
  }
  return finalize(t, std::move(out));
}

}  // namespace textadv
