#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace textadv {

// A text under attack: an immutable view of a string as (words, separators)
// plus the bookkeeping a search needs to reason about edits.
//
// Segmentation invariant: the printable text always reconstructs the string
// the value was built from, byte for byte. Words are maximal runs of
// letters/digits plus internal apostrophes and hyphens ("aren't" and
// "counter-fitted" are single words); everything between words, including the
// ends, is kept verbatim in the separator list. Bytes >= 0x80 are treated as
// letter characters so multi-byte UTF-8 stays inside words.
//
// Values are immutable: every edit returns a new AttackedText. Along an edit
// chain the value carries
//   - modified_indices: word positions (in current coordinates) that an edit
//     has touched,
//   - original_index(i): the position word i occupied in the chain's root
//     text, or -1 for inserted words,
//   - column labels for multi-field inputs (e.g. premise/hypothesis), so
//     constraints can exclude a column from modification.
class AttackedText {
 public:
  AttackedText() = default;

  // Segments a plain string. The result is its own chain root.
  explicit AttackedText(std::string_view text);

  // Builds a multi-column input. Column texts are joined with a single
  // newline; each column's words carry its label.
  static AttackedText from_columns(
      const std::vector<std::pair<std::string, std::string>>& columns);

  const std::string& text() const { return text_; }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t num_words() const { return words_.size(); }
  const std::string& word_at(std::size_t i) const;
  const std::vector<std::string>& separators() const { return seps_; }

  // Word positions already modified along this chain, current coordinates.
  const std::set<std::size_t>& modified_indices() const { return modified_; }

  // Position of word i in the chain root, or -1 if the word was inserted.
  int original_index(std::size_t i) const;

  // Column labels in order, empty for single-column texts.
  const std::vector<std::string>& column_labels() const { return column_names_; }
  // Current word positions belonging to the named column.
  std::vector<std::size_t> column_indices(std::string_view label) const;

  // Replaces word i. The replacement inherits the old word's shape: an
  // all-caps word uppercases it, a title-case word title-cases it, anything
  // else takes it verbatim. Identity replacements are allowed and still mark
  // the index as modified. Throws std::invalid_argument for an empty
  // replacement and std::out_of_range for a bad index.
  AttackedText replace_word_at(std::size_t i, std::string_view replacement) const;

  // Removes word i. The separator on its left is kept and the one on its
  // right is dropped, so no doubled whitespace appears.
  AttackedText delete_word_at(std::size_t i) const;

  // Inserts a word after position i, preceded by a single space; the old
  // separator ends up after the inserted word. The new word is marked
  // modified and has no original index.
  AttackedText insert_word_after(std::size_t i, std::string_view word) const;

  // Sentence pieces of the printable text. A boundary is a run of ./!/?
  // followed by whitespace and an ASCII capital letter.
  std::vector<std::string> split_into_sentences() const;

  bool operator==(const AttackedText& other) const { return text_ == other.text_; }

 private:
  void segment(std::string_view text);
  void rebuild_text();

  std::string text_;
  std::vector<std::string> words_;
  // seps_[i] precedes words_[i]; seps_[num_words] is the trailing separator.
  std::vector<std::string> seps_;
  std::set<std::size_t> modified_;
  std::vector<int> original_index_;
  std::vector<std::string> column_names_;
  std::vector<int> column_of_word_;  // index into column_names_, or -1
};

// Casing helpers backing the replacement rule; exposed for tests.
bool word_is_all_caps(std::string_view w);
bool word_is_title_case(std::string_view w);
std::string match_word_casing(std::string_view original, std::string_view replacement);

}  // namespace textadv
