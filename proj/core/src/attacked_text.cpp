#include "textadv/attacked_text.hpp"

#include <stdexcept>

#include "textadv/util.hpp"

namespace textadv {

namespace {

bool word_byte(unsigned char c) {
  return ascii_alpha(static_cast<char>(c)) || ascii_digit(static_cast<char>(c)) ||
         c >= 0x80;
}

// Apostrophes and hyphens join a word only with word bytes on both sides.
bool joiner_byte(std::string_view s, std::size_t i) {
  char c = s[i];
  if (c != '\'' && c != '-') return false;
  if (i == 0 || i + 1 >= s.size()) return false;
  return word_byte(static_cast<unsigned char>(s[i - 1])) &&
         word_byte(static_cast<unsigned char>(s[i + 1]));
}

}  // namespace

bool word_is_all_caps(std::string_view w) {
  bool saw_alpha = false;
  for (char c : w) {
    if (ascii_alpha(c)) {
      saw_alpha = true;
      if (!ascii_upper(c)) return false;
    }
  }
  return saw_alpha;
}

bool word_is_title_case(std::string_view w) {
  for (char c : w) {
    if (ascii_alpha(c)) return ascii_upper(c);
  }
  return false;
}

std::string match_word_casing(std::string_view original, std::string_view replacement) {
  if (word_is_all_caps(original)) return uppercase(replacement);
  if (word_is_title_case(original)) {
    std::string out(replacement);
    bool first = true;
    for (char& c : out) {
      if (!ascii_alpha(c)) continue;
      c = first ? to_upper_ascii(c) : to_lower_ascii(c);
      first = false;
    }
    return out;
  }
  return std::string(replacement);
}

AttackedText::AttackedText(std::string_view text) { segment(text); }

void AttackedText::segment(std::string_view text) {
  text_.assign(text);
  words_.clear();
  seps_.clear();
  std::string cur_sep;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (word_byte(static_cast<unsigned char>(text[i]))) {
      std::size_t start = i;
      while (i < n && (word_byte(static_cast<unsigned char>(text[i])) || joiner_byte(text, i))) {
        ++i;
      }
      seps_.push_back(cur_sep);
      cur_sep.clear();
      words_.emplace_back(text.substr(start, i - start));
    } else {
      cur_sep.push_back(text[i]);
      ++i;
    }
  }
  seps_.push_back(cur_sep);
  original_index_.resize(words_.size());
  for (std::size_t k = 0; k < words_.size(); ++k) original_index_[k] = static_cast<int>(k);
  column_of_word_.assign(words_.size(), -1);
}

void AttackedText::rebuild_text() {
  text_.clear();
  for (std::size_t i = 0; i < words_.size(); ++i) {
    text_ += seps_[i];
    text_ += words_[i];
  }
  text_ += seps_[words_.size()];
}

AttackedText AttackedText::from_columns(
    const std::vector<std::pair<std::string, std::string>>& columns) {
  std::string joined;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) joined += '\n';
    joined += columns[c].second;
  }
  AttackedText t(joined);
  t.column_names_.reserve(columns.size());
  for (const auto& [label, _] : columns) t.column_names_.push_back(label);

  // Re-segment column by column to attribute words; the joined segmentation
  // matches the per-column one because '\n' is always a separator byte.
  t.column_of_word_.assign(t.words_.size(), -1);
  std::size_t w = 0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    AttackedText piece(columns[c].second);
    for (std::size_t k = 0; k < piece.num_words(); ++k, ++w) {
      t.column_of_word_[w] = static_cast<int>(c);
    }
  }
  if (w != t.num_words()) throw std::logic_error("column word attribution mismatch");
  return t;
}

const std::string& AttackedText::word_at(std::size_t i) const {
  if (i >= words_.size()) throw std::out_of_range("AttackedText: word index out of range");
  return words_[i];
}

int AttackedText::original_index(std::size_t i) const {
  if (i >= original_index_.size()) throw std::out_of_range("AttackedText: word index out of range");
  return original_index_[i];
}

std::vector<std::size_t> AttackedText::column_indices(std::string_view label) const {
  std::vector<std::size_t> out;
  int col = -1;
  for (std::size_t c = 0; c < column_names_.size(); ++c) {
    if (column_names_[c] == label) {
      col = static_cast<int>(c);
      break;
    }
  }
  if (col < 0) return out;
  for (std::size_t i = 0; i < column_of_word_.size(); ++i) {
    if (column_of_word_[i] == col) out.push_back(i);
  }
  return out;
}

AttackedText AttackedText::replace_word_at(std::size_t i, std::string_view replacement) const {
  if (i >= words_.size()) throw std::out_of_range("replace_word_at: index out of range");
  if (replacement.empty()) throw std::invalid_argument("replace_word_at: empty replacement");
  AttackedText out(*this);
  out.words_[i] = match_word_casing(words_[i], replacement);
  out.modified_.insert(i);
  out.rebuild_text();
  return out;
}

AttackedText AttackedText::delete_word_at(std::size_t i) const {
  if (i >= words_.size()) throw std::out_of_range("delete_word_at: index out of range");
  AttackedText out(*this);
  out.words_.erase(out.words_.begin() + static_cast<std::ptrdiff_t>(i));
  // Keep the left separator, drop the right.
  out.seps_.erase(out.seps_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  out.original_index_.erase(out.original_index_.begin() + static_cast<std::ptrdiff_t>(i));
  if (!out.column_of_word_.empty()) {
    out.column_of_word_.erase(out.column_of_word_.begin() + static_cast<std::ptrdiff_t>(i));
  }
  std::set<std::size_t> shifted;
  for (std::size_t m : modified_) {
    if (m == i) continue;
    shifted.insert(m > i ? m - 1 : m);
  }
  out.modified_ = std::move(shifted);
  out.rebuild_text();
  return out;
}

AttackedText AttackedText::insert_word_after(std::size_t i, std::string_view word) const {
  if (i >= words_.size()) throw std::out_of_range("insert_word_after: index out of range");
  if (word.empty()) throw std::invalid_argument("insert_word_after: empty word");
  AttackedText out(*this);
  const std::size_t pos = i + 1;
  out.words_.insert(out.words_.begin() + static_cast<std::ptrdiff_t>(pos), std::string(word));
  // The inserted word is preceded by a plain space; the old boundary
  // separator moves behind it.
  out.seps_.insert(out.seps_.begin() + static_cast<std::ptrdiff_t>(pos), " ");
  out.original_index_.insert(out.original_index_.begin() + static_cast<std::ptrdiff_t>(pos), -1);
  if (!out.column_of_word_.empty()) {
    out.column_of_word_.insert(out.column_of_word_.begin() + static_cast<std::ptrdiff_t>(pos),
                               column_of_word_[i]);
  }
  std::set<std::size_t> shifted;
  for (std::size_t m : modified_) shifted.insert(m >= pos ? m + 1 : m);
  shifted.insert(pos);
  out.modified_ = std::move(shifted);
  out.rebuild_text();
  return out;
}

std::vector<std::string> AttackedText::split_into_sentences() const {
  std::vector<std::string> out;
  const std::string& s = text_;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '.' || s[i] == '!' || s[i] == '?') {
      std::size_t j = i + 1;
      while (j < s.size() && (s[j] == '.' || s[j] == '!' || s[j] == '?')) ++j;
      std::size_t k = j;
      while (k < s.size() && (s[k] == ' ' || s[k] == '\t' || s[k] == '\n' || s[k] == '\r')) ++k;
      if (k > j && k < s.size() && ascii_upper(s[k])) {
        out.push_back(s.substr(start, k - start));
        start = k;
        i = k;
        continue;
      }
      i = j;
      continue;
    }
    ++i;
  }
  if (start < s.size()) out.push_back(s.substr(start));
  return out;
}

}  // namespace textadv
