#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textadv/attacked_text.hpp"

namespace textadv {

// Universal-style coarse tags. OTHER covers anything the lexicon does not
// know, so tagging is total.
enum class PosTag {
  kNoun,
  kVerb,
  kAdj,
  kAdv,
  kPron,
  kDet,
  kAdp,
  kNum,
  kConj,
  kPrt,
  kPunct,
  kOther,
};

std::string_view pos_tag_name(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

// Context-free tag lookup backed by a word list. File format, one entry per
// line: word<TAB>TAG[|TAG...]. The first listed tag is the word's primary
// reading; lookups are case-insensitive. Blank lines and lines starting with
// '#' are skipped.
class PosLexicon {
 public:
  PosLexicon() = default;

  static PosLexicon load_file(const std::string& path);
  static PosLexicon load(std::istream& in, const std::string& name);

  void add(std::string_view word, std::vector<PosTag> tags);

  // Primary tag, or OTHER for unknown words.
  PosTag tag(std::string_view word) const;
  // All listed tags, empty for unknown words.
  const std::vector<PosTag>* tags(std::string_view word) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<PosTag>> entries_;
};

// Tags every word of the text through the lexicon.
std::vector<PosTag> pos_tags(const AttackedText& t, const PosLexicon& lexicon);

}  // namespace textadv
