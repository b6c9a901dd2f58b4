#include "textadv/pos.hpp"

#include <fstream>
#include <stdexcept>

#include "textadv/util.hpp"

namespace textadv {

namespace {

constexpr std::pair<std::string_view, PosTag> kTagTable[] = {
    {"NOUN", PosTag::kNoun}, {"VERB", PosTag::kVerb}, {"ADJ", PosTag::kAdj},
    {"ADV", PosTag::kAdv},   {"PRON", PosTag::kPron}, {"DET", PosTag::kDet},
    {"ADP", PosTag::kAdp},   {"NUM", PosTag::kNum},   {"CONJ", PosTag::kConj},
    {"PRT", PosTag::kPrt},   {"PUNCT", PosTag::kPunct}, {"X", PosTag::kOther},
    {"OTHER", PosTag::kOther},
};

}  // namespace

std::string_view pos_tag_name(PosTag tag) {
  for (const auto& [name, t] : kTagTable) {
    if (t == tag) return name;
  }
  return "OTHER";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (const auto& [n, t] : kTagTable) {
    if (n == name) return t;
  }
  return std::nullopt;
}

PosLexicon PosLexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open POS lexicon: " + path);
  return load(in, path);
}

PosLexicon PosLexicon::load(std::istream& in, const std::string& name) {
  PosLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw std::runtime_error(name + ":" + std::to_string(lineno) +
                               ": expected word<TAB>TAG[|TAG...]");
    }
    std::string word = line.substr(0, tab);
    std::vector<PosTag> tags;
    for (const std::string& part : split(line.substr(tab + 1), '|')) {
      auto tag = parse_pos_tag(trim(part));
      if (!tag) {
        throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                 ": unknown POS tag '" + part + "'");
      }
      tags.push_back(*tag);
    }
    lex.add(word, std::move(tags));
  }
  return lex;
}

void PosLexicon::add(std::string_view word, std::vector<PosTag> tags) {
  entries_[lowercase(word)] = std::move(tags);
}

PosTag PosLexicon::tag(std::string_view word) const {
  auto it = entries_.find(lowercase(word));
  if (it == entries_.end() || it->second.empty()) return PosTag::kOther;
  return it->second.front();
}

const std::vector<PosTag>* PosLexicon::tags(std::string_view word) const {
  auto it = entries_.find(lowercase(word));
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

std::vector<PosTag> pos_tags(const AttackedText& t, const PosLexicon& lexicon) {
  std::vector<PosTag> out;
  out.reserve(t.num_words());
  for (const std::string& w : t.words()) out.push_back(lexicon.tag(w));
  return out;
}

}  // namespace textadv
