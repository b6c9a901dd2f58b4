#include "textadv/resources.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "textadv/util.hpp"

namespace textadv {

namespace {

[[noreturn]] void parse_fail(const std::string& name, std::size_t lineno,
                             const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

// --- EmbeddingStore ---------------------------------------------------------

EmbeddingStore EmbeddingStore::load_file(const std::string& path, std::size_t nn_list_size) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);
  return load(in, path, nn_list_size);
}

EmbeddingStore EmbeddingStore::load(std::istream& in, const std::string& name,
                                    std::size_t nn_list_size) {
  EmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word.empty()) parse_fail(name, lineno, "missing word");
    std::vector<float> vec;
    double v;
    while (ls >> v) vec.push_back(static_cast<float>(v));
    if (!ls.eof()) parse_fail(name, lineno, "malformed vector component");
    if (vec.empty()) parse_fail(name, lineno, "no vector components");
    if (store.dim_ == 0) {
      store.dim_ = vec.size();
    } else if (vec.size() != store.dim_) {
      parse_fail(name, lineno,
                 "dimension mismatch: expected " + std::to_string(store.dim_) + ", got " +
                     std::to_string(vec.size()));
    }
    if (store.index_.contains(word)) parse_fail(name, lineno, "duplicate word '" + word + "'");
    store.index_.emplace(word, static_cast<std::uint32_t>(store.words_.size()));
    store.words_.push_back(word);
    store.vectors_.insert(store.vectors_.end(), vec.begin(), vec.end());
  }
  store.build_index(nn_list_size);
  return store;
}

EmbeddingStore EmbeddingStore::from_vectors(
    const std::vector<std::pair<std::string, std::vector<float>>>& entries,
    std::size_t nn_list_size) {
  EmbeddingStore store;
  for (const auto& [word, vec] : entries) {
    if (vec.empty()) throw std::invalid_argument("empty vector for '" + word + "'");
    if (store.dim_ == 0) store.dim_ = vec.size();
    if (vec.size() != store.dim_) throw std::invalid_argument("dimension mismatch for '" + word + "'");
    if (store.index_.contains(word)) throw std::invalid_argument("duplicate word '" + word + "'");
    store.index_.emplace(word, static_cast<std::uint32_t>(store.words_.size()));
    store.words_.push_back(word);
    store.vectors_.insert(store.vectors_.end(), vec.begin(), vec.end());
  }
  store.build_index(nn_list_size);
  return store;
}

void EmbeddingStore::build_index(std::size_t nn_list_size) {
  const std::size_t n = words_.size();
  neighbors_.assign(n, {});
  if (n <= 1 || nn_list_size == 0) return;

  std::vector<float> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      double x = vectors_[i * dim_ + d];
      s += x * x;
    }
    norms[i] = static_cast<float>(std::sqrt(s));
  }

  const std::size_t k = std::min(nn_list_size, n - 1);
  std::vector<std::pair<std::uint32_t, float>> sims(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    sims.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double dot = 0.0;
      for (std::size_t d = 0; d < dim_; ++d) {
        dot += static_cast<double>(vectors_[i * dim_ + d]) * vectors_[j * dim_ + d];
      }
      double denom = static_cast<double>(norms[i]) * norms[j];
      float sim = denom > 0.0 ? static_cast<float>(dot / denom) : 0.0f;
      sims.emplace_back(static_cast<std::uint32_t>(j), sim);
    }
    std::stable_sort(sims.begin(), sims.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    neighbors_[i].assign(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(k));
  }
}

bool EmbeddingStore::contains(std::string_view word) const {
  return index_.contains(std::string(word));
}

const float* EmbeddingStore::vector_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return nullptr;
  return &vectors_[it->second * dim_];
}

std::vector<std::pair<std::string, double>> EmbeddingStore::nearest_neighbors(
    std::string_view word, std::size_t k) const {
  std::vector<std::pair<std::string, double>> out;
  auto it = index_.find(std::string(word));
  if (it == index_.end() || k == 0) return out;
  const auto& list = neighbors_[it->second];
  const std::size_t take = std::min(k, list.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.emplace_back(words_[list[i].first], static_cast<double>(list[i].second));
  }
  return out;
}

std::optional<double> EmbeddingStore::cosine_similarity(std::string_view a,
                                                        std::string_view b) const {
  const float* u = vector_of(a);
  const float* v = vector_of(b);
  if (!u || !v) return std::nullopt;
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    dot += static_cast<double>(u[d]) * v[d];
    nu += static_cast<double>(u[d]) * u[d];
    nv += static_cast<double>(v[d]) * v[d];
  }
  double denom = std::sqrt(nu) * std::sqrt(nv);
  if (denom == 0.0) return 0.0;
  return dot / denom;
}

std::optional<double> EmbeddingStore::mse_distance(std::string_view a,
                                                   std::string_view b) const {
  const float* u = vector_of(a);
  const float* v = vector_of(b);
  if (!u || !v) return std::nullopt;
  double s = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    double diff = static_cast<double>(u[d]) - v[d];
    s += diff * diff;
  }
  return s;
}

// --- SynonymLexicon ---------------------------------------------------------

SynonymLexicon SynonymLexicon::load_file(const std::string& path, Kind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon: " + path);
  return load(in, path, kind);
}

SynonymLexicon SynonymLexicon::load(std::istream& in, const std::string& name, Kind kind) {
  SynonymLexicon lex(kind);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < 2) parse_fail(name, lineno, "expected head<TAB>synonym...");
    std::vector<std::pair<std::string, std::optional<PosTag>>> syns;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) parse_fail(name, lineno, "empty synonym field");
      auto colon = fields[i].rfind(':');
      if (colon != std::string::npos && colon + 1 < fields[i].size()) {
        auto tag = parse_pos_tag(fields[i].substr(colon + 1));
        if (!tag) parse_fail(name, lineno, "unknown POS tag in '" + fields[i] + "'");
        syns.emplace_back(fields[i].substr(0, colon), tag);
      } else {
        syns.emplace_back(fields[i], std::nullopt);
      }
    }
    lex.add(fields[0], std::move(syns));
  }
  return lex;
}

void SynonymLexicon::add(
    std::string_view head,
    std::vector<std::pair<std::string, std::optional<PosTag>>> synonyms) {
  std::string key = lowercase(head);
  if (!entries_.contains(key)) heads_.push_back(key);
  entries_[key] = std::move(synonyms);
}

std::vector<std::string> SynonymLexicon::synonyms(std::string_view word,
                                                  std::optional<PosTag> pos) const {
  std::vector<std::string> out;
  auto it = entries_.find(lowercase(word));
  if (it == entries_.end()) return out;
  for (const auto& [syn, tag] : it->second) {
    if (pos && tag && *tag != *pos) continue;
    out.push_back(syn);
  }
  return out;
}

void SynonymLexicon::dump(std::ostream& out) const {
  for (const std::string& head : heads_) {
    out << head;
    for (const auto& [syn, tag] : entries_.at(head)) {
      out << '\t' << syn;
      if (tag) out << ':' << pos_tag_name(*tag);
    }
    out << '\n';
  }
}

// --- InflectionTable --------------------------------------------------------

InflectionTable InflectionTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open inflection table: " + path);
  return load(in, path);
}

InflectionTable InflectionTable::load(std::istream& in, const std::string& name) {
  InflectionTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < 2) parse_fail(name, lineno, "expected lemma<TAB>form:TAG...");
    std::vector<std::pair<std::string, PosTag>> forms;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto colon = fields[i].rfind(':');
      if (colon == std::string::npos || colon + 1 >= fields[i].size()) {
        parse_fail(name, lineno, "form '" + fields[i] + "' missing :TAG");
      }
      auto tag = parse_pos_tag(fields[i].substr(colon + 1));
      if (!tag) parse_fail(name, lineno, "unknown POS tag in '" + fields[i] + "'");
      forms.emplace_back(fields[i].substr(0, colon), *tag);
    }
    table.add(fields[0], std::move(forms));
  }
  return table;
}

void InflectionTable::add(std::string_view lemma,
                          std::vector<std::pair<std::string, PosTag>> forms) {
  std::string key = lowercase(lemma);
  bool lemma_listed = false;
  for (const auto& [form, tag] : forms) {
    if (lowercase(form) == key) lemma_listed = true;
  }
  if (!lemma_listed && !forms.empty()) {
    forms.insert(forms.begin(), {key, forms.front().second});
  }
  if (!groups_.contains(key)) lemmas_.push_back(key);
  for (const auto& [form, tag] : forms) lemma_of_[lowercase(form)] = key;
  groups_[key] = std::move(forms);
}

std::vector<std::string> InflectionTable::other_forms(std::string_view word) const {
  std::vector<std::string> out;
  std::string lower = lowercase(word);
  auto lem = lemma_of_.find(lower);
  if (lem == lemma_of_.end()) return out;
  for (const auto& [form, tag] : groups_.at(lem->second)) {
    if (lowercase(form) != lower) out.push_back(form);
  }
  return out;
}

// --- StopwordSet ------------------------------------------------------------

StopwordSet::StopwordSet(const std::vector<std::string>& words) {
  for (const std::string& w : words) words_.insert(lowercase(w));
}

StopwordSet StopwordSet::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword list: " + path);
  return load(in);
}

StopwordSet StopwordSet::load(std::istream& in) {
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    std::string w = trim(line);
    if (w.empty() || w[0] == '#') continue;
    set.words_.insert(lowercase(w));
  }
  return set;
}

const StopwordSet& StopwordSet::default_english() {
  static const StopwordSet kDefault({
      "a",     "about",  "above", "after",  "again",   "all",    "am",     "an",
      "and",   "any",    "are",   "as",     "at",      "be",     "because", "been",
      "before", "being", "below", "between", "both",   "but",    "by",     "did",
      "do",    "does",   "doing", "down",   "during",  "each",   "few",    "for",
      "from",  "further", "had",  "has",    "have",    "having", "he",     "her",
      "here",  "hers",   "him",   "his",    "how",     "i",      "if",     "in",
      "into",  "is",     "it",    "its",    "itself",  "just",   "me",     "more",
      "most",  "my",     "myself", "no",    "nor",     "not",    "now",    "of",
      "off",   "on",     "once",  "only",   "or",      "other",  "our",    "ours",
      "out",   "over",   "own",   "same",   "she",     "so",     "some",   "such",
      "than",  "that",   "the",   "their",  "theirs",  "them",   "then",   "there",
      "these", "they",   "this",  "those",  "through", "to",     "too",    "under",
      "until", "up",     "very",  "was",    "we",      "were",   "what",   "when",
      "where", "which",  "while", "who",    "whom",    "why",    "will",   "with",
      "you",   "your",   "yours",
  });
  return kDefault;
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.contains(lowercase(word));
}

// --- CharMaps ---------------------------------------------------------------

namespace {

CharMaps build_default_char_maps() {
  CharMaps maps;
  // Visually confusable unicode lookalikes, one per ASCII key.
  const std::pair<char, const char*> homoglyphs[] = {
      {'a', "ɑ"}, {'b', "Ь"}, {'c', "ϲ"}, {'d', "ԁ"},
      {'e', "е"}, {'f', "\U0001d68f"}, {'g', "ɡ"}, {'h', "հ"},
      {'i', "і"}, {'j', "ϳ"}, {'k', "\U0001d4cc"}, {'l', "ⅼ"},
      {'m', "ｍ"}, {'n', "ո"}, {'o', "о"}, {'p', "р"},
      {'q', "ԛ"}, {'r', "ⲅ"}, {'s', "ѕ"}, {'t', "\U0001d69d"},
      {'u', "ս"}, {'v', "ѵ"}, {'w', "ԝ"}, {'x', "×"},
      {'y', "у"}, {'z', "ᴢ"}, {'0', "O"},      {'1', "l"},
      {'2', "ᒿ"}, {'3', "Ʒ"}, {'4', "Ꮞ"}, {'5', "Ƽ"},
      {'6', "б"}, {'7', "\U0001d7d5"}, {'8', "Ȣ"}, {'9', "৭"},
      {'-', "˗"}, {'\'', "`"},
  };
  for (const auto& [key, glyph] : homoglyphs) maps.set_homoglyph(key, glyph);

  const std::pair<char, const char*> keyboard[] = {
      {'a', "qwsz"}, {'b', "vghn"}, {'c', "xdfv"}, {'d', "serfcx"}, {'e', "wsdr"},
      {'f', "drtgvc"}, {'g', "ftyhbv"}, {'h', "gyujnb"}, {'i', "ujko"},
      {'j', "huikmn"}, {'k', "jiolm"}, {'l', "kop"}, {'m', "njk"}, {'n', "bhjm"},
      {'o', "iklp"}, {'p', "ol"}, {'q', "wa"}, {'r', "edft"}, {'s', "awedxz"},
      {'t', "rfgy"}, {'u', "yhji"}, {'v', "cfgb"}, {'w', "qase"}, {'x', "zsdc"},
      {'y', "tghu"}, {'z', "asx"}, {'0', "9p"}, {'1', "2q"}, {'2', "13qw"},
      {'3', "24we"}, {'4', "35er"}, {'5', "46rt"}, {'6', "57ty"}, {'7', "68yu"},
      {'8', "79ui"}, {'9', "80io"},
  };
  for (const auto& [key, neighbors] : keyboard) maps.set_keyboard(key, neighbors);
  maps.validate();
  return maps;
}

}  // namespace

const CharMaps& CharMaps::defaults() {
  static const CharMaps kDefaults = build_default_char_maps();
  return kDefaults;
}

namespace {

std::unordered_map<char, std::string> load_char_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open character map: " + path);
  std::unordered_map<char, std::string> map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab != 1 || tab + 1 >= line.size()) {
      parse_fail(path, lineno, "expected single-char key<TAB>payload");
    }
    map[line[0]] = line.substr(tab + 1);
  }
  return map;
}

}  // namespace

CharMaps CharMaps::load_homoglyphs(const std::string& path) {
  CharMaps maps = defaults();
  for (const auto& [key, payload] : load_char_map(path)) maps.set_homoglyph(key, payload);
  maps.validate();
  return maps;
}

CharMaps CharMaps::load_keyboard(const std::string& path) {
  CharMaps maps = defaults();
  for (const auto& [key, payload] : load_char_map(path)) maps.set_keyboard(key, payload);
  maps.validate();
  return maps;
}

// Lookups are exact: uppercase characters have no entries in the shipped
// tables, so transformations leave those positions alone rather than splice a
// lowercase lookalike into an uppercase word.
std::string CharMaps::homoglyph(char c) const {
  auto it = homoglyphs_.find(c);
  return it == homoglyphs_.end() ? std::string() : it->second;
}

std::string CharMaps::keyboard_neighbors(char c) const {
  auto it = keyboard_.find(c);
  return it == keyboard_.end() ? std::string() : it->second;
}

void CharMaps::set_homoglyph(char c, std::string_view glyph) {
  if (glyph.empty()) throw std::invalid_argument("empty homoglyph payload");
  if (glyph == std::string_view(&c, 1)) {
    throw std::invalid_argument(std::string("homoglyph for '") + c + "' equals its key");
  }
  homoglyphs_[c] = std::string(glyph);
}

void CharMaps::set_keyboard(char c, std::string_view neighbors) {
  if (neighbors.empty()) throw std::invalid_argument("empty keyboard payload");
  keyboard_[c] = std::string(neighbors);
}

void CharMaps::validate() const {
  for (char c = 'a'; c <= 'z'; ++c) {
    if (!homoglyphs_.contains(c)) throw std::runtime_error(std::string("homoglyph map missing '") + c + "'");
    if (!keyboard_.contains(c)) throw std::runtime_error(std::string("keyboard map missing '") + c + "'");
  }
  for (char c = '0'; c <= '9'; ++c) {
    if (!homoglyphs_.contains(c)) throw std::runtime_error(std::string("homoglyph map missing '") + c + "'");
    if (!keyboard_.contains(c)) throw std::runtime_error(std::string("keyboard map missing '") + c + "'");
  }
}

// --- ResourceSet ------------------------------------------------------------

const StopwordSet& ResourceSet::stopwords_or_default() const {
  return stopwords ? *stopwords : StopwordSet::default_english();
}

const CharMaps& ResourceSet::char_maps_or_default() const {
  return char_maps ? *char_maps : CharMaps::defaults();
}

}  // namespace textadv
