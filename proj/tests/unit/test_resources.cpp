#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "textadv/resources.hpp"

using namespace textadv;

TEST_CASE("embedding store loads, looks up, and measures") {
  std::istringstream file(
      "good 1 0\n"
      "fine 0.9 0.1\n"
      "bad 0 1\n");
  EmbeddingStore store = EmbeddingStore::load(file, "emb.txt");
  CHECK(store.dim() == 2);
  CHECK(store.size() == 3);
  CHECK(store.contains("good"));
  CHECK_FALSE(store.contains("Good"));
  CHECK(store.vector_of("missing") == nullptr);
  REQUIRE(store.vector_of("bad") != nullptr);
  CHECK(store.vector_of("bad")[1] == doctest::Approx(1.0f));

  // cos((1,0), (0.9,0.1)) = 0.9 / sqrt(0.82).
  CHECK(store.cosine_similarity("good", "fine") ==
        doctest::Approx(0.9 / std::sqrt(0.82)).epsilon(1e-6));
  CHECK(store.cosine_similarity("good", "bad") == doctest::Approx(0.0));
  CHECK_FALSE(store.cosine_similarity("good", "missing").has_value());

  // Squared euclidean distance.
  CHECK(store.mse_distance("good", "bad") == doctest::Approx(2.0));
  CHECK(store.mse_distance("good", "good") == doctest::Approx(0.0));
}

TEST_CASE("nearest neighbors are ordered by similarity, ties by insertion") {
  EmbeddingStore store = EmbeddingStore::from_vectors({
      {"a", {1.0f, 0.0f}},
      {"b", {0.9f, 0.1f}},
      {"c", {0.0f, 1.0f}},
      {"d", {2.0f, 0.0f}},
      {"e", {3.0f, 0.0f}},
  });
  auto nn = store.nearest_neighbors("a", 4);
  REQUIRE(nn.size() == 4);
  // d and e are both exactly parallel to a; d was inserted first.
  CHECK(nn[0].first == "d");
  CHECK(nn[1].first == "e");
  CHECK(nn[0].second == doctest::Approx(1.0));
  CHECK(nn[2].first == "b");
  CHECK(nn[2].second == doctest::Approx(0.9 / std::sqrt(0.82)).epsilon(1e-6));
  CHECK(nn[3].first == "c");

  // A word is never its own neighbor.
  for (const auto& [w, sim] : nn) CHECK(w != "a");

  CHECK(store.nearest_neighbors("missing", 3).empty());
  CHECK(store.nearest_neighbors("a", 100).size() == 4);
}

TEST_CASE("neighbor lists are capped at build time") {
  EmbeddingStore store = EmbeddingStore::from_vectors(
      {{"a", {1.0f}}, {"b", {2.0f}}, {"c", {3.0f}}, {"d", {4.0f}}},
      /*nn_list_size=*/2);
  CHECK(store.nearest_neighbors("a", 10).size() == 2);
}

TEST_CASE("embedding load errors carry file and line") {
  std::istringstream mismatch("good 1 0\nbad 1 2 3\n");
  CHECK_THROWS_WITH_AS(EmbeddingStore::load(mismatch, "emb.txt"),
                       doctest::Contains("emb.txt:2"), std::runtime_error);

  std::istringstream dup("good 1 0\ngood 0 1\n");
  CHECK_THROWS_WITH_AS(EmbeddingStore::load(dup, "emb.txt"),
                       doctest::Contains("duplicate"), std::runtime_error);

  std::istringstream junk("good 1 zebra\n");
  CHECK_THROWS_WITH_AS(EmbeddingStore::load(junk, "emb.txt"),
                       doctest::Contains("emb.txt:1"), std::runtime_error);

  std::istringstream bare("good\n");
  CHECK_THROWS_AS(EmbeddingStore::load(bare, "emb.txt"), std::runtime_error);
}

TEST_CASE("synonym lexicon filters by POS when asked") {
  std::istringstream file(
      "good\tfine:ADJ\tnice\n"
      "bad\tawful:ADJ\tpoor:NOUN\n");
  SynonymLexicon lex = SynonymLexicon::load(file, "thes.tsv", SynonymLexicon::Kind::kThesaurus);
  CHECK(lex.size() == 2);
  CHECK(lex.synonyms("good") == std::vector<std::string>{"fine", "nice"});
  CHECK(lex.synonyms("GOOD") == std::vector<std::string>{"fine", "nice"});
  // Untagged entries pass any POS filter; tagged entries must match.
  CHECK(lex.synonyms("good", PosTag::kVerb) == std::vector<std::string>{"nice"});
  CHECK(lex.synonyms("bad", PosTag::kAdj) == std::vector<std::string>{"awful"});
  CHECK(lex.synonyms("bad", PosTag::kNoun) == std::vector<std::string>{"poor"});
  CHECK(lex.synonyms("unknown").empty());
}

TEST_CASE("synonym lexicon dump round-trips") {
  std::istringstream file(
      "good\tfine:ADJ\tnice\n"
      "movie\tfilm\tpicture:NOUN\n");
  SynonymLexicon lex = SynonymLexicon::load(file, "t.tsv", SynonymLexicon::Kind::kSememe);
  std::ostringstream first;
  lex.dump(first);
  std::istringstream again(first.str());
  SynonymLexicon relex = SynonymLexicon::load(again, "t2.tsv", SynonymLexicon::Kind::kSememe);
  std::ostringstream second;
  relex.dump(second);
  CHECK(first.str() == second.str());
}

TEST_CASE("synonym lexicon load errors") {
  std::istringstream bad_tag("good\tfine:SHINY\n");
  CHECK_THROWS_WITH_AS(
      SynonymLexicon::load(bad_tag, "t.tsv", SynonymLexicon::Kind::kThesaurus),
      doctest::Contains("t.tsv:1"), std::runtime_error);
}

TEST_CASE("inflection table connects forms through the lemma") {
  std::istringstream file(
      "run\tran:VERB\truns:VERB\trunning:VERB\n"
      "cat\tcats:NOUN\n");
  InflectionTable table = InflectionTable::load(file, "infl.tsv");
  CHECK(table.size() == 2);
  CHECK(table.other_forms("run") ==
        std::vector<std::string>{"ran", "runs", "running"});
  // The lemma is itself a form: looking up an inflection returns it.
  CHECK(table.other_forms("ran") ==
        std::vector<std::string>{"run", "runs", "running"});
  CHECK(table.other_forms("RAN") ==
        std::vector<std::string>{"run", "runs", "running"});
  CHECK(table.other_forms("cats") == std::vector<std::string>{"cat"});
  CHECK(table.other_forms("dog").empty());
}

TEST_CASE("inflection table load errors") {
  std::istringstream untagged("run\tran\n");
  CHECK_THROWS_WITH_AS(InflectionTable::load(untagged, "i.tsv"),
                       doctest::Contains("i.tsv:1"), std::runtime_error);
}

TEST_CASE("stopwords are case-insensitive") {
  StopwordSet set(std::vector<std::string>{"the", "And"});
  CHECK(set.contains("the"));
  CHECK(set.contains("The"));
  CHECK(set.contains("AND"));
  CHECK_FALSE(set.contains("movie"));

  std::istringstream file("a\nan\n\nthe\n");
  StopwordSet loaded = StopwordSet::load(file);
  CHECK(loaded.size() == 3);
  CHECK(loaded.contains("an"));

  const StopwordSet& english = StopwordSet::default_english();
  CHECK(english.contains("the"));
  CHECK(english.contains("and"));
  CHECK(english.contains("is"));
  CHECK_FALSE(english.contains("movie"));
  CHECK_FALSE(english.contains("good"));
}

TEST_CASE("character maps cover all letters and digits") {
  const CharMaps& maps = CharMaps::defaults();
  CHECK_NOTHROW(maps.validate());

  for (char c = 'a'; c <= 'z'; ++c) {
    CHECK_FALSE(maps.homoglyph(c).empty());
    CHECK(maps.homoglyph(c) != std::string(1, c));
    CHECK_FALSE(maps.keyboard_neighbors(c).empty());
  }
  CHECK(maps.keyboard_neighbors('a').find('s') != std::string::npos);
  CHECK(maps.keyboard_neighbors('a').find('q') != std::string::npos);
  CHECK(maps.homoglyph('0') == "O");
  CHECK(maps.homoglyph('1') == "l");
  CHECK(maps.homoglyph('A').empty());
  CHECK(maps.keyboard_neighbors(' ').empty());

  CharMaps copy = maps;
  CHECK_THROWS_AS(copy.set_homoglyph('a', "a"), std::invalid_argument);
  CHECK_THROWS_AS(copy.set_homoglyph('a', ""), std::invalid_argument);
  CHECK_NOTHROW(copy.set_homoglyph('a', "@"));
  CHECK(copy.homoglyph('a') == "@");

  CharMaps empty;
  CHECK_THROWS_AS(empty.validate(), std::runtime_error);
}

TEST_CASE("resource set falls back to built-in stopwords and char maps") {
  ResourceSet resources;
  CHECK(resources.stopwords_or_default().contains("the"));
  CHECK_NOTHROW(resources.char_maps_or_default().validate());

  auto custom = std::make_shared<StopwordSet>(std::vector<std::string>{"zzz"});
  resources.stopwords = custom;
  CHECK(resources.stopwords_or_default().contains("zzz"));
  CHECK_FALSE(resources.stopwords_or_default().contains("the"));
}
