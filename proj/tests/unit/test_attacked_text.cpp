#include "doctest.h"

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/pos.hpp"
#include "textadv/util.hpp"

using namespace textadv;

namespace {

// Random text with mixed words, punctuation, and whitespace for round-trip
// properties.
std::string random_text(std::mt19937_64& rng) {
  static const char* words[] = {"the",  "Movie", "was",   "good",  "BAD",
                                "aren't", "counter-fitted", "a",   "it's", "ok",
                                "x9",   "Hello"};
  static const char* seps[] = {" ", "  ", ", ", ". ", "! ", " - ", "... ", "\t", "\n"};
  std::ostringstream out;
  if (rand_unit(rng) < 0.3) out << seps[rand_index(rng, 9)];
  std::size_t n = 1 + rand_index(rng, 8);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out << seps[rand_index(rng, 9)];
    out << words[rand_index(rng, 12)];
  }
  if (rand_unit(rng) < 0.5) out << ".";
  return out.str();
}

}  // namespace

TEST_CASE("segmentation splits words and keeps separators verbatim") {
  AttackedText t("The movie was good.");
  CHECK(t.words() == std::vector<std::string>{"The", "movie", "was", "good"});
  CHECK(t.separators() == std::vector<std::string>{"", " ", " ", " ", "."});

  AttackedText contraction("aren't ok");
  CHECK(contraction.words() == std::vector<std::string>{"aren't", "ok"});

  AttackedText hyphen("counter-fitted vectors");
  CHECK(hyphen.words() == std::vector<std::string>{"counter-fitted", "vectors"});

  // Leading apostrophe is not internal.
  AttackedText lead("'tis fine");
  CHECK(lead.words() == std::vector<std::string>{"tis", "fine"});

  // Digits are word characters.
  AttackedText digits("room 101 is free");
  CHECK(digits.words()[1] == "101");

  AttackedText empty("");
  CHECK(empty.num_words() == 0);
  CHECK(empty.text() == "");

  AttackedText only_punct("... !!");
  CHECK(only_punct.num_words() == 0);
  CHECK(only_punct.text() == "... !!");
}

TEST_CASE("segmentation round-trips byte-for-byte on random texts") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    std::string s = random_text(rng);
    AttackedText t(s);
    CHECK(t.text() == s);
    // Rebuilding from parts matches too.
    std::string rebuilt;
    for (std::size_t w = 0; w < t.num_words(); ++w) {
      rebuilt += t.separators()[w];
      rebuilt += t.words()[w];
    }
    rebuilt += t.separators()[t.num_words()];
    CHECK(rebuilt == s);
  }
}

TEST_CASE("multibyte UTF-8 stays inside words") {
  AttackedText t("café time");
  CHECK(t.words() == std::vector<std::string>{"café", "time"});
  CHECK(t.text() == "café time");
}

TEST_CASE("replacement inherits casing") {
  AttackedText t("The movie was good.");
  CHECK(t.replace_word_at(0, "a").text() == "A movie was good.");
  CHECK(t.replace_word_at(3, "great").text() == "The movie was great.");

  AttackedText caps("GOOD stuff");
  CHECK(caps.replace_word_at(0, "bad").text() == "BAD stuff");

  // Mixed-case originals take the replacement verbatim.
  AttackedText mixed("iPhone sales");
  CHECK(mixed.replace_word_at(0, "gizmo").text() == "gizmo sales");

  // All-caps wins over title-case for single capital letters.
  AttackedText single("A movie");
  CHECK(single.replace_word_at(0, "the").text() == "THE movie");

  CHECK(match_word_casing("The", "SPOTLESS") == "Spotless");
}

TEST_CASE("replacement marks the index modified, identity included") {
  AttackedText t("a fine day");
  AttackedText r = t.replace_word_at(1, "fine");
  CHECK(r.text() == "a fine day");
  CHECK(r.modified_indices() == std::set<std::size_t>{1});
}

TEST_CASE("replacement errors") {
  AttackedText t("a b");
  CHECK_THROWS_AS((void)t.replace_word_at(2, "x"), std::out_of_range);
  CHECK_THROWS_AS((void)t.replace_word_at(0, ""), std::invalid_argument);
}

TEST_CASE("deletion keeps the left separator and drops the right") {
  AttackedText t("The movie was perfect.");
  CHECK(t.delete_word_at(1).text() == "The was perfect.");
  CHECK(t.delete_word_at(0).text() == "movie was perfect.");

  AttackedText comma("one, two, three");
  CHECK(comma.delete_word_at(1).text() == "one, three");
}

TEST_CASE("insertion adds a space before the new word") {
  AttackedText t("a b");
  CHECK(t.insert_word_after(0, "x").text() == "a x b");
  CHECK(t.insert_word_after(1, "x").text() == "a b x");

  AttackedText dot("The end.");
  CHECK(dot.insert_word_after(1, "really").text() == "The end really.");
}

TEST_CASE("values are immutable") {
  AttackedText t("a b c");
  std::string before = t.text();
  (void)t.replace_word_at(0, "x");
  (void)t.delete_word_at(2);
  (void)t.insert_word_after(1, "y");
  CHECK(t.text() == before);
  CHECK(t.modified_indices().empty());
}

TEST_CASE("modified indices grow by one per distinct replacement") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    AttackedText t("alpha beta gamma delta epsilon zeta");
    std::size_t n = t.num_words();
    auto order = sample_without_replacement(rng, n, 1 + rand_index(rng, n));
    std::size_t k = 0;
    for (std::size_t idx : order) {
      std::set<std::size_t> before = t.modified_indices();
      t = t.replace_word_at(idx, "swap" + std::to_string(idx));
      ++k;
      CHECK(t.modified_indices().size() == k);
      // Never loses an already-modified index.
      for (std::size_t m : before) CHECK(t.modified_indices().count(m) == 1);
    }
  }
}

TEST_CASE("replacement touches only the targeted word") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = random_text(rng);
    AttackedText t(s);
    if (t.num_words() == 0) continue;
    std::size_t i = rand_index(rng, t.num_words());
    AttackedText r = t.replace_word_at(i, "zzz");
    REQUIRE(r.num_words() == t.num_words());
    CHECK(r.separators() == t.separators());
    for (std::size_t j = 0; j < t.num_words(); ++j) {
      if (j != i) CHECK(r.words()[j] == t.words()[j]);
    }
  }
}

TEST_CASE("original indices track deletes and inserts") {
  AttackedText t("one two three four");
  AttackedText d = t.delete_word_at(1);
  REQUIRE(d.num_words() == 3);
  CHECK(d.original_index(0) == 0);
  CHECK(d.original_index(1) == 2);
  CHECK(d.original_index(2) == 3);

  AttackedText ins = d.insert_word_after(0, "x");
  REQUIRE(ins.num_words() == 4);
  CHECK(ins.original_index(0) == 0);
  CHECK(ins.original_index(1) == -1);
  CHECK(ins.original_index(2) == 2);
  CHECK(ins.modified_indices().count(1) == 1);

  // Modified indices shift with the edit.
  AttackedText r = t.replace_word_at(2, "x");
  AttackedText rd = r.delete_word_at(0);
  CHECK(rd.modified_indices() == std::set<std::size_t>{1});
}

TEST_CASE("column labels partition the words") {
  AttackedText t = AttackedText::from_columns(
      {{"premise", "A man walks."}, {"hypothesis", "Someone moves."}});
  CHECK(t.text() == "A man walks.\nSomeone moves.");
  CHECK(t.column_labels() == std::vector<std::string>{"premise", "hypothesis"});
  CHECK(t.column_indices("premise") == std::vector<std::size_t>{0, 1, 2});
  CHECK(t.column_indices("hypothesis") == std::vector<std::size_t>{3, 4});
  CHECK(t.column_indices("missing").empty());

  // Columns survive edits.
  AttackedText r = t.replace_word_at(3, "nobody");
  CHECK(r.column_indices("hypothesis") == std::vector<std::size_t>{3, 4});
}

TEST_CASE("sentence splitting needs punctuation, space, and a capital") {
  AttackedText t("Hi there. How are you? fine. Yes! Sure thing.");
  auto sentences = t.split_into_sentences();
  REQUIRE(sentences.size() == 4);
  CHECK(sentences[0] == "Hi there. ");
  CHECK(sentences[1] == "How are you? fine. ");
  CHECK(sentences[2] == "Yes! ");
  CHECK(sentences[3] == "Sure thing.");

  CHECK(AttackedText("no boundaries here").split_into_sentences().size() == 1);
  CHECK(AttackedText("").split_into_sentences().empty());
}

TEST_CASE("POS lexicon tags words case-insensitively with first-listed wins") {
  std::istringstream file(
      "good\tADJ\n"
      "movie\tNOUN\n"
      "run\tVERB|NOUN\n"
      "# comment\n"
      "the\tDET\n");
  PosLexicon lex = PosLexicon::load(file, "test");
  CHECK(lex.tag("good") == PosTag::kAdj);
  CHECK(lex.tag("GOOD") == PosTag::kAdj);
  CHECK(lex.tag("run") == PosTag::kVerb);
  CHECK(lex.tag("unknownword") == PosTag::kOther);

  AttackedText t("The movie was good");
  auto tags = pos_tags(t, lex);
  CHECK(tags == std::vector<PosTag>{PosTag::kDet, PosTag::kNoun, PosTag::kOther, PosTag::kAdj});
}

TEST_CASE("deterministic helpers behave as documented") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(rand_index(rng, 7) < 7);
    double u = rand_unit(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  // Same inputs, same seed mix; order matters.
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));

  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);

  std::mt19937_64 sample_rng(9);
  auto picks = sample_without_replacement(sample_rng, 10, 4);
  CHECK(picks.size() == 4);
  std::set<std::size_t> unique(picks.begin(), picks.end());
  CHECK(unique.size() == 4);
  for (std::size_t p : picks) CHECK(p < 10);
  CHECK(sample_without_replacement(sample_rng, 3, 3).size() == 3);
  CHECK_THROWS_AS(sample_without_replacement(sample_rng, 3, 4), std::invalid_argument);

  auto cps = decode_utf8("aé漢");
  REQUIRE(cps.size() == 3);
  CHECK(cps[0] == U'a');
  CHECK(cps[1] == U'é');
  CHECK(cps[2] == U'漢');
  // Invalid bytes pass through one by one instead of throwing.
  CHECK(decode_utf8("\xff\xfe").size() == 2);
}

TEST_CASE("POS lexicon load errors carry line numbers") {
  std::istringstream missing_tab("good ADJ\n");
  CHECK_THROWS_WITH_AS(PosLexicon::load(missing_tab, "lex.tsv"),
                       doctest::Contains("lex.tsv:1"), std::runtime_error);
  std::istringstream bad_tag("good\tADJECTIVE\n");
  CHECK_THROWS_WITH_AS(PosLexicon::load(bad_tag, "lex.tsv"),
                       doctest::Contains("unknown POS tag"), std::runtime_error);
}
