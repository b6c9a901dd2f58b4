#include "doctest.h"

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/constraints.hpp"
#include "textadv/metrics.hpp"
#include "textadv/pos.hpp"
#include "textadv/resources.hpp"
#include "textadv/util.hpp"

using namespace textadv;

namespace {

std::shared_ptr<const EmbeddingStore> tiny_embeddings() {
  // dim 2; "good"/"great" nearly parallel, "bad" orthogonal to "good".
  auto store = std::make_shared<EmbeddingStore>(EmbeddingStore::from_vectors({
      {"good", {1.0f, 0.0f}},
      {"great", {0.9f, 0.1f}},
      {"bad", {0.0f, 1.0f}},
      {"movie", {0.5f, 0.5f}},
  }));
  return store;
}

std::shared_ptr<const PosLexicon> tiny_lexicon() {
  auto lex = std::make_shared<PosLexicon>();
  lex->add("cat", {PosTag::kNoun});
  lex->add("dog", {PosTag::kNoun});
  lex->add("sat", {PosTag::kVerb});
  lex->add("run", {PosTag::kVerb});
  lex->add("happy", {PosTag::kAdj});
  return lex;
}

std::set<std::size_t> all_indices(const AttackedText& t) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < t.num_words(); ++i) out.insert(i);
  return out;
}

std::set<std::size_t> intersect(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  std::set<std::size_t> out;
  for (std::size_t i : a) {
    if (b.count(i)) out.insert(i);
  }
  return out;
}

// Random perturbation of `base` through the public edit operations, staying
// inside a small vocabulary so embedding and POS lookups stay meaningful.
AttackedText random_perturbation(std::mt19937_64& rng, const AttackedText& base,
                                 const std::vector<std::string>& vocab, int max_edits) {
  AttackedText t = base;
  auto edits = rand_index(rng, static_cast<std::uint64_t>(max_edits) + 1);
  for (std::uint64_t e = 0; e < edits; ++e) {
    if (t.num_words() == 0) break;
    auto i = static_cast<std::size_t>(rand_index(rng, t.num_words()));
    auto op = rand_index(rng, 10);
    if (op < 7) {
      t = t.replace_word_at(i, vocab[rand_index(rng, vocab.size())]);
    } else if (op == 7 && t.num_words() > 2) {
      t = t.delete_word_at(i);
    } else {
      t = t.insert_word_after(i, vocab[rand_index(rng, vocab.size())]);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("aligned word diff counts swaps, deletions, and insertions") {
  AttackedText base("one two three four five");

  CHECK(aligned_word_differences(base, base) == 0);

  AttackedText swapped = base.replace_word_at(2, "tres");
  CHECK(aligned_word_differences(base, swapped) == 1);
  auto pairs = aligned_word_swaps(base, swapped);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{2, 2});

  // A deletion counts once and produces no swap pair.
  AttackedText deleted = base.delete_word_at(1);
  CHECK(aligned_word_differences(base, deleted) == 1);
  CHECK(aligned_word_swaps(base, deleted).empty());

  // An insertion counts once on whichever side carries it.
  AttackedText inserted = base.insert_word_after(0, "extra");
  CHECK(aligned_word_differences(base, inserted) == 1);
  CHECK(aligned_word_differences(inserted, base) == 1);

  // Identity replacement flags the index as modified but changes no word, so
  // the aligned diff stays zero.
  AttackedText same = base.replace_word_at(0, "one");
  CHECK(aligned_word_differences(base, same) == 0);
}

TEST_CASE("aligned word diff is keyed by original position, not current index") {
  AttackedText base("one two three four five");

  // Candidate inserts a word up front, shifting all current indices by one,
  // then swaps the word originally at position 3. Alignment must pair the
  // original position 3 across both texts instead of comparing index 3 to
  // index 3.
  AttackedText cand = base.insert_word_after(0, "pad").replace_word_at(4, "quatro");
  CHECK(aligned_word_differences(base, cand) == 2);
  auto pairs = aligned_word_swaps(base, cand);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first == 3);
  CHECK(pairs[0].second == 4);

  // Both sides inserting the same word at the same anchor cancels out.
  AttackedText a = base.insert_word_after(1, "pad");
  AttackedText b = base.insert_word_after(1, "pad").replace_word_at(0, "uno");
  CHECK(aligned_word_differences(a, b) == 1);

  // The same inserted word at a different anchor does not.
  AttackedText c = base.insert_word_after(2, "pad");
  CHECK(aligned_word_differences(a, c) == 2);
}

TEST_CASE("aligned word diff is symmetric") {
  AttackedText base("alpha beta gamma delta epsilon zeta");
  std::mt19937_64 rng(411);
  std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "epsilon",
                                    "zeta",  "eta",  "theta", "iota"};
  for (int trial = 0; trial < 200; ++trial) {
    AttackedText x = random_perturbation(rng, base, vocab, 3);
    AttackedText y = random_perturbation(rng, base, vocab, 3);
    CHECK(aligned_word_differences(x, y) == aligned_word_differences(y, x));
  }
}

TEST_CASE("LevenshteinEditDistance bounds the character edit distance") {
  AttackedText base("the cat sat");
  AttackedText cand = base.replace_word_at(1, "bat");
  REQUIRE(levenshtein_distance(base.text(), cand.text()) == 1);

  CHECK(LevenshteinEditDistance(1).check(base, cand));
  CHECK(LevenshteinEditDistance(30).check(base, cand));
  CHECK_FALSE(LevenshteinEditDistance(0).check(base, cand));
  CHECK(LevenshteinEditDistance(0).check(base, base));
}

TEST_CASE("MaxWordsPerturbed percent uses the exact unrounded ratio") {
  // Ten words: at a 0.2 bound, two changed words pass and three fail.
  AttackedText base("w0 w1 w2 w3 w4 w5 w6 w7 w8 w9");
  AttackedText two = base.replace_word_at(0, "x0").replace_word_at(1, "x1");
  AttackedText three = two.replace_word_at(2, "x2");

  MaxWordsPerturbed pct = MaxWordsPerturbed::percent(0.2);
  CHECK(pct.check(base, two));
  CHECK_FALSE(pct.check(base, three));

  // The count form bounds the absolute number of differing positions.
  CHECK(MaxWordsPerturbed::count(2).check(base, two));
  CHECK_FALSE(MaxWordsPerturbed::count(2).check(base, three));
  CHECK(MaxWordsPerturbed::count(3).check(base, three));

  // Deletions and insertions count as perturbed positions too.
  AttackedText shrunk = base.delete_word_at(0).delete_word_at(0).delete_word_at(0);
  CHECK_FALSE(pct.check(base, shrunk));
  CHECK(MaxWordsPerturbed::percent(0.3).check(base, shrunk));

  CHECK_THROWS_AS(MaxWordsPerturbed::percent(1.5), std::invalid_argument);
  CHECK_THROWS_AS(MaxWordsPerturbed::percent(-0.1), std::invalid_argument);
}

TEST_CASE("MaxWordsPerturbed on an empty reference passes only unchanged text") {
  AttackedText empty("");
  CHECK(MaxWordsPerturbed::percent(0.5).check(empty, empty));
  CHECK_FALSE(MaxWordsPerturbed::percent(0.5).check(empty, AttackedText("hello")));
}

TEST_CASE("WordEmbeddingDistance checks each swapped pair") {
  auto store = tiny_embeddings();
  double cos_good_great = 0.9 / std::sqrt(0.81 + 0.01);
  REQUIRE(cos_good_great == doctest::Approx(0.99388373).epsilon(1e-6));

  AttackedText base("good movie");
  AttackedText close = base.replace_word_at(0, "great");
  AttackedText far = base.replace_word_at(0, "bad");

  WordEmbeddingDistanceOptions cos_opts;
  cos_opts.min_cos_sim = 0.99;
  WordEmbeddingDistance by_cos(store, cos_opts);
  CHECK(by_cos.check(base, close));
  CHECK_FALSE(by_cos.check(base, far));

  cos_opts.min_cos_sim = 0.999;
  CHECK_FALSE(WordEmbeddingDistance(store, cos_opts).check(base, close));

  // mse(good, great) = 0.1^2 + 0.1^2 = 0.02.
  WordEmbeddingDistanceOptions mse_opts;
  mse_opts.max_mse_dist = 0.05;
  CHECK(WordEmbeddingDistance(store, mse_opts).check(base, close));
  mse_opts.max_mse_dist = 0.01;
  CHECK_FALSE(WordEmbeddingDistance(store, mse_opts).check(base, close));

  // One close swap plus one far swap fails as a whole:
  // cos(movie, bad) = 0.5 / sqrt(0.5) ~= 0.707.
  AttackedText both = close.replace_word_at(1, "bad");
  cos_opts.min_cos_sim = 0.8;
  CHECK_FALSE(WordEmbeddingDistance(store, cos_opts).check(base, both));
}

TEST_CASE("WordEmbeddingDistance case folding and unknown-word policy") {
  auto store = tiny_embeddings();

  // Title-case surface forms: replacement inherits the casing, so the cased
  // lookup misses while the uncased one folds to the stored vectors.
  AttackedText base("Good movie");
  AttackedText cand = base.replace_word_at(0, "great");
  REQUIRE(cand.words()[0] == "Great");

  WordEmbeddingDistanceOptions opts;
  opts.min_cos_sim = 0.99;
  opts.cased = false;
  CHECK(WordEmbeddingDistance(store, opts).check(base, cand));

  opts.cased = true;
  opts.include_unknown_words = true;
  CHECK(WordEmbeddingDistance(store, opts).check(base, cand));
  opts.include_unknown_words = false;
  CHECK_FALSE(WordEmbeddingDistance(store, opts).check(base, cand));

  // Out-of-vocabulary swap target.
  AttackedText lower("good movie");
  AttackedText oov = lower.replace_word_at(0, "zzz");
  opts.cased = false;
  opts.include_unknown_words = true;
  CHECK(WordEmbeddingDistance(store, opts).check(lower, oov));
  opts.include_unknown_words = false;
  CHECK_FALSE(WordEmbeddingDistance(store, opts).check(lower, oov));
}

TEST_CASE("WordEmbeddingDistance requires exactly one bound") {
  auto store = tiny_embeddings();
  WordEmbeddingDistanceOptions none;
  CHECK_THROWS_AS(WordEmbeddingDistance(store, none), std::invalid_argument);
  WordEmbeddingDistanceOptions both;
  both.min_cos_sim = 0.5;
  both.max_mse_dist = 0.5;
  CHECK_THROWS_AS(WordEmbeddingDistance(store, both), std::invalid_argument);
  WordEmbeddingDistanceOptions ok;
  ok.min_cos_sim = 0.5;
  CHECK_THROWS_AS(WordEmbeddingDistance(nullptr, ok), std::invalid_argument);
}

TEST_CASE("PartOfSpeech keeps tags fixed, optionally allowing noun/verb swaps") {
  auto lex = tiny_lexicon();
  AttackedText base("the cat sat");

  // NOUN -> NOUN passes either way.
  AttackedText noun = base.replace_word_at(1, "dog");
  CHECK(PartOfSpeech(lex, true).check(base, noun));
  CHECK(PartOfSpeech(lex, false).check(base, noun));

  // NOUN -> VERB passes only with the interchange flag.
  AttackedText verb = base.replace_word_at(1, "run");
  CHECK(PartOfSpeech(lex, true).check(base, verb));
  CHECK_FALSE(PartOfSpeech(lex, false).check(base, verb));

  // VERB -> NOUN is the same interchange seen from the other side.
  AttackedText verb_to_noun = base.replace_word_at(2, "dog");
  CHECK(PartOfSpeech(lex, true).check(base, verb_to_noun));
  CHECK_FALSE(PartOfSpeech(lex, false).check(base, verb_to_noun));

  // NOUN -> ADJ always fails.
  AttackedText adj = base.replace_word_at(1, "happy");
  CHECK_FALSE(PartOfSpeech(lex, true).check(base, adj));

  // Unknown words tag OTHER: they match each other but no known tag.
  AttackedText unk = base.replace_word_at(0, "zzz");
  CHECK(PartOfSpeech(lex, true).check(base, unk));  // "the" is OTHER in this lexicon
  AttackedText known_to_unk = base.replace_word_at(1, "zzz");
  CHECK_FALSE(PartOfSpeech(lex, true).check(base, known_to_unk));

  CHECK_THROWS_AS(PartOfSpeech(nullptr, true), std::invalid_argument);
}

TEST_CASE("ThoughtVector compares mean embeddings over the whole text") {
  // dim 2 store: "a" = (1,0), "b" = (0,1).
  auto store = std::make_shared<EmbeddingStore>(EmbeddingStore::from_vectors({
      {"a", {1.0f, 0.0f}},
      {"b", {0.0f, 1.0f}},
  }));

  AttackedText base("a a");
  AttackedText cand = base.replace_word_at(1, "b");
  // means: (1,0) vs (0.5,0.5); euclidean distance = sqrt(0.5).
  double dist = std::sqrt(0.5);

  ThoughtVectorOptions eu;
  eu.metric = ThoughtVectorMetric::kMaxEuclidean;
  eu.threshold = -(dist + 0.01);
  CHECK(ThoughtVector(store, eu).check(base, cand));
  eu.threshold = -(dist - 0.01);
  CHECK_FALSE(ThoughtVector(store, eu).check(base, cand));

  // cosine((1,0), (0.5,0.5)) = 1/sqrt(2).
  ThoughtVectorOptions cos_opts;
  cos_opts.metric = ThoughtVectorMetric::kCosine;
  cos_opts.threshold = 0.70;
  CHECK(ThoughtVector(store, cos_opts).check(base, cand));
  cos_opts.threshold = 0.71;
  CHECK_FALSE(ThoughtVector(store, cos_opts).check(base, cand));

  // Unknown words drop out of the mean instead of poisoning it.
  AttackedText padded("a zzz");
  ThoughtVectorOptions tight;
  tight.threshold = -1e-9;
  CHECK(ThoughtVector(store, tight).check(AttackedText("a"), padded));

  // Case folding: an uppercased word finds its stored vector.
  CHECK(ThoughtVector(store, tight).check(AttackedText("a"), AttackedText("A")));

  CHECK_THROWS_AS(ThoughtVector(nullptr, ThoughtVectorOptions{}), std::invalid_argument);
  ThoughtVectorOptions bad;
  bad.window_size = 0;
  CHECK_THROWS_AS(ThoughtVector(store, bad), std::invalid_argument);
}

TEST_CASE("ThoughtVector windowed mode looks only at words near each swap") {
  // "c" sits far from both "a" and "b"; with a window of 3 a swap at one end
  // never sees the far end of the text.
  auto store = std::make_shared<EmbeddingStore>(EmbeddingStore::from_vectors({
      {"a", {1.0f, 0.0f, 0.0f}},
      {"b", {0.0f, 1.0f, 0.0f}},
      {"c", {0.0f, 0.0f, 1.0f}},
  }));

  AttackedText base("a a a a c");
  AttackedText cand = base.replace_word_at(0, "b");

  // Whole-text means: (0.8,0,0.2) vs (0.6,0.2,0.2) -> distance sqrt(0.08).
  // Window-3 means around index 0: (1,0,0) vs (2/3,1/3,0) -> sqrt(2)/3.
  double whole = std::sqrt(0.08);
  double windowed = std::sqrt(2.0) / 3.0;
  REQUIRE(windowed > whole);

  ThoughtVectorOptions opts;
  opts.window_size = 3;
  opts.threshold = -(whole + windowed) / 2;  // between the two distances
  CHECK_FALSE(ThoughtVector(store, opts).check(base, cand));

  ThoughtVectorOptions whole_opts;
  whole_opts.threshold = opts.threshold;
  CHECK(ThoughtVector(store, whole_opts).check(base, cand));

  // Texts shorter than the window can be skipped outright.
  ThoughtVectorOptions skip;
  skip.window_size = 10;
  skip.threshold = -1e-12;
  skip.skip_text_shorter_than_window = true;
  CHECK(ThoughtVector(store, skip).check(base, cand));
  skip.skip_text_shorter_than_window = false;
  CHECK_FALSE(ThoughtVector(store, skip).check(base, cand));
}

TEST_CASE("BleuDifference bounds 1 minus strict BLEU") {
  AttackedText base("a b c d e f g h i j");
  AttackedText cand = base.replace_word_at(8, "x");
  // Modified n-gram precisions: 9/10, 7/9, 6/8, 5/7; BLEU = (0.375)^(1/4).
  double diff = 1.0 - std::pow(0.375, 0.25);
  REQUIRE(diff == doctest::Approx(0.21744).epsilon(1e-4));

  CHECK(BleuDifference(0.3).check(base, cand));
  CHECK_FALSE(BleuDifference(0.2).check(base, cand));
  CHECK(BleuDifference(0.0).check(base, base));

  // Fully disjoint texts measure a difference of exactly 1.
  CHECK(BleuDifference(1.0).check(base, AttackedText("q r s t")));
  CHECK_FALSE(BleuDifference(0.99).check(base, AttackedText("q r s t")));

  CHECK_THROWS_AS(BleuDifference(1.01), std::invalid_argument);
}

TEST_CASE("ChrfDifference bounds 1 minus chrF") {
  // chrf("ab", "abcd") = 25/106, so the difference is 81/106.
  AttackedText ref("abcd");
  AttackedText cand("ab");
  double diff = 81.0 / 106.0;

  CHECK(ChrfDifference(diff + 1e-9).check(ref, cand));
  CHECK_FALSE(ChrfDifference(diff - 1e-9).check(ref, cand));
  CHECK(ChrfDifference(0.0).check(ref, ref));

  CHECK_THROWS_AS(ChrfDifference(-0.5), std::invalid_argument);
}

TEST_CASE("PercentWordsChanged mirrors the percent form of MaxWordsPerturbed") {
  AttackedText base("w0 w1 w2 w3 w4 w5 w6 w7 w8 w9");
  AttackedText two = base.replace_word_at(0, "x0").replace_word_at(1, "x1");
  AttackedText three = two.replace_word_at(2, "x2");

  CHECK(PercentWordsChanged(0.2).check(base, two));
  CHECK_FALSE(PercentWordsChanged(0.2).check(base, three));
  CHECK(PercentWordsChanged(0.3).check(base, three));
  CHECK_THROWS_AS(PercentWordsChanged(2.0), std::invalid_argument);
}

TEST_CASE("RepeatModification blocks already-modified indices") {
  AttackedText base("one two three");
  AttackedText edited = base.replace_word_at(1, "dos");

  RepeatModification repeat;
  CHECK(repeat.allowed_indices(base) == std::set<std::size_t>{0, 1, 2});
  CHECK(repeat.allowed_indices(edited) == std::set<std::size_t>{0, 2});
}

TEST_CASE("StopwordModification blocks stopword indices") {
  auto stops = std::make_shared<StopwordSet>(std::vector<std::string>{"the"});
  StopwordModification custom(stops);
  CHECK(custom.allowed_indices(AttackedText("the cat sat")) == std::set<std::size_t>{1, 2});

  // Membership is case-insensitive.
  CHECK(custom.allowed_indices(AttackedText("The cat sat")) == std::set<std::size_t>{1, 2});

  // The default list is the built-in English one.
  StopwordModification dflt;
  auto allowed = dflt.allowed_indices(AttackedText("the cat and a dog"));
  CHECK(allowed == std::set<std::size_t>{1, 4});
}

TEST_CASE("MinWordLength measures codepoints, not bytes") {
  MinWordLength at_least_4(4);
  // "café" is four codepoints (five bytes).
  CHECK(at_least_4.allowed_indices(AttackedText("café is good")) ==
        std::set<std::size_t>{0, 2});
  CHECK_THROWS_AS(MinWordLength(0), std::invalid_argument);
}

TEST_CASE("MaxWordIndexModification allows only a prefix of the text") {
  MaxWordIndexModification first_two(2);
  CHECK(first_two.allowed_indices(AttackedText("a b c d")) == std::set<std::size_t>{0, 1});
  CHECK(first_two.allowed_indices(AttackedText("a")) == std::set<std::size_t>{0});
}

TEST_CASE("InputColumnModification filters ignored columns on matching inputs") {
  AttackedText nli = AttackedText::from_columns(
      {{"premise", "A man walks outside"}, {"hypothesis", "A person moves"}});
  InputColumnModification icm({"premise", "hypothesis"}, {"premise"});

  auto allowed = icm.allowed_indices(nli);
  std::set<std::size_t> hypothesis;
  for (std::size_t i : nli.column_indices("hypothesis")) hypothesis.insert(i);
  CHECK(allowed == hypothesis);
  CHECK(allowed.size() == 3);

  // Column bookkeeping survives edits, so the filter still applies after one.
  AttackedText edited = nli.replace_word_at(*allowed.begin(), "The");
  auto allowed_after = icm.allowed_indices(edited);
  CHECK(allowed_after == allowed);

  // Inputs with a different column shape pass through unfiltered.
  AttackedText plain("just one sentence");
  CHECK(icm.allowed_indices(plain) == all_indices(plain));
  AttackedText other = AttackedText::from_columns({{"question", "Who"}, {"context", "Nobody"}});
  CHECK(icm.allowed_indices(other) == all_indices(other));
}

TEST_CASE("pre-transformation filters commute under intersection") {
  std::vector<std::unique_ptr<PreTransformationConstraint>> filters;
  filters.push_back(std::make_unique<RepeatModification>());
  filters.push_back(std::make_unique<StopwordModification>());
  filters.push_back(std::make_unique<MinWordLength>(3));
  filters.push_back(std::make_unique<MaxWordIndexModification>(6));

  std::mt19937_64 rng(88);
  std::vector<std::string> vocab = {"the", "cat", "sat", "on", "a", "mat", "big", "red", "ox"};
  AttackedText base("the cat sat on a mat today ok");
  for (int trial = 0; trial < 100; ++trial) {
    AttackedText t = random_perturbation(rng, base, vocab, 4);

    std::set<std::size_t> forward = all_indices(t);
    for (const auto& f : filters) forward = intersect(forward, f->allowed_indices(t));

    std::set<std::size_t> backward = all_indices(t);
    for (auto it = filters.rbegin(); it != filters.rend(); ++it) {
      backward = intersect(backward, (*it)->allowed_indices(t));
    }
    CHECK(forward == backward);
  }
}

TEST_CASE("loosening a bound never turns a passing pair into a failing one") {
  std::mt19937_64 rng(1234);
  std::vector<std::string> vocab = {"good", "great", "bad", "movie", "fine", "awful"};
  auto store = tiny_embeddings();

  AttackedText base("good movie good movie good movie good movie");
  for (int trial = 0; trial < 60; ++trial) {
    AttackedText cand = random_perturbation(rng, base, vocab, 4);

    // Levenshtein: wider distance budgets only admit more.
    bool prev = false;
    for (std::size_t bound : {0, 1, 2, 4, 8, 16, 32, 64}) {
      bool now = LevenshteinEditDistance(bound).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }

    // Percent and count bounds.
    prev = false;
    for (double bound : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      bool now = MaxWordsPerturbed::percent(bound).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }
    prev = false;
    for (std::size_t bound : {0, 1, 2, 3, 5, 100}) {
      bool now = MaxWordsPerturbed::count(bound).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }

    // BLEU and chrF difference budgets.
    prev = false;
    for (double bound : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      bool now = BleuDifference(bound).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }
    prev = false;
    for (double bound : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      bool now = ChrfDifference(bound).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }

    // Embedding similarity: lowering min_cos_sim loosens; raising
    // max_mse_dist loosens.
    prev = false;
    for (double min_cos : {0.999, 0.99, 0.9, 0.5, 0.0, -1.0}) {
      WordEmbeddingDistanceOptions o;
      o.min_cos_sim = min_cos;
      o.include_unknown_words = true;
      bool now = WordEmbeddingDistance(store, o).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }
    prev = false;
    for (double max_mse : {0.0, 0.01, 0.1, 0.5, 2.0, 10.0}) {
      WordEmbeddingDistanceOptions o;
      o.max_mse_dist = max_mse;
      o.include_unknown_words = true;
      bool now = WordEmbeddingDistance(store, o).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }

    // Thought vector: lowering the threshold loosens in both metrics.
    prev = false;
    for (double threshold : {0.0, -0.1, -0.2, -0.5, -1.0, -10.0}) {
      ThoughtVectorOptions o;
      o.threshold = threshold;
      bool now = ThoughtVector(store, o).check(base, cand);
      if (prev) CHECK(now);
      prev = now;
    }
  }
}

TEST_CASE("the comparison flag routes reference selection, not the check itself") {
  // check() is a pure pairwise predicate; the flag only tells the engine
  // which reference to hand in. On the first perturbation step the previous
  // text is the original, so both settings see the same pair.
  std::mt19937_64 rng(77);
  std::vector<std::string> vocab = {"good", "great", "bad", "movie"};
  AttackedText original("good movie good movie");
  auto store = tiny_embeddings();

  for (int trial = 0; trial < 50; ++trial) {
    AttackedText first_step = random_perturbation(rng, original, vocab, 1);

    CHECK(LevenshteinEditDistance(3, true).check(original, first_step) ==
          LevenshteinEditDistance(3, false).check(original, first_step));

    WordEmbeddingDistanceOptions strict;
    strict.min_cos_sim = 0.9;
    strict.compare_against_original = true;
    WordEmbeddingDistanceOptions loose_ref = strict;
    loose_ref.compare_against_original = false;
    CHECK(WordEmbeddingDistance(store, strict).check(original, first_step) ==
          WordEmbeddingDistance(store, loose_ref).check(original, first_step));
  }

  CHECK(LevenshteinEditDistance(3, true).compare_against_original());
  CHECK_FALSE(LevenshteinEditDistance(3, false).compare_against_original());
  CHECK(MaxWordsPerturbed::percent(0.5, false).compare_against_original() == false);
}

TEST_CASE("constraint names are stable") {
  auto store = tiny_embeddings();
  WordEmbeddingDistanceOptions o;
  o.min_cos_sim = 0.5;

  CHECK(LevenshteinEditDistance(30).name() == "LevenshteinEditDistance");
  CHECK(MaxWordsPerturbed::percent(0.2).name() == "MaxWordsPerturbed");
  CHECK(WordEmbeddingDistance(store, o).name() == "WordEmbeddingDistance");
  CHECK(PartOfSpeech(tiny_lexicon()).name() == "PartOfSpeech");
  CHECK(ThoughtVector(store, ThoughtVectorOptions{}).name() == "ThoughtVector");
  CHECK(BleuDifference(0.5).name() == "BleuDifference");
  CHECK(ChrfDifference(0.5).name() == "ChrfDifference");
  CHECK(PercentWordsChanged(0.5).name() == "PercentWordsChanged");
  CHECK(RepeatModification().name() == "RepeatModification");
  CHECK(StopwordModification().name() == "StopwordModification");
  CHECK(MinWordLength(4).name() == "MinWordLength");
  CHECK(MaxWordIndexModification(10).name() == "MaxWordIndexModification");
  CHECK(InputColumnModification({"premise", "hypothesis"}, {"premise"}).name() ==
        "InputColumnModification");
}
