#include "textadv/augment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "textadv/util.hpp"

namespace textadv {

namespace {

constexpr std::size_t kRetryBudget = 20;

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

}  // namespace

Augmenter::Augmenter(std::shared_ptr<const Transformation> transformation,
                     std::vector<std::shared_ptr<const Constraint>> constraints,
                     std::vector<std::shared_ptr<const PreTransformationConstraint>> pre_constraints,
                     AugmenterOptions options)
    : transformation_(std::move(transformation)),
      constraints_(std::move(constraints)),
      pre_constraints_(std::move(pre_constraints)),
      options_(options) {
  if (!transformation_) fail("Augmenter: transformation is null");
  if (!(options_.pct_words_to_swap > 0.0) || options_.pct_words_to_swap > 1.0) {
    fail("Augmenter: pct_words_to_swap must be in (0, 1]");
  }
  if (options_.transformations_per_example == 0) {
    fail("Augmenter: transformations_per_example must be positive");
  }
}

std::vector<std::size_t> Augmenter::allowed_positions(const AttackedText& source) const {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < source.num_words(); ++i) positions.push_back(i);
  for (const auto& pre : pre_constraints_) {
    std::set<std::size_t> allowed = pre->allowed_indices(source);
    std::erase_if(positions, [&](std::size_t i) { return !allowed.contains(i); });
  }
  return positions;
}

std::size_t Augmenter::positions_to_perturb(std::size_t n) const {
  auto k = static_cast<std::size_t>(std::llround(options_.pct_words_to_swap * static_cast<double>(n)));
  return std::max<std::size_t>(1, k);
}

bool Augmenter::passes_constraints(const AttackedText& source,
                                   const AttackedText& candidate) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const auto& c) { return c->check(source, candidate); });
}

std::optional<AttackedText> Augmenter::produce(std::mt19937_64& rng, const AttackedText& source,
                                               std::size_t) const {
  std::vector<std::size_t> allowed = allowed_positions(source);
  if (allowed.empty()) return std::nullopt;
  std::size_t k = std::min(positions_to_perturb(source.num_words()), allowed.size());

  std::vector<std::size_t> picks = sample_without_replacement(rng, allowed.size(), k);
  AttackedText current = source;
  for (std::size_t pick : picks) {
    std::size_t index = allowed[pick];
    std::vector<AttackedText> candidates = transformation_->generate(current, {index}, rng);
    std::erase_if(candidates,
                  [&](const AttackedText& c) { return !passes_constraints(source, c); });
    if (candidates.empty()) continue;
    current = candidates[rand_index(rng, candidates.size())];
  }
  if (current.text() == source.text()) return std::nullopt;
  return current;
}

std::vector<std::string> Augmenter::augment(const std::string& text) const {
  if (text.empty()) fail("Augmenter: text is empty");
  AttackedText source(text);
  std::mt19937_64 rng(mix_seed(options_.seed, fnv1a64(text)));

  std::vector<std::string> outputs;
  std::set<std::string> seen = {text};
  for (std::size_t slot = 0; slot < options_.transformations_per_example; ++slot) {
    for (std::size_t attempt = 0; attempt < kRetryBudget; ++attempt) {
      std::optional<AttackedText> variant = produce(rng, source, slot);
      if (variant && seen.insert(variant->text()).second) {
        outputs.push_back(variant->text());
        break;
      }
    }
  }
  return outputs;
}

namespace {

// Synonym replacement plus the three position-level rewrites. Every rewrite
// except synonym replacement needs at least two words: a swap needs two
// positions, a deletion must leave text behind, and an insertion places a
// synonym next to another word.
class EdaAugmenter final : public Augmenter {
 public:
  EdaAugmenter(std::shared_ptr<const SynonymLexicon> thesaurus,
               std::vector<std::shared_ptr<const PreTransformationConstraint>> pre_constraints,
               AugmenterOptions options)
      : Augmenter(std::make_shared<WordSwapLexicon>(thesaurus), {}, std::move(pre_constraints),
                  options),
        thesaurus_(std::move(thesaurus)) {}

 protected:
  std::optional<AttackedText> produce(std::mt19937_64& rng, const AttackedText& source,
                                      std::size_t slot) const override {
    enum class Op { kSynonym, kInsertion, kSwap, kDeletion };
    std::vector<Op> ops = {Op::kSynonym};
    if (source.num_words() >= 2) {
      ops.insert(ops.end(), {Op::kInsertion, Op::kSwap, Op::kDeletion});
    }
    // Slots cycle through the applicable rewrites so a batch of variants
    // covers all of them.
    Op op = ops[slot % ops.size()];
    switch (op) {
      case Op::kSynonym: return Augmenter::produce(rng, source, slot);
      case Op::kInsertion: return insert_synonyms(rng, source);
      case Op::kSwap: return swap_positions(rng, source);
      case Op::kDeletion: return delete_positions(rng, source);
    }
    return std::nullopt;
  }

 private:
  std::optional<AttackedText> insert_synonyms(std::mt19937_64& rng,
                                              const AttackedText& source) const {
    // Allowed indices that actually have synonyms to contribute.
    std::vector<std::size_t> sources;
    for (std::size_t i : allowed_positions(source)) {
      if (!thesaurus_->synonyms(source.word_at(i)).empty()) sources.push_back(i);
    }
    if (sources.empty()) return std::nullopt;

    AttackedText current = source;
    std::size_t k = positions_to_perturb(source.num_words());
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t from = sources[rand_index(rng, sources.size())];
      std::vector<std::string> synonyms = thesaurus_->synonyms(source.word_at(from));
      const std::string& word = synonyms[rand_index(rng, synonyms.size())];
      std::size_t after = rand_index(rng, current.num_words());
      current = current.insert_word_after(after, word);
    }
    return current;
  }

  std::optional<AttackedText> swap_positions(std::mt19937_64& rng,
                                             const AttackedText& source) const {
    AttackedText current = source;
    std::size_t k = positions_to_perturb(source.num_words());
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t i = rand_index(rng, current.num_words());
      std::size_t j = rand_index(rng, current.num_words() - 1);
      if (j >= i) ++j;
      std::string a = current.word_at(i), b = current.word_at(j);
      current = current.replace_word_at(i, b).replace_word_at(j, a);
    }
    if (current.text() == source.text()) return std::nullopt;
    return current;
  }

  std::optional<AttackedText> delete_positions(std::mt19937_64& rng,
                                               const AttackedText& source) const {
    AttackedText current = source;
    std::size_t k = positions_to_perturb(source.num_words());
    for (std::size_t step = 0; step < k && current.num_words() > 1; ++step) {
      current = current.delete_word_at(rand_index(rng, current.num_words()));
    }
    if (current.text() == source.text()) return std::nullopt;
    return current;
  }

  std::shared_ptr<const SynonymLexicon> thesaurus_;
};

}  // namespace

const std::vector<std::string>& augmenter_recipe_names() {
  static const std::vector<std::string> names = {"charswap", "eda", "embedding"};
  return names;
}

std::unique_ptr<Augmenter> make_augmenter(const std::string& recipe, const ResourceSet& resources,
                                          const AugmenterOptions& options) {
  std::vector<std::shared_ptr<const PreTransformationConstraint>> pre = {
      std::make_shared<StopwordModification>(resources.stopwords)};
  if (recipe == "embedding") {
    if (!resources.embedding) {
      fail("augmentation recipe \"embedding\" requires the word embedding resource");
    }
    auto transformation = std::make_shared<WordSwapEmbedding>(resources.embedding, 8);
    WordEmbeddingDistanceOptions distance;
    distance.min_cos_sim = 0.8;
    std::vector<std::shared_ptr<const Constraint>> constraints = {
        std::make_shared<WordEmbeddingDistance>(resources.embedding, distance)};
    return std::make_unique<Augmenter>(std::move(transformation), std::move(constraints),
                                       std::move(pre), options);
  }
  if (recipe == "charswap") {
    std::vector<std::shared_ptr<const Transformation>> members;
    for (CharSwapKind kind : {CharSwapKind::kInsert, CharSwapKind::kDelete,
                              CharSwapKind::kNeighborSwap, CharSwapKind::kSubstitute}) {
      members.push_back(
          std::make_shared<CharacterTransform>(kind, /*random_one=*/true, resources.char_maps));
    }
    return std::make_unique<Augmenter>(std::make_shared<CompositeTransformation>(members),
                                       std::vector<std::shared_ptr<const Constraint>>{},
                                       std::move(pre), options);
  }
  if (recipe == "eda") {
    if (!resources.thesaurus) {
      fail("augmentation recipe \"eda\" requires the thesaurus resource");
    }
    return std::make_unique<EdaAugmenter>(resources.thesaurus, std::move(pre), options);
  }
  fail("unknown augmentation recipe \"" + recipe + "\" (valid: charswap, eda, embedding)");
}

}  // namespace textadv
