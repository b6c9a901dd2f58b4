#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/constraints.hpp"
#include "textadv/resources.hpp"
#include "textadv/transformations.hpp"

namespace textadv {

struct AugmenterOptions {
  // Fraction of each input's words to perturb, in (0, 1].
  double pct_words_to_swap = 0.1;
  // Upper bound on the number of variants produced per input.
  std::size_t transformations_per_example = 1;
  std::uint64_t seed = 0;
};

// Expands one text into perturbed variants: per variant, round(pct × words)
// distinct allowed indices (at least one) are rewritten with candidates that
// pass every constraint against the source text. Each input gets its own rng
// stream (mix_seed of the seed and the text hash), so corpus order and
// parallelism never change results.
class Augmenter {
 public:
  Augmenter(std::shared_ptr<const Transformation> transformation,
            std::vector<std::shared_ptr<const Constraint>> constraints,
            std::vector<std::shared_ptr<const PreTransformationConstraint>> pre_constraints,
            AugmenterOptions options);
  virtual ~Augmenter() = default;

  // Distinct variants of text, each different from it, at most
  // transformations_per_example. Variants that cannot be produced within the
  // retry budget (20 attempts each) are dropped.
  std::vector<std::string> augment(const std::string& text) const;

  const AugmenterOptions& options() const { return options_; }

 protected:
  // One constraint-checked variant for an output slot, or nullopt when the
  // attempt produced nothing new.
  virtual std::optional<AttackedText> produce(std::mt19937_64& rng, const AttackedText& source,
                                              std::size_t slot) const;

  // Word positions every pre-transformation constraint allows, ascending.
  std::vector<std::size_t> allowed_positions(const AttackedText& source) const;
  // Number of positions to perturb for a text of n words.
  std::size_t positions_to_perturb(std::size_t n) const;
  bool passes_constraints(const AttackedText& source, const AttackedText& candidate) const;

  std::shared_ptr<const Transformation> transformation_;
  std::vector<std::shared_ptr<const Constraint>> constraints_;
  std::vector<std::shared_ptr<const PreTransformationConstraint>> pre_constraints_;
  AugmenterOptions options_;
};

// embedding | eda | charswap. embedding swaps nearest-neighbor words under a
// cosine-similarity floor; charswap applies one random character edit per
// chosen word; eda mixes synonym replacement with random insertion, swap, and
// deletion, degenerating to synonym replacement on one-word texts.
std::unique_ptr<Augmenter> make_augmenter(const std::string& recipe, const ResourceSet& resources,
                                          const AugmenterOptions& options);

const std::vector<std::string>& augmenter_recipe_names();

}  // namespace textadv
