#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/goal.hpp"

namespace textadv {

// Engine-provided view a search method works through. All candidate texts a
// search acquires via transformations()/transformations_at() have already
// passed the pre-transformation filters and every pairwise constraint;
// evaluate() is the only path to the victim and charges the query budget.
class SearchContext {
 public:
  virtual ~SearchContext() = default;

  // Result of the bound example's unperturbed text.
  virtual const GoalFunctionResult& initial() const = 0;

  // Constraint-passing perturbations of text (all allowed indices, or one).
  virtual std::vector<AttackedText> transformations(const AttackedText& text) = 0;
  virtual std::vector<AttackedText> transformations_at(const AttackedText& text,
                                                       std::size_t index) = 0;

  // Scores candidates through the goal function in one victim batch. When the
  // remaining budget covers only a prefix of the batch, only that prefix is
  // evaluated and returned; the tail counts as never scored.
  virtual std::vector<GoalFunctionResult> evaluate(
      const std::vector<AttackedText>& candidates) = 0;

  // Pairwise-constraint check against the original text, for texts built by
  // population recombination rather than by a transformation call.
  virtual bool passes_constraints(const AttackedText& candidate) = 0;

  // Word indices the pre-transformation constraints leave editable.
  virtual std::set<std::size_t> allowed_indices(const AttackedText& text) = 0;

  // Per-word gradient-norm importances; throws when the victim exposes no
  // gradient. Costs no victim queries.
  virtual std::vector<double> gradient_importance(const AttackedText& text) = 0;

  virtual bool budget_exhausted() const = 0;
  virtual std::mt19937_64& rng() = 0;
};

// A search method is stateless and const-callable: each call works one bound
// example through its context, so workers can share one instance.
class SearchMethod {
 public:
  virtual ~SearchMethod() = default;

  virtual std::string name() const = 0;
  // Runs the search and returns the best result seen, never worse than the
  // context's initial result and never a constraint-failing candidate.
  virtual GoalFunctionResult search(SearchContext& ctx) const = 0;
};

// --- Greedy word-importance ranking ----------------------------------------

enum class WirMethod { kUnk, kDelete, kPwws, kGradient, kRandom };

std::string_view to_string(WirMethod method);
// Accepts the dump spellings, including the short form "del".
WirMethod wir_method_from_string(std::string_view token);

// Ranks word indices once on the original text, then visits them in
// descending importance (ties toward the lower index), greedily accepting the
// best candidate at each index when it strictly improves the score.
class GreedyWordSwapWIR final : public SearchMethod {
 public:
  explicit GreedyWordSwapWIR(WirMethod method);

  std::string name() const override { return "GreedyWordSwapWIR"; }
  WirMethod wir_method() const { return method_; }
  GoalFunctionResult search(SearchContext& ctx) const override;

 private:
  WirMethod method_;
};

// --- Beam search ------------------------------------------------------------

// Classic beam over single-step extensions with a visited-text set; the
// frontier keeps the top beam_width unvisited candidates by score. Terminates
// on success, frontier exhaustion, or budget exhaustion.
class BeamSearch : public SearchMethod {
 public:
  explicit BeamSearch(std::size_t beam_width);

  std::string name() const override { return "BeamSearch"; }
  std::size_t beam_width() const { return beam_width_; }
  GoalFunctionResult search(SearchContext& ctx) const override;

 private:
  std::size_t beam_width_;
};

// Beam search with width 1.
class GreedySearch final : public BeamSearch {
 public:
  GreedySearch() : BeamSearch(1) {}
  std::string name() const override { return "GreedySearch"; }
};

// --- Genetic algorithm -------------------------------------------------------

enum class GeneticVariant {
  kAlzantot,  // uniform word-wise crossover, elite kept as-is
  kIga,       // single-cut crossover, elite additionally mutated
};

struct GeneticOptions {
  std::size_t pop_size = 60;
  std::size_t max_iters = 20;
  double temp = 0.3;
  bool give_up_if_no_improvement = false;
  GeneticVariant variant = GeneticVariant::kAlzantot;
};

class GeneticAlgorithm final : public SearchMethod {
 public:
  explicit GeneticAlgorithm(GeneticOptions options);

  std::string name() const override;
  const GeneticOptions& options() const { return options_; }
  GoalFunctionResult search(SearchContext& ctx) const override;

 private:
  GeneticOptions options_;
};

// --- Particle swarm ----------------------------------------------------------

struct ParticleSwarmOptions {
  std::size_t pop_size = 60;
  std::size_t max_iters = 20;
  // Linear inertia decay across iterations.
  double inertia_start = 0.8;
  double inertia_end = 0.2;
};

// Positions are per-index word choices drawn from the single-swap candidates
// of the original text; velocities are per-index change probabilities that
// scale both the pulls toward personal/global bests and the mutation rate, so
// a zero-velocity particle never moves.
class ParticleSwarmOptimization final : public SearchMethod {
 public:
  explicit ParticleSwarmOptimization(ParticleSwarmOptions options = {});

  std::string name() const override { return "ParticleSwarmOptimization"; }
  const ParticleSwarmOptions& options() const { return options_; }
  GoalFunctionResult search(SearchContext& ctx) const override;

 private:
  ParticleSwarmOptions options_;
};

// Draws an index with probability proportional to softmax(scores / temp).
// Guards against overflow by shifting; temp must be positive.
std::size_t sample_softmax(const std::vector<double>& scores, double temp, std::mt19937_64& rng);

}  // namespace textadv
