#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/component_spec.hpp"
#include "textadv/constraints.hpp"
#include "textadv/goal.hpp"
#include "textadv/search.hpp"
#include "textadv/transformations.hpp"

namespace textadv {

enum class AttackStatus { kSuccessful, kFailed, kSkipped, kMaximized };

std::string_view to_string(AttackStatus status);

struct AttackResult {
  AttackStatus status = AttackStatus::kFailed;
  AttackedText original{""};
  AttackedText perturbed{""};
  VictimOutput original_output;
  VictimOutput perturbed_output;
  std::optional<std::size_t> ground_truth;
  double original_score = 0.0;
  double perturbed_score = 0.0;
  // Logical victim batch elements charged to this example, counted the same
  // whether or not a cache served them.
  std::uint64_t num_queries = 0;
  double wall_time_seconds = 0.0;
};

// Memoizes goal results by printable text and pairwise-constraint verdicts by
// (constraint id, reference text, candidate text). Transparent: an attack
// produces field-identical results with or without one; only the number of
// victim evaluations changes. Safe to share across workers.
class ResultCache {
 public:
  std::optional<GoalFunctionResult> lookup_goal(const std::string& text);
  void store_goal(const std::string& text, const GoalFunctionResult& result);
  std::optional<bool> lookup_constraint(std::size_t constraint_id, const std::string& reference,
                                        const std::string& candidate);
  void store_constraint(std::size_t constraint_id, const std::string& reference,
                        const std::string& candidate, bool verdict);

  std::uint64_t hits() const;
  std::uint64_t misses() const;
  std::uint64_t goal_hits() const;
  std::uint64_t goal_misses() const;
  double hit_rate() const;  // hits / (hits + misses), 0 when unused
  void clear();

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, GoalFunctionResult> goal_;
  std::unordered_map<std::string, bool> constraint_;
  std::uint64_t goal_hits_ = 0, goal_misses_ = 0;
  std::uint64_t constraint_hits_ = 0, constraint_misses_ = 0;
};

struct AttackComponents {
  std::shared_ptr<const GoalFunction> goal;  // prototype, cloned per example
  std::vector<std::shared_ptr<const Constraint>> constraints;
  std::vector<std::shared_ptr<const PreTransformationConstraint>> pre_constraints;
  std::shared_ptr<const Transformation> transformation;
  std::shared_ptr<const SearchMethod> search;
};

struct AttackOptions {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> query_budget;  // unlimited when absent
  std::shared_ptr<ResultCache> cache;         // null runs uncached
};

struct DatasetExample {
  AttackedText text;
  std::optional<std::size_t> label;
};

struct DatasetAttackOptions {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> query_budget;
  std::size_t num_examples = SIZE_MAX;  // prefix of the dataset to attack
  std::size_t num_workers = 1;
  bool use_cache = true;
  // One cache for the whole run, or a fresh cache per worker. Either way the
  // results are identical to an uncached run.
  bool shared_cache = true;
};

// Aggregates mirror the reporting convention: skipped and maximized examples
// stay out of the success-rate denominator.
struct AttackSummary {
  std::size_t total = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::size_t maximized = 0;
  double success_rate = 0.0;                 // successes / (successes + failures)
  double mean_percent_words_perturbed = 0.0;  // over successful examples
  double mean_queries = 0.0;                 // over non-skipped examples
  double total_wall_time_seconds = 0.0;
};

AttackSummary summarize(const std::vector<AttackResult>& results);

// The four attack components bound together with the blueprint they were
// built from. The blueprint is the source of truth for prototype_dump, so a
// dump parsed and rebuilt through the recipe registry behaves identically.
class Attack {
 public:
  Attack(AttackComponents components, AttackSpec spec);

  const AttackSpec& spec() const { return spec_; }
  std::string prototype_dump() const { return render_attack_spec(spec_); }

  const GoalFunction& goal() const { return *components_.goal; }
  const Transformation& transformation() const { return *components_.transformation; }
  const SearchMethod& search_method() const { return *components_.search; }
  const std::vector<std::shared_ptr<const Constraint>>& constraints() const {
    return components_.constraints;
  }
  const std::vector<std::shared_ptr<const PreTransformationConstraint>>& pre_constraints() const {
    return components_.pre_constraints;
  }

  AttackResult attack_one(const AttackedText& text, std::optional<std::size_t> ground_truth,
                          const AttackOptions& options = {}) const;

 private:
  AttackComponents components_;
  AttackSpec spec_;
};

// Runs the attack over a dataset prefix, one independent search per example
// seeded with mix_seed(seed, example index). on_result fires in example order
// after all workers finish their assignments up to that index. Throws on an
// empty dataset.
std::pair<std::vector<AttackResult>, AttackSummary> attack_dataset(
    const Attack& attack, const std::vector<DatasetExample>& dataset,
    const DatasetAttackOptions& options = {},
    const std::function<void(const AttackResult&, std::size_t)>& on_result = {});

}  // namespace textadv
