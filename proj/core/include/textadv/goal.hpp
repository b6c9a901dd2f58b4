#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/victim.hpp"

namespace textadv {

// Lifecycle of a candidate during search. SKIPPED only ever appears on the
// unperturbed input, when the example fails the goal's premise before any
// search happens. Maximizing goals report MAXIMIZING instead of SUCCEEDED and
// let the search run out its budget.
enum class GoalStatus { kSucceeded, kSearching, kMaximizing, kSkipped };

std::string_view to_string(GoalStatus status);

struct GoalFunctionResult {
  AttackedText input{""};
  VictimOutput raw_output;
  // Heuristic in [0, 1]; higher is closer to the goal.
  double score = 0.0;
  GoalStatus status = GoalStatus::kSearching;
  // Logical victim evaluations charged to the example so far; filled by the
  // attack engine, not by the goal function.
  std::uint64_t num_queries_so_far = 0;
};

// Task-specific success predicate plus the scalar heuristic that guides
// search. A goal function is bound to one example with init_example and then
// scores batches of candidate perturbations of that example. Instances are
// cheap to clone so every worker binds its own copy.
class GoalFunction {
 public:
  virtual ~GoalFunction() = default;

  virtual std::string name() const = 0;
  virtual std::unique_ptr<GoalFunction> clone() const = 0;
  // Maximizing goals have no terminal success state; the best candidate when
  // the budget runs out is the result.
  virtual bool maximizable() const { return false; }

  // Binds this goal to an attack example: evaluates the unperturbed text in
  // one victim call and decides whether the example is skipped. For
  // classification goals that means the victim already mispredicts it.
  virtual GoalFunctionResult init_example(const AttackedText& original,
                                          std::optional<std::size_t> ground_truth) = 0;

  // Scores candidates in a single victim batch call. Requires init_example.
  virtual std::vector<GoalFunctionResult> evaluate(
      const std::vector<AttackedText>& candidates) const = 0;
};

// --- Classification goals -----------------------------------------------

class ClassificationGoalFunction : public GoalFunction {
 public:
  explicit ClassificationGoalFunction(std::shared_ptr<const ClassifierModel> victim);

  const ClassifierModel& victim() const { return *victim_; }
  std::shared_ptr<const ClassifierModel> victim_ptr() const { return victim_; }
  std::size_t ground_truth() const;

  GoalFunctionResult init_example(const AttackedText& original,
                                  std::optional<std::size_t> ground_truth) override;
  std::vector<GoalFunctionResult> evaluate(
      const std::vector<AttackedText>& candidates) const override;

 protected:
  // Score and status of one candidate's probability row. The text is passed
  // along for goals whose score depends on it.
  virtual double score_of(const std::vector<double>& probs, const AttackedText& t) const = 0;
  virtual GoalStatus status_of(const std::vector<double>& probs, const AttackedText& t) const = 0;
  // Hook for subclass checks against the bound example.
  virtual void validate_example(const std::vector<double>& original_probs) const;

  std::shared_ptr<const ClassifierModel> victim_;
  std::optional<std::size_t> truth_;
  AttackedText original_{""};
  bool bound_ = false;
};

// Goal: make the victim predict anything but the ground-truth label.
// Score is 1 - P(truth).
class UntargetedClassification final : public ClassificationGoalFunction {
 public:
  using ClassificationGoalFunction::ClassificationGoalFunction;

  std::string name() const override { return "UntargetedClassification"; }
  std::unique_ptr<GoalFunction> clone() const override;

 protected:
  double score_of(const std::vector<double>& probs, const AttackedText& t) const override;
  GoalStatus status_of(const std::vector<double>& probs, const AttackedText& t) const override;
};

// Goal: make the victim predict one chosen incorrect label. Score is
// P(target); binding an example whose ground truth equals the target is a
// configuration error.
class TargetedClassification final : public ClassificationGoalFunction {
 public:
  TargetedClassification(std::shared_ptr<const ClassifierModel> victim, std::size_t target);

  std::string name() const override { return "TargetedClassification"; }
  std::unique_ptr<GoalFunction> clone() const override;
  std::size_t target_label() const { return target_; }

 protected:
  double score_of(const std::vector<double>& probs, const AttackedText& t) const override;
  GoalStatus status_of(const std::vector<double>& probs, const AttackedText& t) const override;
  void validate_example(const std::vector<double>& original_probs) const override;

 private:
  std::size_t target_;
};

// Goal: delete as many words as possible while the predicted label stays
// put. Score is the fraction of the original words removed, 0 for any
// candidate that breaks the label.
class InputReduction final : public ClassificationGoalFunction {
 public:
  using ClassificationGoalFunction::ClassificationGoalFunction;

  std::string name() const override { return "InputReduction"; }
  std::unique_ptr<GoalFunction> clone() const override;
  bool maximizable() const override { return true; }

 protected:
  double score_of(const std::vector<double>& probs, const AttackedText& t) const override;
  GoalStatus status_of(const std::vector<double>& probs, const AttackedText& t) const override;
};

// --- Text-to-text goals ---------------------------------------------------

class TextToTextGoalFunction : public GoalFunction {
 public:
  explicit TextToTextGoalFunction(std::shared_ptr<const TextToTextModel> victim);

  const TextToTextModel& victim() const { return *victim_; }
  std::shared_ptr<const TextToTextModel> victim_ptr() const { return victim_; }
  // Victim output on the unperturbed input; the reference all candidates are
  // scored against.
  const std::string& original_output() const;

  GoalFunctionResult init_example(const AttackedText& original,
                                  std::optional<std::size_t> ground_truth) override;
  std::vector<GoalFunctionResult> evaluate(
      const std::vector<AttackedText>& candidates) const override;

 protected:
  virtual double score_of(const std::string& output) const = 0;
  virtual bool succeeded(const std::string& output) const = 0;

  std::shared_ptr<const TextToTextModel> victim_;
  std::string original_output_;
  bool bound_ = false;
};

// Goal: an output sharing no words with the original output
// (case-insensitive). Score is the fraction of the original output's words
// missing from the candidate's output.
class NonOverlappingOutput final : public TextToTextGoalFunction {
 public:
  using TextToTextGoalFunction::TextToTextGoalFunction;

  std::string name() const override { return "NonOverlappingOutput"; }
  std::unique_ptr<GoalFunction> clone() const override;

 protected:
  double score_of(const std::string& output) const override;
  bool succeeded(const std::string& output) const override;
};

// Goal: drive BLEU between the candidate's output and the original output
// down to target_bleu. Score is 1 - BLEU.
class MinimizeBleu final : public TextToTextGoalFunction {
 public:
  explicit MinimizeBleu(std::shared_ptr<const TextToTextModel> victim,
                        double target_bleu = 0.0);

  std::string name() const override { return "MinimizeBleu"; }
  std::unique_ptr<GoalFunction> clone() const override;
  double target_bleu() const { return target_bleu_; }

 protected:
  double score_of(const std::string& output) const override;
  bool succeeded(const std::string& output) const override;

 private:
  double target_bleu_;
};

}  // namespace textadv
