#include "textadv/goal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "textadv/metrics.hpp"
#include "textadv/util.hpp"

namespace textadv {

std::string_view to_string(GoalStatus status) {
  switch (status) {
    case GoalStatus::kSucceeded: return "SUCCEEDED";
    case GoalStatus::kSearching: return "SEARCHING";
    case GoalStatus::kMaximizing: return "MAXIMIZING";
    case GoalStatus::kSkipped: return "SKIPPED";
  }
  return "SEARCHING";
}

// --- Classification ----------------------------------------------------------

ClassificationGoalFunction::ClassificationGoalFunction(
    std::shared_ptr<const ClassifierModel> victim)
    : victim_(std::move(victim)) {
  if (!victim_) throw std::invalid_argument("classification goal needs a victim model");
}

std::size_t ClassificationGoalFunction::ground_truth() const {
  if (!truth_) throw std::logic_error("goal function not bound to an example");
  return *truth_;
}

void ClassificationGoalFunction::validate_example(const std::vector<double>&) const {}

GoalFunctionResult ClassificationGoalFunction::init_example(
    const AttackedText& original, std::optional<std::size_t> ground_truth) {
  if (!ground_truth) {
    throw std::invalid_argument(name() + " needs a ground-truth label");
  }
  std::vector<std::vector<double>> rows = victim_->predict_proba({original.text()});
  if (rows.size() != 1 || rows[0].empty()) {
    throw std::runtime_error("victim returned a malformed score vector");
  }
  const std::vector<double>& probs = rows[0];
  if (*ground_truth >= probs.size()) {
    throw std::out_of_range("ground-truth label " + std::to_string(*ground_truth) +
                            " out of range for " + std::to_string(probs.size()) + " labels");
  }
  // Bind only after everything validated, so a failed init leaves the goal
  // cleanly unbound.
  truth_ = ground_truth;
  original_ = original;
  validate_example(probs);
  bound_ = true;

  GoalFunctionResult result;
  result.input = original;
  result.raw_output = probs;
  result.score = score_of(probs, original);
  // A victim that is already wrong on the clean input fails the premise, so
  // there is nothing to attack.
  result.status = argmax_label(probs) != *truth_ ? GoalStatus::kSkipped
                                                 : status_of(probs, original);
  return result;
}

std::vector<GoalFunctionResult> ClassificationGoalFunction::evaluate(
    const std::vector<AttackedText>& candidates) const {
  if (!bound_) throw std::logic_error("goal function not bound to an example");
  std::vector<std::string> texts;
  texts.reserve(candidates.size());
  for (const AttackedText& t : candidates) texts.push_back(t.text());

  std::vector<std::vector<double>> rows = victim_->predict_proba(texts);
  if (rows.size() != candidates.size()) {
    throw std::runtime_error("victim returned " + std::to_string(rows.size()) +
                             " rows for " + std::to_string(candidates.size()) + " inputs");
  }
  std::vector<GoalFunctionResult> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (rows[i].size() <= *truth_) {
      throw std::runtime_error("victim returned a malformed score vector");
    }
    GoalFunctionResult r;
    r.input = candidates[i];
    r.score = score_of(rows[i], candidates[i]);
    r.status = status_of(rows[i], candidates[i]);
    r.raw_output = std::move(rows[i]);
    out.push_back(std::move(r));
  }
  return out;
}

std::unique_ptr<GoalFunction> UntargetedClassification::clone() const {
  return std::make_unique<UntargetedClassification>(*this);
}

double UntargetedClassification::score_of(const std::vector<double>& probs,
                                          const AttackedText&) const {
  return 1.0 - probs[*truth_];
}

GoalStatus UntargetedClassification::status_of(const std::vector<double>& probs,
                                               const AttackedText&) const {
  return argmax_label(probs) != *truth_ ? GoalStatus::kSucceeded : GoalStatus::kSearching;
}

TargetedClassification::TargetedClassification(std::shared_ptr<const ClassifierModel> victim,
                                               std::size_t target)
    : ClassificationGoalFunction(std::move(victim)), target_(target) {
  if (target_ >= victim_->num_labels()) {
    throw std::out_of_range("target label " + std::to_string(target_) + " out of range for " +
                            std::to_string(victim_->num_labels()) + " labels");
  }
}

std::unique_ptr<GoalFunction> TargetedClassification::clone() const {
  return std::make_unique<TargetedClassification>(*this);
}

void TargetedClassification::validate_example(const std::vector<double>&) const {
  if (*truth_ == target_) {
    throw std::invalid_argument("target label equals the ground truth; choose an incorrect label");
  }
}

double TargetedClassification::score_of(const std::vector<double>& probs,
                                        const AttackedText&) const {
  return probs[target_];
}

GoalStatus TargetedClassification::status_of(const std::vector<double>& probs,
                                             const AttackedText&) const {
  return argmax_label(probs) == target_ ? GoalStatus::kSucceeded : GoalStatus::kSearching;
}

std::unique_ptr<GoalFunction> InputReduction::clone() const {
  return std::make_unique<InputReduction>(*this);
}

double InputReduction::score_of(const std::vector<double>& probs, const AttackedText& t) const {
  if (argmax_label(probs) != *truth_) return 0.0;
  const double orig = static_cast<double>(original_.num_words());
  if (orig == 0.0) return 0.0;
  const double removed = orig - static_cast<double>(t.num_words());
  return std::max(0.0, removed / orig);
}

GoalStatus InputReduction::status_of(const std::vector<double>& probs,
                                     const AttackedText&) const {
  // Label preserved: keep maximizing. Label broken: a dead end the search
  // will not accept, but not a terminal state either.
  return argmax_label(probs) == *truth_ ? GoalStatus::kMaximizing : GoalStatus::kSearching;
}

// --- Text to text -------------------------------------------------------------

TextToTextGoalFunction::TextToTextGoalFunction(std::shared_ptr<const TextToTextModel> victim)
    : victim_(std::move(victim)) {
  if (!victim_) throw std::invalid_argument("text-to-text goal needs a victim model");
}

const std::string& TextToTextGoalFunction::original_output() const {
  if (!bound_) throw std::logic_error("goal function not bound to an example");
  return original_output_;
}

GoalFunctionResult TextToTextGoalFunction::init_example(const AttackedText& original,
                                                        std::optional<std::size_t>) {
  std::vector<std::string> outputs = victim_->translate({original.text()});
  if (outputs.size() != 1) {
    throw std::runtime_error("victim returned " + std::to_string(outputs.size()) +
                             " outputs for 1 input");
  }
  original_output_ = std::move(outputs[0]);
  bound_ = true;

  GoalFunctionResult result;
  result.input = original;
  result.raw_output = original_output_;
  result.score = score_of(original_output_);
  result.status = succeeded(original_output_) ? GoalStatus::kSucceeded : GoalStatus::kSearching;
  return result;
}

std::vector<GoalFunctionResult> TextToTextGoalFunction::evaluate(
    const std::vector<AttackedText>& candidates) const {
  if (!bound_) throw std::logic_error("goal function not bound to an example");
  std::vector<std::string> texts;
  texts.reserve(candidates.size());
  for (const AttackedText& t : candidates) texts.push_back(t.text());

  std::vector<std::string> outputs = victim_->translate(texts);
  if (outputs.size() != candidates.size()) {
    throw std::runtime_error("victim returned " + std::to_string(outputs.size()) +
                             " outputs for " + std::to_string(candidates.size()) + " inputs");
  }
  std::vector<GoalFunctionResult> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    GoalFunctionResult r;
    r.input = candidates[i];
    r.score = score_of(outputs[i]);
    r.status = succeeded(outputs[i]) ? GoalStatus::kSucceeded : GoalStatus::kSearching;
    r.raw_output = std::move(outputs[i]);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::map<std::string, std::size_t> word_multiset(std::string_view text) {
  std::map<std::string, std::size_t> counts;
  AttackedText t(text);
  for (const std::string& w : t.words()) ++counts[lowercase(w)];
  return counts;
}

// Fraction of the reference's words present in the candidate output,
// multiset-style so repeated words count per occurrence.
double word_overlap(const std::string& reference, const std::string& output) {
  std::map<std::string, std::size_t> ref = word_multiset(reference);
  std::map<std::string, std::size_t> got = word_multiset(output);
  std::size_t total = 0, shared = 0;
  for (const auto& [word, count] : ref) {
    total += count;
    auto it = got.find(word);
    if (it != got.end()) shared += std::min(count, it->second);
  }
  // A reference with no words makes the goal undefined; report full overlap
  // so such an example can never trivially succeed.
  if (total == 0) return 1.0;
  return static_cast<double>(shared) / static_cast<double>(total);
}

}  // namespace

std::unique_ptr<GoalFunction> NonOverlappingOutput::clone() const {
  return std::make_unique<NonOverlappingOutput>(*this);
}

double NonOverlappingOutput::score_of(const std::string& output) const {
  return 1.0 - word_overlap(original_output_, output);
}

bool NonOverlappingOutput::succeeded(const std::string& output) const {
  return word_overlap(original_output_, output) == 0.0;
}

MinimizeBleu::MinimizeBleu(std::shared_ptr<const TextToTextModel> victim, double target_bleu)
    : TextToTextGoalFunction(std::move(victim)), target_bleu_(target_bleu) {
  if (target_bleu_ < 0.0 || target_bleu_ > 1.0) {
    throw std::invalid_argument("target_bleu must lie in [0, 1]");
  }
}

std::unique_ptr<GoalFunction> MinimizeBleu::clone() const {
  return std::make_unique<MinimizeBleu>(*this);
}

double MinimizeBleu::score_of(const std::string& output) const {
  return 1.0 - sentence_bleu(output, original_output_);
}

bool MinimizeBleu::succeeded(const std::string& output) const {
  // Small slack keeps an exactly-reached target from failing on rounding.
  return sentence_bleu(output, original_output_) <= target_bleu_ + 1e-10;
}

}  // namespace textadv
