#include "textadv/attack.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "textadv/linear_model.hpp"
#include "textadv/util.hpp"

namespace textadv {

std::string_view to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::kSuccessful: return "SUCCESSFUL";
    case AttackStatus::kFailed: return "FAILED";
    case AttackStatus::kSkipped: return "SKIPPED";
    case AttackStatus::kMaximized: return "MAXIMIZED";
  }
  return "FAILED";
}

// --- ResultCache -------------------------------------------------------------

namespace {

std::string constraint_key(std::size_t constraint_id, const std::string& reference,
                           const std::string& candidate) {
  std::string key = std::to_string(constraint_id);
  key += '\x1f';
  key += reference;
  key += '\x1f';
  key += candidate;
  return key;
}

}  // namespace

std::optional<GoalFunctionResult> ResultCache::lookup_goal(const std::string& text) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = goal_.find(text);
  if (it == goal_.end()) {
    ++goal_misses_;
    return std::nullopt;
  }
  ++goal_hits_;
  return it->second;
}

void ResultCache::store_goal(const std::string& text, const GoalFunctionResult& result) {
  std::lock_guard<std::mutex> lock(mutex_);
  goal_.emplace(text, result);
}

std::optional<bool> ResultCache::lookup_constraint(std::size_t constraint_id,
                                                   const std::string& reference,
                                                   const std::string& candidate) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = constraint_.find(constraint_key(constraint_id, reference, candidate));
  if (it == constraint_.end()) {
    ++constraint_misses_;
    return std::nullopt;
  }
  ++constraint_hits_;
  return it->second;
}

void ResultCache::store_constraint(std::size_t constraint_id, const std::string& reference,
                                   const std::string& candidate, bool verdict) {
  std::lock_guard<std::mutex> lock(mutex_);
  constraint_.emplace(constraint_key(constraint_id, reference, candidate), verdict);
}

std::uint64_t ResultCache::hits() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return goal_hits_ + constraint_hits_;
}

std::uint64_t ResultCache::misses() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return goal_misses_ + constraint_misses_;
}

std::uint64_t ResultCache::goal_hits() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return goal_hits_;
}

std::uint64_t ResultCache::goal_misses() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return goal_misses_;
}

double ResultCache::hit_rate() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::uint64_t h = goal_hits_ + constraint_hits_;
  std::uint64_t m = goal_misses_ + constraint_misses_;
  return h + m == 0 ? 0.0 : static_cast<double>(h) / static_cast<double>(h + m);
}

void ResultCache::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  goal_.clear();
  constraint_.clear();
  goal_hits_ = goal_misses_ = constraint_hits_ = constraint_misses_ = 0;
}

// --- Attack ------------------------------------------------------------------

namespace {

// Binds one example's search to the attack's components: generates
// constraint-filtered candidates, routes goal evaluation through the cache
// and the query budget, and owns the example's RNG.
class AttackContext final : public SearchContext {
 public:
  AttackContext(const AttackComponents& components, const GoalFunction& goal,
                GoalFunctionResult initial, std::uint64_t seed,
                std::optional<std::uint64_t> budget, ResultCache* cache)
      : components_(components),
        goal_(goal),
        initial_(std::move(initial)),
        original_(initial_.input),
        rng_(seed),
        budget_(budget),
        cache_(cache) {}

  const GoalFunctionResult& initial() const override { return initial_; }

  std::set<std::size_t> allowed_indices(const AttackedText& text) override {
    std::set<std::size_t> allowed;
    for (std::size_t i = 0; i < text.words().size(); ++i) allowed.insert(i);
    for (const auto& pre : components_.pre_constraints) {
      std::set<std::size_t> own = pre->allowed_indices(text);
      std::set<std::size_t> kept;
      std::set_intersection(allowed.begin(), allowed.end(), own.begin(), own.end(),
                            std::inserter(kept, kept.begin()));
      allowed = std::move(kept);
    }
    return allowed;
  }

  std::vector<AttackedText> transformations(const AttackedText& text) override {
    return filtered(text, components_.transformation->generate(text, allowed_indices(text), rng_));
  }

  std::vector<AttackedText> transformations_at(const AttackedText& text,
                                               std::size_t index) override {
    std::set<std::size_t> allowed = allowed_indices(text);
    if (allowed.count(index) == 0) return {};
    return filtered(text, components_.transformation->generate(text, {index}, rng_));
  }

  bool passes_constraints(const AttackedText& candidate) override {
    // Population-built texts have no transformation step to anchor a
    // reference, so every constraint compares against the original here.
    return passes_pairwise(original_, candidate);
  }

  std::vector<GoalFunctionResult> evaluate(const std::vector<AttackedText>& candidates) override {
    std::size_t n = candidates.size();
    if (budget_) {
      std::uint64_t remaining = *budget_ > used_ ? *budget_ - used_ : 0;
      n = static_cast<std::size_t>(std::min<std::uint64_t>(n, remaining));
    }
    std::vector<GoalFunctionResult> out(n);
    if (n == 0) return out;
    used_ += n;

    std::vector<std::size_t> pending;
    if (cache_ != nullptr) {
      for (std::size_t i = 0; i < n; ++i) {
        if (auto hit = cache_->lookup_goal(candidates[i].text())) {
          out[i] = std::move(*hit);
        } else {
          pending.push_back(i);
        }
      }
    } else {
      pending.resize(n);
      std::iota(pending.begin(), pending.end(), 0);
    }
    if (!pending.empty()) {
      std::vector<AttackedText> batch;
      batch.reserve(pending.size());
      for (std::size_t i : pending) batch.push_back(candidates[i]);
      std::vector<GoalFunctionResult> fresh = goal_.evaluate(batch);
      if (fresh.size() != pending.size()) {
        throw std::logic_error("goal function returned a misaligned batch");
      }
      for (std::size_t j = 0; j < pending.size(); ++j) {
        if (cache_ != nullptr) cache_->store_goal(batch[j].text(), fresh[j]);
        out[pending[j]] = std::move(fresh[j]);
      }
    }
    // Cached results carry the first occurrence's input; rebind each to the
    // candidate actually queried so edit metadata stays correct.
    for (std::size_t i = 0; i < n; ++i) {
      out[i].input = candidates[i];
      out[i].num_queries_so_far = used_;
    }
    return out;
  }

  std::vector<double> gradient_importance(const AttackedText& text) override {
    if (const auto* cls = dynamic_cast<const ClassificationGoalFunction*>(&goal_)) {
      if (auto linear = std::dynamic_pointer_cast<const LinearTextClassifier>(cls->victim_ptr())) {
        return linear->gradient_word_importance(text, cls->ground_truth());
      }
    }
    throw std::invalid_argument(
        "gradient word ranking requires a linear classifier victim");
  }

  bool budget_exhausted() const override { return budget_ && used_ >= *budget_; }
  std::mt19937_64& rng() override { return rng_; }
  std::uint64_t queries_used() const { return used_; }

 private:
  std::vector<AttackedText> filtered(const AttackedText& current,
                                     std::vector<AttackedText> candidates) {
    std::vector<AttackedText> out;
    out.reserve(candidates.size());
    for (AttackedText& cand : candidates) {
      if (passes_pairwise(current, cand)) out.push_back(std::move(cand));
    }
    return out;
  }

  bool passes_pairwise(const AttackedText& current, const AttackedText& candidate) {
    for (std::size_t ci = 0; ci < components_.constraints.size(); ++ci) {
      const Constraint& constraint = *components_.constraints[ci];
      const AttackedText& ref = constraint.compare_against_original() ? original_ : current;
      bool verdict;
      if (cache_ != nullptr) {
        if (auto hit = cache_->lookup_constraint(ci, ref.text(), candidate.text())) {
          verdict = *hit;
        } else {
          verdict = constraint.check(ref, candidate);
          cache_->store_constraint(ci, ref.text(), candidate.text(), verdict);
        }
      } else {
        verdict = constraint.check(ref, candidate);
      }
      if (!verdict) return false;
    }
    return true;
  }

  const AttackComponents& components_;
  const GoalFunction& goal_;
  GoalFunctionResult initial_;
  AttackedText original_;
  std::mt19937_64 rng_;
  std::optional<std::uint64_t> budget_;
  ResultCache* cache_;
  std::uint64_t used_ = 0;
};

}  // namespace

Attack::Attack(AttackComponents components, AttackSpec spec)
    : components_(std::move(components)), spec_(std::move(spec)) {
  if (!components_.goal) throw std::invalid_argument("Attack: goal function is null");
  if (!components_.transformation) throw std::invalid_argument("Attack: transformation is null");
  if (!components_.search) throw std::invalid_argument("Attack: search method is null");
  for (const auto& c : components_.constraints) {
    if (!c) throw std::invalid_argument("Attack: null constraint");
  }
  for (const auto& c : components_.pre_constraints) {
    if (!c) throw std::invalid_argument("Attack: null pre-transformation constraint");
  }
}

AttackResult Attack::attack_one(const AttackedText& text, std::optional<std::size_t> ground_truth,
                                const AttackOptions& options) const {
  auto started = std::chrono::steady_clock::now();
  std::unique_ptr<GoalFunction> goal = components_.goal->clone();
  GoalFunctionResult initial = goal->init_example(text, ground_truth);
  initial.num_queries_so_far = 1;

  AttackResult out;
  out.original = text;
  out.perturbed = initial.input;
  out.original_output = initial.raw_output;
  out.perturbed_output = initial.raw_output;
  out.ground_truth = ground_truth;
  out.original_score = initial.score;
  out.perturbed_score = initial.score;
  out.num_queries = 1;

  if (initial.status == GoalStatus::kSkipped) {
    out.status = AttackStatus::kSkipped;
  } else {
    // The initial check spends one unit of any budget; the search gets the
    // remainder.
    std::optional<std::uint64_t> search_budget = options.query_budget;
    if (search_budget) *search_budget = *search_budget > 0 ? *search_budget - 1 : 0;
    AttackContext ctx(components_, *goal, std::move(initial), options.seed, search_budget,
                      options.cache.get());
    GoalFunctionResult final = components_.search->search(ctx);
    out.perturbed = final.input;
    out.perturbed_output = final.raw_output;
    out.perturbed_score = final.score;
    out.num_queries = 1 + ctx.queries_used();
    switch (final.status) {
      case GoalStatus::kSucceeded:
        out.status = AttackStatus::kSuccessful;
        break;
      case GoalStatus::kMaximizing:
        out.status = AttackStatus::kMaximized;
        break;
      default:
        out.status = AttackStatus::kFailed;
        break;
    }
  }
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

AttackSummary summarize(const std::vector<AttackResult>& results) {
  AttackSummary s;
  s.total = results.size();
  double pct_sum = 0.0;
  std::uint64_t query_sum = 0;
  std::size_t attacked = 0;
  for (const AttackResult& r : results) {
    s.total_wall_time_seconds += r.wall_time_seconds;
    switch (r.status) {
      case AttackStatus::kSuccessful: {
        ++s.successes;
        if (!r.original.words().empty()) {
          pct_sum += 100.0 * static_cast<double>(aligned_word_differences(r.original, r.perturbed)) /
                     static_cast<double>(r.original.words().size());
        }
        break;
      }
      case AttackStatus::kFailed: ++s.failures; break;
      case AttackStatus::kSkipped: ++s.skipped; break;
      case AttackStatus::kMaximized: ++s.maximized; break;
    }
    if (r.status != AttackStatus::kSkipped) {
      query_sum += r.num_queries;
      ++attacked;
    }
  }
  std::size_t denom = s.successes + s.failures;
  s.success_rate = denom == 0 ? 0.0 : static_cast<double>(s.successes) / static_cast<double>(denom);
  s.mean_percent_words_perturbed =
      s.successes == 0 ? 0.0 : pct_sum / static_cast<double>(s.successes);
  s.mean_queries = attacked == 0 ? 0.0 : static_cast<double>(query_sum) / static_cast<double>(attacked);
  return s;
}

std::pair<std::vector<AttackResult>, AttackSummary> attack_dataset(
    const Attack& attack, const std::vector<DatasetExample>& dataset,
    const DatasetAttackOptions& options,
    const std::function<void(const AttackResult&, std::size_t)>& on_result) {
  std::size_t n = std::min(options.num_examples, dataset.size());
  if (n == 0) throw std::invalid_argument("attack_dataset: no examples to attack");

  std::vector<AttackResult> results(n);
  std::size_t workers = std::max<std::size_t>(1, std::min(options.num_workers, n));

  std::shared_ptr<ResultCache> shared;
  std::vector<std::shared_ptr<ResultCache>> per_worker(workers);
  if (options.use_cache) {
    if (options.shared_cache) {
      shared = std::make_shared<ResultCache>();
    } else {
      for (auto& cache : per_worker) cache = std::make_shared<ResultCache>();
    }
  }

  std::atomic<std::size_t> next{0};
  auto run_worker = [&](std::size_t worker) {
    AttackOptions per_example;
    per_example.query_budget = options.query_budget;
    per_example.cache = shared ? shared : per_worker[worker];
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      per_example.seed = mix_seed(options.seed, i);
      results[i] = attack.attack_one(dataset[i].text, dataset[i].label, per_example);
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
    for (std::thread& t : pool) t.join();
  }

  if (on_result) {
    for (std::size_t i = 0; i < n; ++i) on_result(results[i], i);
  }
  AttackSummary summary = summarize(results);
  return {std::move(results), summary};
}

}  // namespace textadv
