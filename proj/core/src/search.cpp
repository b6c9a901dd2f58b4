#include "textadv/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "textadv/linear_model.hpp"
#include "textadv/util.hpp"

namespace textadv {

namespace {

bool succeeded(const GoalFunctionResult& r) { return r.status == GoalStatus::kSucceeded; }

// Index of the highest score, ties toward the earlier candidate.
std::optional<std::size_t> argmax_score(const std::vector<GoalFunctionResult>& results) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!best || results[i].score > results[*best].score) best = i;
  }
  return best;
}

// Best SUCCEEDED result of a batch, ties toward the earlier candidate.
std::optional<std::size_t> argmax_success(const std::vector<GoalFunctionResult>& results) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!succeeded(results[i])) continue;
    if (!best || results[i].score > results[*best].score) best = i;
  }
  return best;
}

// Position the chain-root index `original` occupies in t, if it survived.
std::optional<std::size_t> position_of_original(const AttackedText& t, std::size_t original) {
  for (std::size_t i = 0; i < t.words().size(); ++i) {
    if (t.original_index(i) == static_cast<int>(original)) return i;
  }
  return std::nullopt;
}

// Softmax over `scores`, written into a weight vector that sums to 1.
std::vector<double> softmax_weights(const std::vector<double>& scores, double temp) {
  double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> w(scores.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp((scores[i] - peak) / temp);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

std::size_t sample_softmax(const std::vector<double>& scores, double temp,
                           std::mt19937_64& rng) {
  if (scores.empty()) throw std::invalid_argument("sample_softmax: empty score vector");
  if (!(temp > 0.0)) throw std::invalid_argument("sample_softmax: temp must be positive");
  std::vector<double> w = softmax_weights(scores, temp);
  double u = rand_unit(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    cumulative += w[i];
    if (u < cumulative) return i;
  }
  return w.size() - 1;
}

// --- Greedy word-importance ranking ----------------------------------------

std::string_view to_string(WirMethod method) {
  switch (method) {
    case WirMethod::kUnk: return "unk";
    case WirMethod::kDelete: return "delete";
    case WirMethod::kPwws: return "pwws";
    case WirMethod::kGradient: return "gradient";
    case WirMethod::kRandom: return "random";
  }
  return "unk";
}

WirMethod wir_method_from_string(std::string_view token) {
  if (token == "unk") return WirMethod::kUnk;
  if (token == "delete" || token == "del") return WirMethod::kDelete;
  if (token == "pwws") return WirMethod::kPwws;
  if (token == "gradient") return WirMethod::kGradient;
  if (token == "random") return WirMethod::kRandom;
  throw std::invalid_argument("unknown wir_method: " + std::string(token));
}

GreedyWordSwapWIR::GreedyWordSwapWIR(WirMethod method) : method_(method) {}

GoalFunctionResult GreedyWordSwapWIR::search(SearchContext& ctx) const {
  const GoalFunctionResult& initial = ctx.initial();
  const AttackedText& original = initial.input;
  std::set<std::size_t> allowed_set = ctx.allowed_indices(original);
  std::vector<std::size_t> allowed(allowed_set.begin(), allowed_set.end());
  if (allowed.empty()) return initial;

  // Importance per allowed index; entries the budget never reached stay at
  // -inf so they sort last.
  constexpr double kUnranked = -std::numeric_limits<double>::infinity();
  std::vector<double> importance(allowed.size(), kUnranked);
  switch (method_) {
    case WirMethod::kUnk:
    case WirMethod::kDelete: {
      std::vector<AttackedText> probes;
      probes.reserve(allowed.size());
      for (std::size_t i : allowed) {
        probes.push_back(method_ == WirMethod::kUnk
                             ? original.replace_word_at(i, kUnkToken)
                             : original.delete_word_at(i));
      }
      std::vector<GoalFunctionResult> probed = ctx.evaluate(probes);
      for (std::size_t j = 0; j < probed.size(); ++j) importance[j] = probed[j].score;
      break;
    }
    case WirMethod::kPwws: {
      // Saliency = softmax of delete-probe scores; importance = saliency
      // times the best single-swap score gain at that index.
      std::vector<AttackedText> probes;
      probes.reserve(allowed.size());
      for (std::size_t i : allowed) probes.push_back(original.delete_word_at(i));
      std::vector<GoalFunctionResult> probed = ctx.evaluate(probes);
      if (probed.empty()) break;
      std::vector<double> saliency(probed.size());
      for (std::size_t j = 0; j < probed.size(); ++j) saliency[j] = probed[j].score;
      saliency = softmax_weights(saliency, 1.0);
      for (std::size_t j = 0; j < probed.size(); ++j) {
        if (ctx.budget_exhausted()) break;
        std::vector<AttackedText> cands = ctx.transformations_at(original, allowed[j]);
        double gain = 0.0;
        if (!cands.empty()) {
          std::vector<GoalFunctionResult> results = ctx.evaluate(cands);
          if (auto best = argmax_score(results)) {
            gain = results[*best].score - initial.score;
          }
        }
        importance[j] = saliency[j] * gain;
      }
      break;
    }
    case WirMethod::kGradient: {
      std::vector<double> norms = ctx.gradient_importance(original);
      for (std::size_t j = 0; j < allowed.size(); ++j) {
        if (allowed[j] < norms.size()) importance[j] = norms[allowed[j]];
      }
      break;
    }
    case WirMethod::kRandom: {
      for (std::size_t j = 0; j < allowed.size(); ++j) importance[j] = rand_unit(ctx.rng());
      break;
    }
  }

  // Visit in descending importance; stable sort keeps ties in ascending
  // index order because `allowed` is ascending.
  std::vector<std::size_t> order(allowed.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return importance[a] > importance[b]; });

  GoalFunctionResult current = initial;
  for (std::size_t j : order) {
    if (ctx.budget_exhausted()) break;
    std::optional<std::size_t> pos = position_of_original(current.input, allowed[j]);
    if (!pos) continue;  // the word was deleted by an accepted step
    std::vector<AttackedText> cands = ctx.transformations_at(current.input, *pos);
    if (cands.empty()) continue;
    std::vector<GoalFunctionResult> results = ctx.evaluate(cands);
    std::optional<std::size_t> best = argmax_score(results);
    if (!best) continue;
    if (results[*best].score > current.score) {
      current = results[*best];
      if (succeeded(current)) break;
    }
  }
  return current;
}

// --- Beam search ------------------------------------------------------------

BeamSearch::BeamSearch(std::size_t beam_width) : beam_width_(beam_width) {
  if (beam_width == 0) throw std::invalid_argument("BeamSearch: beam_width must be positive");
}

GoalFunctionResult BeamSearch::search(SearchContext& ctx) const {
  const GoalFunctionResult& initial = ctx.initial();
  GoalFunctionResult best = initial;
  std::vector<AttackedText> frontier{initial.input};
  std::set<std::string> visited{initial.input.text()};

  while (!frontier.empty() && !ctx.budget_exhausted()) {
    std::vector<AttackedText> candidates;
    for (const AttackedText& t : frontier) {
      for (AttackedText& c : ctx.transformations(t)) {
        if (visited.insert(c.text()).second) candidates.push_back(std::move(c));
      }
    }
    if (candidates.empty()) break;
    std::vector<GoalFunctionResult> results = ctx.evaluate(candidates);
    if (results.empty()) break;
    if (auto win = argmax_success(results)) return results[*win];
    if (auto top = argmax_score(results)) {
      if (results[*top].score > best.score) best = results[*top];
    }
    std::vector<std::size_t> order(results.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return results[a].score > results[b].score;
    });
    frontier.clear();
    for (std::size_t j = 0; j < order.size() && j < beam_width_; ++j) {
      frontier.push_back(results[order[j]].input);
    }
  }
  return best;
}

// --- Genetic algorithm -------------------------------------------------------

GeneticAlgorithm::GeneticAlgorithm(GeneticOptions options) : options_(options) {
  if (options_.pop_size == 0) {
    throw std::invalid_argument("GeneticAlgorithm: pop_size must be positive");
  }
  if (!(options_.temp > 0.0)) {
    throw std::invalid_argument("GeneticAlgorithm: temp must be positive");
  }
}

std::string GeneticAlgorithm::name() const {
  return options_.variant == GeneticVariant::kIga ? "ImprovedGeneticAlgorithm"
                                                  : "GeneticAlgorithm";
}

namespace {

// Word-wise crossover. Parents of unequal length (possible only with
// non-swap transformations) cannot be aligned, so the first parent wins.
AttackedText crossover_texts(const AttackedText& a, const AttackedText& b,
                             GeneticVariant variant, std::mt19937_64& rng) {
  const std::size_t n = a.words().size();
  if (n != b.words().size() || n == 0) return a;
  AttackedText child = a;
  if (variant == GeneticVariant::kIga) {
    if (n < 2) return a;
    std::size_t cut = 1 + static_cast<std::size_t>(rand_index(rng, n - 1));
    for (std::size_t i = cut; i < n; ++i) {
      if (child.words()[i] != b.words()[i]) child = child.replace_word_at(i, b.words()[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (a.words()[i] == b.words()[i]) continue;
      if (rand_index(rng, 2) == 1) child = child.replace_word_at(i, b.words()[i]);
    }
  }
  return child;
}

}  // namespace

GoalFunctionResult GeneticAlgorithm::search(SearchContext& ctx) const {
  const GoalFunctionResult& initial = ctx.initial();

  // Greedy mutation at a random allowed index: accepts only a strict score
  // improvement. give_up_if_no_improvement stops after the first failed
  // index; otherwise every allowed index gets one try, in random order.
  auto mutate = [&](const GoalFunctionResult& r) -> GoalFunctionResult {
    std::set<std::size_t> allowed_set = ctx.allowed_indices(r.input);
    std::vector<std::size_t> allowed(allowed_set.begin(), allowed_set.end());
    if (allowed.empty()) return r;
    std::vector<std::size_t> order =
        sample_without_replacement(ctx.rng(), allowed.size(), allowed.size());
    std::size_t attempts = options_.give_up_if_no_improvement ? 1 : order.size();
    for (std::size_t a = 0; a < attempts; ++a) {
      if (ctx.budget_exhausted()) break;
      std::vector<AttackedText> cands = ctx.transformations_at(r.input, allowed[order[a]]);
      if (cands.empty()) continue;
      std::vector<GoalFunctionResult> results = ctx.evaluate(cands);
      std::optional<std::size_t> best = argmax_score(results);
      if (best && results[*best].score > r.score) return results[*best];
    }
    return r;
  };

  std::vector<GoalFunctionResult> pop;
  pop.reserve(options_.pop_size);
  GoalFunctionResult best = initial;
  for (std::size_t k = 0; k < options_.pop_size; ++k) {
    pop.push_back(mutate(initial));
    if (pop.back().score > best.score) best = pop.back();
    if (succeeded(pop.back())) return pop.back();
  }

  for (std::size_t gen = 0; gen < options_.max_iters; ++gen) {
    if (ctx.budget_exhausted()) break;
    std::vector<double> scores(pop.size());
    for (std::size_t k = 0; k < pop.size(); ++k) scores[k] = pop[k].score;
    std::size_t elite = 0;
    for (std::size_t k = 1; k < pop.size(); ++k) {
      if (scores[k] > scores[elite]) elite = k;
    }

    std::vector<GoalFunctionResult> next;
    next.reserve(pop.size());
    next.push_back(pop[elite]);

    // Children needing a fresh evaluation are batched into one victim call;
    // a child whose crossover reproduces its first parent's text reuses that
    // parent's result, and a constraint-failing child falls back to it.
    struct Pending {
      std::size_t slot;
      std::size_t parent;
    };
    std::vector<Pending> pending;
    std::vector<AttackedText> batch;
    for (std::size_t k = 1; k < options_.pop_size; ++k) {
      std::size_t pa = sample_softmax(scores, options_.temp, ctx.rng());
      std::size_t pb = sample_softmax(scores, options_.temp, ctx.rng());
      AttackedText child =
          crossover_texts(pop[pa].input, pop[pb].input, options_.variant, ctx.rng());
      next.push_back(pop[pa]);  // placeholder until the batch resolves
      if (child.text() == pop[pa].input.text()) continue;
      if (!ctx.passes_constraints(child)) continue;
      pending.push_back({next.size() - 1, pa});
      batch.push_back(std::move(child));
    }
    std::vector<GoalFunctionResult> evaluated = ctx.evaluate(batch);
    for (std::size_t p = 0; p < pending.size() && p < evaluated.size(); ++p) {
      next[pending[p].slot] = evaluated[p];
    }

    for (std::size_t k = (options_.variant == GeneticVariant::kIga ? 0u : 1u);
         k < next.size(); ++k) {
      next[k] = mutate(next[k]);
    }

    pop = std::move(next);
    std::optional<GoalFunctionResult> winner;
    for (const GoalFunctionResult& r : pop) {
      if (r.score > best.score) best = r;
      if (succeeded(r) && (!winner || r.score > winner->score)) winner = r;
    }
    if (winner) return *winner;
  }
  return best;
}

// --- Particle swarm ----------------------------------------------------------

ParticleSwarmOptimization::ParticleSwarmOptimization(ParticleSwarmOptions options)
    : options_(options) {
  if (options_.pop_size == 0) {
    throw std::invalid_argument("ParticleSwarmOptimization: pop_size must be positive");
  }
}

GoalFunctionResult ParticleSwarmOptimization::search(SearchContext& ctx) const {
  const GoalFunctionResult& initial = ctx.initial();
  const AttackedText& original = initial.input;
  const std::size_t word_count = original.words().size();

  // The search space: per editable index, the original word plus every
  // replacement the transformation offers there. Non-swap candidates (which
  // change the word count) have no slot in a position vector and are skipped.
  struct Dim {
    std::size_t index;
    std::vector<std::string> options;  // options[0] is the original word
  };
  std::vector<Dim> dims;
  for (std::size_t i : ctx.allowed_indices(original)) {
    std::vector<std::string> options{original.words()[i]};
    for (const AttackedText& cand : ctx.transformations_at(original, i)) {
      if (cand.words().size() != word_count) continue;
      const std::string& w = cand.words()[i];
      if (std::find(options.begin(), options.end(), w) == options.end()) options.push_back(w);
    }
    if (options.size() > 1) dims.push_back({i, std::move(options)});
  }
  if (dims.empty()) return initial;

  auto position_text = [&](const std::vector<std::size_t>& x) {
    AttackedText t = original;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      if (x[d] != 0) t = t.replace_word_at(dims[d].index, dims[d].options[x[d]]);
    }
    return t;
  };

  struct Particle {
    std::vector<std::size_t> x;
    std::vector<double> v;
    GoalFunctionResult result;
    std::vector<std::size_t> pbest_x;
    GoalFunctionResult pbest;
  };
  std::vector<Particle> swarm(options_.pop_size);

  // Init: one random substitution per particle (reverted if it fails the
  // pairwise constraints), random change probabilities.
  struct Dirty {
    std::size_t particle;
    AttackedText text;
    std::vector<std::size_t> prev_x;  // rollback state if the budget cuts the batch
    GoalFunctionResult prev_result;
  };
  std::vector<Dirty> dirty;
  for (std::size_t k = 0; k < swarm.size(); ++k) {
    Particle& p = swarm[k];
    p.x.assign(dims.size(), 0);
    p.v.resize(dims.size());
    for (double& v : p.v) v = rand_unit(ctx.rng());
    std::size_t d = static_cast<std::size_t>(rand_index(ctx.rng(), dims.size()));
    p.x[d] = 1 + static_cast<std::size_t>(rand_index(ctx.rng(), dims[d].options.size() - 1));
    AttackedText t = position_text(p.x);
    if (!ctx.passes_constraints(t)) {
      p.x[d] = 0;
      p.result = initial;
    } else {
      dirty.push_back({k, std::move(t), std::vector<std::size_t>(dims.size(), 0), initial});
    }
  }
  auto flush_dirty = [&]() {
    if (dirty.empty()) return;
    std::vector<AttackedText> batch;
    batch.reserve(dirty.size());
    for (const Dirty& d : dirty) batch.push_back(d.text);
    std::vector<GoalFunctionResult> results = ctx.evaluate(batch);
    for (std::size_t j = 0; j < dirty.size(); ++j) {
      if (j < results.size()) {
        swarm[dirty[j].particle].result = results[j];
      } else {
        // The budget cut this particle's evaluation off: undo its move so
        // position and result stay in step.
        Particle& p = swarm[dirty[j].particle];
        p.x = dirty[j].prev_x;
        p.result = dirty[j].prev_result;
      }
    }
    dirty.clear();
  };
  for (Particle& p : swarm) {
    p.pbest_x.assign(dims.size(), 0);
    p.pbest = initial;
  }
  flush_dirty();

  GoalFunctionResult best = initial;
  auto settle = [&]() -> std::optional<GoalFunctionResult> {
    std::optional<GoalFunctionResult> winner;
    for (Particle& p : swarm) {
      if (p.result.score > p.pbest.score) {
        p.pbest = p.result;
        p.pbest_x = p.x;
      }
      if (p.pbest.score > best.score) best = p.pbest;
      if (succeeded(p.result) && (!winner || p.result.score > winner->score)) {
        winner = p.result;
      }
    }
    return winner;
  };
  if (auto winner = settle()) return *winner;

  const std::size_t T = options_.max_iters;
  for (std::size_t t = 0; t < T; ++t) {
    if (ctx.budget_exhausted()) break;
    double frac = T > 1 ? static_cast<double>(t) / static_cast<double>(T - 1) : 0.0;
    double inertia = options_.inertia_start - (options_.inertia_start - options_.inertia_end) * frac;
    // Pull toward the personal best early, the global best late.
    double c_personal = 0.8 - 0.6 * frac;
    double c_global = 0.2 + 0.6 * frac;

    std::size_t gbest = 0;
    for (std::size_t k = 1; k < swarm.size(); ++k) {
      if (swarm[k].pbest.score > swarm[gbest].pbest.score) gbest = k;
    }
    const std::vector<std::size_t> gbest_x = swarm[gbest].pbest_x;

    for (std::size_t k = 0; k < swarm.size(); ++k) {
      Particle& p = swarm[k];
      // Velocity regrows only where the particle disagrees with the global
      // best; an aligned (or zero-velocity) particle settles.
      for (std::size_t d = 0; d < dims.size(); ++d) {
        p.v[d] = p.x[d] != gbest_x[d] ? inertia * p.v[d] + (1.0 - inertia) * rand_unit(ctx.rng())
                                      : inertia * p.v[d];
      }
      std::vector<std::size_t> moved = p.x;
      for (std::size_t d = 0; d < dims.size(); ++d) {
        if (rand_unit(ctx.rng()) < c_personal * p.v[d]) moved[d] = p.pbest_x[d];
      }
      for (std::size_t d = 0; d < dims.size(); ++d) {
        if (rand_unit(ctx.rng()) < c_global * p.v[d]) moved[d] = gbest_x[d];
      }
      double mean_v = std::accumulate(p.v.begin(), p.v.end(), 0.0) / static_cast<double>(dims.size());
      if (rand_unit(ctx.rng()) < mean_v) {
        std::size_t d = static_cast<std::size_t>(rand_index(ctx.rng(), dims.size()));
        moved[d] = static_cast<std::size_t>(rand_index(ctx.rng(), dims[d].options.size()));
      }
      if (moved == p.x) continue;
      AttackedText text = position_text(moved);
      if (text.text() == p.result.input.text()) {
        p.x = std::move(moved);
        continue;
      }
      if (!ctx.passes_constraints(text)) continue;
      dirty.push_back({k, std::move(text), p.x, p.result});
      p.x = std::move(moved);
    }
    flush_dirty();
    if (auto winner = settle()) return *winner;
  }
  return best;
}

}  // namespace textadv
