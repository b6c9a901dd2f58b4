#include "textadv/recipes.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textadv/constraints.hpp"
#include "textadv/goal.hpp"
#include "textadv/linear_model.hpp"
#include "textadv/search.hpp"
#include "textadv/transformations.hpp"

namespace textadv {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

// Components that exist upstream but depend on neural language models or
// sentence encoders, which this engine does not ship. Named here so the
// error says "unsupported", not "unknown".
bool is_unsupported_component(const std::string& name) {
  static const std::set<std::string> kNames = {
      "GoogleLanguageModel", "LearningToWriteLanguageModel", "GPT2",
      "UniversalSentenceEncoder", "WordSwapMaskedLM",
  };
  return kNames.count(name) > 0;
}

[[noreturn]] void fail_unsupported(const std::string& name) {
  fail("unsupported component " + name +
       ": neural language-model and sentence-encoder components are not "
       "available in this engine");
}

// ---------------------------------------------------------------------------
// Python-literal list parsing. InputColumnModification's dump shows its
// parameters as python literals (['premise', 'hypothesis'] and {'premise'}),
// and the spec keeps the exact strings, so the builder parses them back.

std::vector<std::string> parse_string_items(const std::string& literal, char open, char close,
                                            const std::string& what) {
  std::size_t i = 0;
  auto skip_spaces = [&] {
    while (i < literal.size() && literal[i] == ' ') ++i;
  };
  skip_spaces();
  if (i >= literal.size() || literal[i] != open) {
    fail(what + ": expected a literal starting with '" + std::string(1, open) + "', got \"" +
         literal + "\"");
  }
  ++i;
  std::vector<std::string> items;
  skip_spaces();
  if (i < literal.size() && literal[i] == close) {
    ++i;
  } else {
    while (true) {
      skip_spaces();
      if (i >= literal.size() || (literal[i] != '\'' && literal[i] != '"')) {
        fail(what + ": expected a quoted string in \"" + literal + "\"");
      }
      const char quote = literal[i++];
      std::string item;
      while (i < literal.size() && literal[i] != quote) item += literal[i++];
      if (i >= literal.size()) fail(what + ": unterminated string in \"" + literal + "\"");
      ++i;  // closing quote
      items.push_back(std::move(item));
      skip_spaces();
      if (i < literal.size() && literal[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (i >= literal.size() || literal[i] != close) {
      fail(what + ": expected '" + std::string(1, close) + "' in \"" + literal + "\"");
    }
    ++i;
  }
  skip_spaces();
  if (i != literal.size()) fail(what + ": trailing text in \"" + literal + "\"");
  return items;
}

std::vector<std::string> parse_string_list(const std::string& literal, const std::string& what) {
  return parse_string_items(literal, '[', ']', what);
}

std::set<std::string> parse_string_set(const std::string& literal, const std::string& what) {
  auto items = parse_string_items(literal, '{', '}', what);
  return {items.begin(), items.end()};
}

std::string render_string_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "'" + items[i] + "'";
  }
  return out + "]";
}

std::string render_string_set(const std::vector<std::string>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "'" + items[i] + "'";
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Recipe blueprints. Parameter order and value spelling match the prototype
// dumps, so render_attack_spec reproduces them byte for byte. "-lite"
// recipes drop the language-model or sentence-encoder constraint of their
// namesake and renumber the rest.

ComponentSpec untargeted() { return ComponentSpec("UntargetedClassification"); }

ComponentSpec repeat_modification() { return ComponentSpec("RepeatModification"); }

ComponentSpec stopword_modification() { return ComponentSpec("StopwordModification"); }

ComponentSpec greedy_wir(const std::string& method) {
  return ComponentSpec("GreedyWordSwapWIR", {{"wir_method", method}});
}

ComponentSpec word_swap_embedding(const std::string& max_candidates) {
  return ComponentSpec("WordSwapEmbedding",
                       {{"max_candidates", max_candidates}, {"embedding_type", "paragramcf"}});
}

ComponentSpec genetic_algorithm(const std::string& name, const std::string& give_up) {
  return ComponentSpec(name, {{"pop_size", "60"},
                              {"max_iters", "20"},
                              {"temp", "0.3"},
                              {"give_up_if_no_improvement", give_up}});
}

ComponentSpec premise_column_modification() {
  return ComponentSpec("InputColumnModification",
                       {{"matching_column_labels", "['premise', 'hypothesis']"},
                        {"columns_to_ignore", "{'premise'}"}});
}

ComponentSpec char_swap(const std::string& name, const std::string& random_one) {
  return ComponentSpec(name, {{"random_one", random_one}});
}

AttackSpec alzantot_lite_spec() {
  AttackSpec s;
  s.search_method = genetic_algorithm("GeneticAlgorithm", "False");
  s.goal_function = untargeted();
  s.transformation = word_swap_embedding("8");
  s.constraints.push_back(ComponentSpec(
      "MaxWordsPerturbed", {{"max_percent", "0.2"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("WordEmbeddingDistance",
                                        {{"embedding_type", "paragramcf"},
                                         {"max_mse_dist", "0.5"},
                                         {"cased", "False"},
                                         {"include_unknown_words", "True"},
                                         {"compare_against_original", "False"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  s.constraints.push_back(premise_column_modification());
  return s;
}

AttackSpec fast_alzantot_lite_spec() {
  AttackSpec s;
  s.search_method = genetic_algorithm("GeneticAlgorithm", "False");
  s.goal_function = untargeted();
  s.transformation = word_swap_embedding("8");
  s.constraints.push_back(ComponentSpec("MaxWordsPerturbed", {{"max_percent", "0.2"}}));
  s.constraints.push_back(ComponentSpec("WordEmbeddingDistance",
                                        {{"embedding_type", "paragramcf"},
                                         {"max_mse_dist", "0.5"},
                                         {"cased", "False"},
                                         {"include_unknown_words", "True"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

// Population search seeded from the genetic algorithm with single-cut
// crossover and elite mutation; perturbation caps and embedding-distance
// bounds mirror its sibling recipes with the looser 0.4 word budget.
AttackSpec iga_lite_spec() {
  AttackSpec s;
  s.search_method = genetic_algorithm("ImprovedGeneticAlgorithm", "True");
  s.goal_function = untargeted();
  s.transformation = word_swap_embedding("50");
  s.constraints.push_back(ComponentSpec(
      "MaxWordsPerturbed", {{"max_percent", "0.4"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("WordEmbeddingDistance",
                                        {{"embedding_type", "paragramcf"},
                                         {"max_mse_dist", "0.5"},
                                         {"cased", "False"},
                                         {"include_unknown_words", "True"},
                                         {"compare_against_original", "True"}}));
  // No RepeatModification: this search revisits and re-perturbs indices.
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec deepwordbug_spec() {
  AttackSpec s;
  s.search_method = greedy_wir("unk");
  s.goal_function = untargeted();
  s.transformation = ComponentSpec("CompositeTransformation");
  s.transformation.add_child("0", char_swap("WordSwapNeighboringCharacterSwap", "True"));
  s.transformation.add_child("1", char_swap("WordSwapRandomCharacterSubstitution", "True"));
  s.transformation.add_child("2", char_swap("WordSwapRandomCharacterDeletion", "True"));
  s.transformation.add_child("3", char_swap("WordSwapRandomCharacterInsertion", "True"));
  s.constraints.push_back(ComponentSpec(
      "LevenshteinEditDistance", {{"max_edit_distance", "30"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec hotflip_spec() {
  AttackSpec s;
  s.search_method = ComponentSpec("BeamSearch", {{"beam_width", "10"}});
  s.goal_function = untargeted();
  s.transformation = ComponentSpec("WordSwapGradientBased", {{"top_n", "1"}});
  s.constraints.push_back(ComponentSpec(
      "MaxWordsPerturbed", {{"max_num_words", "2"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("WordEmbeddingDistance",
                                        {{"embedding_type", "paragramcf"},
                                         {"min_cos_sim", "0.8"},
                                         {"cased", "False"},
                                         {"include_unknown_words", "True"},
                                         {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("PartOfSpeech", {{"tagger_type", "nltk"},
                                                         {"tagset", "universal"},
                                                         {"allow_verb_noun_swap", "True"},
                                                         {"compare_against_original", "True"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  s.is_black_box = false;
  return s;
}

AttackSpec input_reduction_spec() {
  AttackSpec s;
  s.search_method = greedy_wir("delete");
  s.goal_function = ComponentSpec("InputReduction", {{"maximizable", "True"}});
  s.transformation = ComponentSpec("WordDeletion");
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec kuleshov_lite_spec() {
  AttackSpec s;
  s.search_method = ComponentSpec("GreedySearch");
  s.goal_function = untargeted();
  s.transformation = word_swap_embedding("15");
  s.constraints.push_back(ComponentSpec(
      "MaxWordsPerturbed", {{"max_percent", "0.5"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("ThoughtVector",
                                        {{"embedding_type", "paragramcf"},
                                         {"metric", "max_euclidean"},
                                         {"threshold", "-0.2"},
                                         {"window_size", "inf"},
                                         {"skip_text_shorter_than_window", "False"},
                                         {"compare_against_original", "True"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec morpheus_spec() {
  AttackSpec s;
  s.search_method = ComponentSpec("GreedySearch");
  s.goal_function =
      ComponentSpec("MinimizeBleu", {{"maximizable", "False"}, {"target_bleu", "0.0"}});
  s.transformation = ComponentSpec("WordSwapInflections");
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec pso_spec() {
  AttackSpec s;
  s.search_method = ComponentSpec("ParticleSwarmOptimization");
  s.goal_function = untargeted();
  s.transformation = ComponentSpec("WordSwapHowNet", {{"max_candidates", "-1"}});
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  s.constraints.push_back(premise_column_modification());
  return s;
}

AttackSpec pruthi_spec() {
  AttackSpec s;
  s.search_method = ComponentSpec("GreedySearch");
  s.goal_function = untargeted();
  s.transformation = ComponentSpec("CompositeTransformation");
  s.transformation.add_child("0", char_swap("WordSwapNeighboringCharacterSwap", "False"));
  s.transformation.add_child("1", char_swap("WordSwapRandomCharacterDeletion", "False"));
  s.transformation.add_child("2", char_swap("WordSwapRandomCharacterInsertion", "False"));
  s.transformation.add_child("3", ComponentSpec("WordSwapQWERTY"));
  s.constraints.push_back(ComponentSpec(
      "MaxWordsPerturbed", {{"max_num_words", "1"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("MinWordLength"));
  s.constraints.push_back(stopword_modification());
  s.constraints.push_back(repeat_modification());
  return s;
}

AttackSpec pwws_spec() {
  AttackSpec s;
  s.search_method = greedy_wir("pwws");
  s.goal_function = untargeted();
  s.transformation = ComponentSpec("WordSwapWordNet");
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec seq2sick_spec() {
  AttackSpec s;
  s.search_method = greedy_wir("unk");
  s.goal_function = ComponentSpec("NonOverlappingOutput");
  s.transformation = word_swap_embedding("50");
  s.constraints.push_back(ComponentSpec(
      "LevenshteinEditDistance", {{"max_edit_distance", "30"}, {"compare_against_original", "True"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec textbugger_lite_spec() {
  AttackSpec s;
  s.search_method = greedy_wir("unk");
  s.goal_function = untargeted();
  s.transformation = ComponentSpec("CompositeTransformation");
  s.transformation.add_child("0", char_swap("WordSwapRandomCharacterInsertion", "True"));
  s.transformation.add_child("1", char_swap("WordSwapRandomCharacterDeletion", "True"));
  s.transformation.add_child("2", char_swap("WordSwapNeighboringCharacterSwap", "True"));
  s.transformation.add_child("3", ComponentSpec("WordSwapHomoglyphSwap"));
  s.transformation.add_child("4", word_swap_embedding("5"));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  return s;
}

AttackSpec textfooler_lite_spec() {
  AttackSpec s;
  s.search_method = greedy_wir("del");
  s.goal_function = untargeted();
  s.transformation = word_swap_embedding("50");
  s.constraints.push_back(ComponentSpec("WordEmbeddingDistance",
                                        {{"embedding_type", "paragramcf"},
                                         {"min_cos_sim", "0.5"},
                                         {"cased", "False"},
                                         {"include_unknown_words", "True"},
                                         {"compare_against_original", "True"}}));
  s.constraints.push_back(ComponentSpec("PartOfSpeech", {{"tagger_type", "nltk"},
                                                         {"tagset", "universal"},
                                                         {"allow_verb_noun_swap", "True"},
                                                         {"compare_against_original", "True"}}));
  s.constraints.push_back(repeat_modification());
  s.constraints.push_back(stopword_modification());
  s.constraints.push_back(premise_column_modification());
  return s;
}

const std::map<std::string, AttackSpec (*)()>& recipe_registry() {
  static const std::map<std::string, AttackSpec (*)()> kRecipes = {
      {"alzantot-lite", alzantot_lite_spec},
      {"deepwordbug", deepwordbug_spec},
      {"fast-alzantot-lite", fast_alzantot_lite_spec},
      {"hotflip", hotflip_spec},
      {"iga-lite", iga_lite_spec},
      {"input-reduction", input_reduction_spec},
      {"kuleshov-lite", kuleshov_lite_spec},
      {"morpheus", morpheus_spec},
      {"pruthi", pruthi_spec},
      {"pso", pso_spec},
      {"pwws", pwws_spec},
      {"seq2sick", seq2sick_spec},
      {"textbugger-lite", textbugger_lite_spec},
      {"textfooler-lite", textfooler_lite_spec},
  };
  return kRecipes;
}

// ---------------------------------------------------------------------------
// Component builders. Each maps one ComponentSpec to a live component,
// validating parameters and naming any missing resource or victim.

void require_classifier(const AttackBuildInputs& inputs, const std::string& who) {
  if (!inputs.classifier) fail(who + " requires a classifier victim");
}

void require_translator(const AttackBuildInputs& inputs, const std::string& who) {
  if (!inputs.translator) fail(who + " requires a text-to-text victim");
}

template <typename T>
void require_resource(const std::shared_ptr<T>& resource, const std::string& who,
                      const std::string& resource_name) {
  if (!resource) fail(who + " requires the " + resource_name + " resource");
}

std::shared_ptr<const GoalFunction> build_goal(const ComponentSpec& spec,
                                               const AttackBuildInputs& inputs) {
  const std::string& name = spec.name;
  std::shared_ptr<const GoalFunction> goal;
  if (name == "UntargetedClassification") {
    require_classifier(inputs, name);
    goal = std::make_shared<UntargetedClassification>(inputs.classifier);
  } else if (name == "TargetedClassification") {
    require_classifier(inputs, name);
    long long target = spec.require_int("target_class");
    if (target < 0) fail("TargetedClassification: target_class must be non-negative");
    goal = std::make_shared<TargetedClassification>(inputs.classifier,
                                                    static_cast<std::size_t>(target));
  } else if (name == "InputReduction") {
    require_classifier(inputs, name);
    goal = std::make_shared<InputReduction>(inputs.classifier);
  } else if (name == "MinimizeBleu") {
    require_translator(inputs, name);
    double target_bleu = spec.find_double("target_bleu").value_or(0.0);
    goal = std::make_shared<MinimizeBleu>(inputs.translator, target_bleu);
  } else if (name == "NonOverlappingOutput") {
    require_translator(inputs, name);
    goal = std::make_shared<NonOverlappingOutput>(inputs.translator);
  } else if (is_unsupported_component(name)) {
    fail_unsupported(name);
  } else {
    fail("unknown goal function " + name +
         " (valid: UntargetedClassification, TargetedClassification, InputReduction, "
         "MinimizeBleu, NonOverlappingOutput)");
  }
  // The dump may state maximizable; it is a property of the goal, not a
  // knob, so a contradictory value is a blueprint error.
  if (auto stated = spec.find_bool("maximizable");
      stated.has_value() && *stated != goal->maximizable()) {
    fail(name + ": maximizable is " + (goal->maximizable() ? "True" : "False") +
         " and cannot be overridden");
  }
  return goal;
}

std::shared_ptr<const SearchMethod> build_search(const ComponentSpec& spec) {
  const std::string& name = spec.name;
  if (name == "GreedyWordSwapWIR") {
    return std::make_shared<GreedyWordSwapWIR>(wir_method_from_string(spec.require("wir_method")));
  }
  if (name == "GreedySearch") {
    return std::make_shared<GreedySearch>();
  }
  if (name == "BeamSearch") {
    long long width = spec.require_int("beam_width");
    if (width <= 0) fail("BeamSearch: beam_width must be positive");
    return std::make_shared<BeamSearch>(static_cast<std::size_t>(width));
  }
  if (name == "GeneticAlgorithm" || name == "ImprovedGeneticAlgorithm") {
    GeneticOptions options;
    options.variant =
        name == "GeneticAlgorithm" ? GeneticVariant::kAlzantot : GeneticVariant::kIga;
    if (auto v = spec.find_int("pop_size")) {
      if (*v <= 0) fail(name + ": pop_size must be positive");
      options.pop_size = static_cast<std::size_t>(*v);
    }
    if (auto v = spec.find_int("max_iters")) {
      if (*v < 0) fail(name + ": max_iters must be non-negative");
      options.max_iters = static_cast<std::size_t>(*v);
    }
    if (auto v = spec.find_double("temp")) {
      if (*v <= 0) fail(name + ": temp must be positive");
      options.temp = *v;
    }
    if (auto v = spec.find_bool("give_up_if_no_improvement")) {
      options.give_up_if_no_improvement = *v;
    }
    return std::make_shared<GeneticAlgorithm>(options);
  }
  if (name == "ParticleSwarmOptimization") {
    ParticleSwarmOptions options;
    if (auto v = spec.find_int("pop_size")) {
      if (*v <= 0) fail(name + ": pop_size must be positive");
      options.pop_size = static_cast<std::size_t>(*v);
    }
    if (auto v = spec.find_int("max_iters")) {
      if (*v < 0) fail(name + ": max_iters must be non-negative");
      options.max_iters = static_cast<std::size_t>(*v);
    }
    return std::make_shared<ParticleSwarmOptimization>(options);
  }
  fail("unknown search method " + name +
       " (valid: GreedyWordSwapWIR, GreedySearch, BeamSearch, GeneticAlgorithm, "
       "ImprovedGeneticAlgorithm, ParticleSwarmOptimization)");
}

std::shared_ptr<const Transformation> build_transformation(const ComponentSpec& spec,
                                                           const AttackBuildInputs& inputs) {
  const std::string& name = spec.name;
  if (name == "CompositeTransformation") {
    auto members = spec.children();
    if (members.empty()) fail("CompositeTransformation: no member transformations");
    std::vector<std::shared_ptr<const Transformation>> built;
    built.reserve(members.size());
    for (const ComponentSpec* member : members) built.push_back(build_transformation(*member, inputs));
    return std::make_shared<CompositeTransformation>(std::move(built));
  }
  if (name == "WordSwapEmbedding") {
    require_resource(inputs.resources.embedding, name, "word embedding");
    long long max_candidates = spec.require_int("max_candidates");
    if (max_candidates <= 0) fail("WordSwapEmbedding: max_candidates must be positive");
    return std::make_shared<WordSwapEmbedding>(inputs.resources.embedding,
                                               static_cast<std::size_t>(max_candidates));
  }
  if (name == "WordSwapWordNet") {
    require_resource(inputs.resources.thesaurus, name, "thesaurus");
    int max_candidates = static_cast<int>(spec.find_int("max_candidates").value_or(-1));
    return std::make_shared<WordSwapLexicon>(inputs.resources.thesaurus, nullptr, max_candidates);
  }
  if (name == "WordSwapHowNet") {
    require_resource(inputs.resources.sememes, name, "sememe lexicon");
    require_resource(inputs.resources.pos_lexicon, name, "part-of-speech lexicon");
    int max_candidates = static_cast<int>(spec.find_int("max_candidates").value_or(-1));
    return std::make_shared<WordSwapLexicon>(inputs.resources.sememes,
                                             inputs.resources.pos_lexicon, max_candidates);
  }
  if (name == "WordSwapInflections") {
    require_resource(inputs.resources.inflections, name, "inflection table");
    return std::make_shared<WordSwapInflections>(inputs.resources.inflections);
  }
  if (name == "WordDeletion") {
    return std::make_shared<WordDeletion>();
  }
  if (name == "WordSwapGradientBased") {
    auto linear = std::dynamic_pointer_cast<const LinearTextClassifier>(inputs.classifier);
    if (!linear) fail("WordSwapGradientBased requires a linear classifier victim");
    long long top_n = spec.require_int("top_n");
    if (top_n <= 0) fail("WordSwapGradientBased: top_n must be positive");
    return std::make_shared<WordSwapGradientBased>(linear, static_cast<std::size_t>(top_n));
  }
  static const std::map<std::string, CharSwapKind> kCharSwaps = {
      {"WordSwapRandomCharacterInsertion", CharSwapKind::kInsert},
      {"WordSwapRandomCharacterDeletion", CharSwapKind::kDelete},
      {"WordSwapNeighboringCharacterSwap", CharSwapKind::kNeighborSwap},
      {"WordSwapRandomCharacterSubstitution", CharSwapKind::kSubstitute},
      {"WordSwapHomoglyphSwap", CharSwapKind::kHomoglyph},
      {"WordSwapQWERTY", CharSwapKind::kQwerty},
  };
  if (auto it = kCharSwaps.find(name); it != kCharSwaps.end()) {
    bool random_one = spec.find_bool("random_one").value_or(false);
    return std::make_shared<CharacterTransform>(it->second, random_one,
                                                inputs.resources.char_maps);
  }
  if (is_unsupported_component(name)) fail_unsupported(name);
  fail("unknown transformation " + name +
       " (valid: WordSwapEmbedding, WordSwapWordNet, WordSwapHowNet, WordSwapInflections, "
       "WordDeletion, WordSwapGradientBased, WordSwapRandomCharacterInsertion, "
       "WordSwapRandomCharacterDeletion, WordSwapNeighboringCharacterSwap, "
       "WordSwapRandomCharacterSubstitution, WordSwapHomoglyphSwap, WordSwapQWERTY, "
       "CompositeTransformation)");
}

bool compare_against_original_of(const ComponentSpec& spec) {
  return spec.find_bool("compare_against_original").value_or(true);
}

// Builds one constraint spec into whichever of the two lists it belongs to.
void build_constraint(const ComponentSpec& spec, const AttackBuildInputs& inputs,
                      std::vector<std::shared_ptr<const Constraint>>& pairwise,
                      std::vector<std::shared_ptr<const PreTransformationConstraint>>& pre) {
  const std::string& name = spec.name;
  const bool cao = compare_against_original_of(spec);
  if (name == "MaxWordsPerturbed") {
    auto percent = spec.find_double("max_percent");
    auto count = spec.find_int("max_num_words");
    if (percent.has_value() == count.has_value()) {
      fail("MaxWordsPerturbed: exactly one of max_percent and max_num_words is required");
    }
    if (percent) {
      pairwise.push_back(std::make_shared<MaxWordsPerturbed>(MaxWordsPerturbed::percent(*percent, cao)));
    } else {
      if (*count < 0) fail("MaxWordsPerturbed: max_num_words must be non-negative");
      pairwise.push_back(std::make_shared<MaxWordsPerturbed>(
          MaxWordsPerturbed::count(static_cast<std::size_t>(*count), cao)));
    }
    return;
  }
  if (name == "WordEmbeddingDistance") {
    require_resource(inputs.resources.embedding, name, "word embedding");
    WordEmbeddingDistanceOptions options;
    options.min_cos_sim = spec.find_double("min_cos_sim");
    options.max_mse_dist = spec.find_double("max_mse_dist");
    options.cased = spec.find_bool("cased").value_or(false);
    options.include_unknown_words = spec.find_bool("include_unknown_words").value_or(true);
    options.compare_against_original = cao;
    pairwise.push_back(std::make_shared<WordEmbeddingDistance>(inputs.resources.embedding, options));
    return;
  }
  if (name == "PartOfSpeech") {
    require_resource(inputs.resources.pos_lexicon, name, "part-of-speech lexicon");
    bool allow_verb_noun_swap = spec.find_bool("allow_verb_noun_swap").value_or(true);
    pairwise.push_back(
        std::make_shared<PartOfSpeech>(inputs.resources.pos_lexicon, allow_verb_noun_swap, cao));
    return;
  }
  if (name == "ThoughtVector") {
    require_resource(inputs.resources.embedding, name, "word embedding");
    ThoughtVectorOptions options;
    if (const std::string* metric = spec.find("metric")) {
      if (*metric == "max_euclidean") {
        options.metric = ThoughtVectorMetric::kMaxEuclidean;
      } else if (*metric == "cosine") {
        options.metric = ThoughtVectorMetric::kCosine;
      } else {
        fail("ThoughtVector: unknown metric " + *metric + " (valid: max_euclidean, cosine)");
      }
    }
    if (auto v = spec.find_double("threshold")) options.threshold = *v;
    if (auto v = spec.find_double("window_size")) options.window_size = *v;
    options.skip_text_shorter_than_window =
        spec.find_bool("skip_text_shorter_than_window").value_or(false);
    options.compare_against_original = cao;
    pairwise.push_back(std::make_shared<ThoughtVector>(inputs.resources.embedding, options));
    return;
  }
  if (name == "LevenshteinEditDistance") {
    long long max_edit_distance = spec.require_int("max_edit_distance");
    if (max_edit_distance < 0) fail("LevenshteinEditDistance: max_edit_distance must be non-negative");
    pairwise.push_back(std::make_shared<LevenshteinEditDistance>(
        static_cast<std::size_t>(max_edit_distance), cao));
    return;
  }
  if (name == "BleuDifference") {
    pairwise.push_back(std::make_shared<BleuDifference>(spec.require_double("max_diff"), cao));
    return;
  }
  if (name == "ChrfDifference") {
    pairwise.push_back(std::make_shared<ChrfDifference>(spec.require_double("max_diff"), cao));
    return;
  }
  if (name == "PercentWordsChanged") {
    pairwise.push_back(
        std::make_shared<PercentWordsChanged>(spec.require_double("max_percent"), cao));
    return;
  }
  if (name == "RepeatModification") {
    pre.push_back(std::make_shared<RepeatModification>());
    return;
  }
  if (name == "StopwordModification") {
    pre.push_back(std::make_shared<StopwordModification>(inputs.resources.stopwords));
    return;
  }
  if (name == "MinWordLength") {
    long long min_length = spec.find_int("min_length").value_or(4);
    if (min_length < 1) fail("MinWordLength: min_length must be at least 1");
    pre.push_back(std::make_shared<MinWordLength>(static_cast<std::size_t>(min_length)));
    return;
  }
  if (name == "MaxWordIndexModification") {
    long long max_length = spec.require_int("max_length");
    if (max_length < 0) fail("MaxWordIndexModification: max_length must be non-negative");
    pre.push_back(std::make_shared<MaxWordIndexModification>(static_cast<std::size_t>(max_length)));
    return;
  }
  if (name == "InputColumnModification") {
    auto labels = parse_string_list(spec.require("matching_column_labels"),
                                    "InputColumnModification.matching_column_labels");
    auto ignored = parse_string_set(spec.require("columns_to_ignore"),
                                    "InputColumnModification.columns_to_ignore");
    pre.push_back(std::make_shared<InputColumnModification>(std::move(labels), std::move(ignored)));
    return;
  }
  if (is_unsupported_component(name)) fail_unsupported(name);
  fail("unknown constraint " + name +
       " (valid: MaxWordsPerturbed, WordEmbeddingDistance, PartOfSpeech, ThoughtVector, "
       "LevenshteinEditDistance, BleuDifference, ChrfDifference, PercentWordsChanged, "
       "RepeatModification, StopwordModification, MinWordLength, MaxWordIndexModification, "
       "InputColumnModification)");
}

// ---------------------------------------------------------------------------
// CLI token tables. Each maps "name:key=value,..." to a blueprint in dump
// vocabulary, normalizing booleans and expanding '+'-joined lists.

std::string normalize_bool(const std::string& value, const std::string& what) {
  std::string lowered = value;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "true") return "True";
  if (lowered == "false") return "False";
  fail(what + ": expected true or false, got \"" + value + "\"");
}

std::vector<std::string> split_plus(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  for (char c : value) {
    if (c == '+') {
      items.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  items.push_back(item);
  return items;
}

// One CLI parameter: the dump key it feeds, how its value is rewritten, and
// whether the token must provide it.
enum class CliValueKind { kVerbatim, kBool, kStringList, kStringSet };

struct CliParam {
  const char* key;
  CliValueKind kind;
  bool required;
};

struct CliComponent {
  const char* cli_name;
  const char* dump_name;
  std::vector<CliParam> params;
};

ComponentSpec spec_from_token(const CliComponentToken& token, const std::vector<CliComponent>& table,
                              const std::string& what) {
  const CliComponent* component = nullptr;
  for (const CliComponent& row : table) {
    if (token.name == row.cli_name) {
      component = &row;
      break;
    }
  }
  if (!component) {
    std::vector<std::string> names;
    names.reserve(table.size());
    for (const CliComponent& row : table) names.push_back(row.cli_name);
    fail("unknown " + what + " \"" + token.name + "\" (valid: " + join_names(names) + ")");
  }
  ComponentSpec spec(component->dump_name);
  std::set<std::string> seen;
  for (const auto& [key, value] : token.params) {
    const CliParam* param = nullptr;
    for (const CliParam& p : component->params) {
      if (key == p.key) {
        param = &p;
        break;
      }
    }
    if (!param) fail(what + " " + token.name + ": unknown parameter \"" + key + "\"");
    if (!seen.insert(key).second) fail(what + " " + token.name + ": duplicate parameter \"" + key + "\"");
    switch (param->kind) {
      case CliValueKind::kVerbatim:
        spec.add(key, value);
        break;
      case CliValueKind::kBool:
        spec.add(key, normalize_bool(value, token.name + "." + key));
        break;
      case CliValueKind::kStringList:
        spec.add(key, render_string_list(split_plus(value)));
        break;
      case CliValueKind::kStringSet:
        spec.add(key, render_string_set(split_plus(value)));
        break;
    }
  }
  for (const CliParam& p : component->params) {
    if (p.required && !seen.count(p.key)) {
      fail(what + " " + token.name + ": missing required parameter \"" + std::string(p.key) + "\"");
    }
  }
  return spec;
}

const std::vector<CliComponent>& goal_cli_table() {
  static const std::vector<CliComponent> kTable = {
      {"untargeted-classification", "UntargetedClassification", {}},
      {"targeted-classification",
       "TargetedClassification",
       {{"target_class", CliValueKind::kVerbatim, true}}},
      {"input-reduction", "InputReduction", {}},
      {"minimize-bleu", "MinimizeBleu", {{"target_bleu", CliValueKind::kVerbatim, false}}},
      {"non-overlapping-output", "NonOverlappingOutput", {}},
  };
  return kTable;
}

const std::vector<CliComponent>& search_cli_table() {
  static const std::vector<CliComponent> kTable = {
      {"greedy-search", "GreedySearch", {}},
      {"beam-search", "BeamSearch", {{"beam_width", CliValueKind::kVerbatim, true}}},
      {"greedy-wir", "GreedyWordSwapWIR", {{"wir_method", CliValueKind::kVerbatim, true}}},
      {"genetic-algorithm",
       "GeneticAlgorithm",
       {{"pop_size", CliValueKind::kVerbatim, false},
        {"max_iters", CliValueKind::kVerbatim, false},
        {"temp", CliValueKind::kVerbatim, false},
        {"give_up_if_no_improvement", CliValueKind::kBool, false}}},
      {"improved-genetic-algorithm",
       "ImprovedGeneticAlgorithm",
       {{"pop_size", CliValueKind::kVerbatim, false},
        {"max_iters", CliValueKind::kVerbatim, false},
        {"temp", CliValueKind::kVerbatim, false},
        {"give_up_if_no_improvement", CliValueKind::kBool, false}}},
      {"particle-swarm",
       "ParticleSwarmOptimization",
       {{"pop_size", CliValueKind::kVerbatim, false},
        {"max_iters", CliValueKind::kVerbatim, false}}},
  };
  return kTable;
}

const std::vector<CliComponent>& transformation_cli_table() {
  static const std::vector<CliComponent> kTable = {
      {"word-swap-embedding",
       "WordSwapEmbedding",
       {{"max_candidates", CliValueKind::kVerbatim, true}}},
      {"word-swap-wordnet", "WordSwapWordNet", {{"max_candidates", CliValueKind::kVerbatim, false}}},
      {"word-swap-hownet", "WordSwapHowNet", {{"max_candidates", CliValueKind::kVerbatim, false}}},
      {"word-swap-inflections", "WordSwapInflections", {}},
      {"word-deletion", "WordDeletion", {}},
      {"word-swap-gradient", "WordSwapGradientBased", {{"top_n", CliValueKind::kVerbatim, true}}},
      {"char-insert",
       "WordSwapRandomCharacterInsertion",
       {{"random_one", CliValueKind::kBool, false}}},
      {"char-delete",
       "WordSwapRandomCharacterDeletion",
       {{"random_one", CliValueKind::kBool, false}}},
      {"char-swap",
       "WordSwapNeighboringCharacterSwap",
       {{"random_one", CliValueKind::kBool, false}}},
      {"char-substitute",
       "WordSwapRandomCharacterSubstitution",
       {{"random_one", CliValueKind::kBool, false}}},
      {"char-homoglyph", "WordSwapHomoglyphSwap", {{"random_one", CliValueKind::kBool, false}}},
      {"char-qwerty", "WordSwapQWERTY", {{"random_one", CliValueKind::kBool, false}}},
  };
  return kTable;
}

const std::vector<CliComponent>& constraint_cli_table() {
  static const std::vector<CliComponent> kTable = {
      {"repeat", "RepeatModification", {}},
      {"stopword", "StopwordModification", {}},
      {"min-word-length", "MinWordLength", {{"min_length", CliValueKind::kVerbatim, false}}},
      {"max-word-index",
       "MaxWordIndexModification",
       {{"max_length", CliValueKind::kVerbatim, true}}},
      {"input-column",
       "InputColumnModification",
       {{"matching_column_labels", CliValueKind::kStringList, true},
        {"columns_to_ignore", CliValueKind::kStringSet, true}}},
      {"max-words-perturbed",
       "MaxWordsPerturbed",
       {{"max_percent", CliValueKind::kVerbatim, false},
        {"max_num_words", CliValueKind::kVerbatim, false},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"word-embedding-distance",
       "WordEmbeddingDistance",
       {{"min_cos_sim", CliValueKind::kVerbatim, false},
        {"max_mse_dist", CliValueKind::kVerbatim, false},
        {"cased", CliValueKind::kBool, false},
        {"include_unknown_words", CliValueKind::kBool, false},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"part-of-speech",
       "PartOfSpeech",
       {{"allow_verb_noun_swap", CliValueKind::kBool, false},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"thought-vector",
       "ThoughtVector",
       {{"metric", CliValueKind::kVerbatim, false},
        {"threshold", CliValueKind::kVerbatim, false},
        {"window_size", CliValueKind::kVerbatim, false},
        {"skip_text_shorter_than_window", CliValueKind::kBool, false},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"levenshtein",
       "LevenshteinEditDistance",
       {{"max_edit_distance", CliValueKind::kVerbatim, true},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"bleu",
       "BleuDifference",
       {{"max_diff", CliValueKind::kVerbatim, true},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"chrf",
       "ChrfDifference",
       {{"max_diff", CliValueKind::kVerbatim, true},
        {"compare_against_original", CliValueKind::kBool, false}}},
      {"percent-words-changed",
       "PercentWordsChanged",
       {{"max_percent", CliValueKind::kVerbatim, true},
        {"compare_against_original", CliValueKind::kBool, false}}},
  };
  return kTable;
}

// Composite transformations arrive as "composite:member+member"; member
// tokens are bare names from the transformation table (no per-member
// parameters).
ComponentSpec composite_from_cli(const std::string& members_value) {
  if (members_value.empty()) fail("transformation composite: no member transformations");
  ComponentSpec spec("CompositeTransformation");
  std::size_t index = 0;
  for (const std::string& member : split_plus(members_value)) {
    if (member.empty()) fail("transformation composite: empty member name");
    if (member.find('=') != std::string::npos || member.find(':') != std::string::npos) {
      fail("transformation composite: member \"" + member + "\" may not carry parameters");
    }
    spec.add_child(std::to_string(index++),
                   spec_from_token(parse_cli_component(member), transformation_cli_table(),
                                   "transformation"));
  }
  return spec;
}

}  // namespace

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, make] : recipe_registry()) names.push_back(name);
    return names;
  }();
  return kNames;
}

AttackSpec recipe_spec(const std::string& name) {
  const auto& registry = recipe_registry();
  auto it = registry.find(name);
  if (it == registry.end()) {
    fail("unknown recipe \"" + name + "\" (valid: " + join_names(recipe_names()) + ")");
  }
  return it->second();
}

Attack build_attack(const AttackSpec& spec, const AttackBuildInputs& inputs) {
  AttackComponents components;
  components.goal = build_goal(spec.goal_function, inputs);
  components.search = build_search(spec.search_method);
  components.transformation = build_transformation(spec.transformation, inputs);
  if (components.transformation->is_black_box() != spec.is_black_box) {
    fail(std::string("is_black_box is ") + (spec.is_black_box ? "True" : "False") +
         " but the transformation is " +
         (components.transformation->is_black_box() ? "black-box" : "gradient-based"));
  }
  for (const ComponentSpec& constraint : spec.constraints) {
    build_constraint(constraint, inputs, components.constraints, components.pre_constraints);
  }
  return Attack(std::move(components), spec);
}

Attack build_recipe(const std::string& name, const AttackBuildInputs& inputs) {
  return build_attack(recipe_spec(name), inputs);
}

ComponentSpec goal_spec_from_cli(std::string_view token) {
  return spec_from_token(parse_cli_component(token), goal_cli_table(), "goal function");
}

ComponentSpec search_spec_from_cli(std::string_view token) {
  return spec_from_token(parse_cli_component(token), search_cli_table(), "search method");
}

ComponentSpec transformation_spec_from_cli(std::string_view token) {
  constexpr std::string_view kCompositePrefix = "composite:";
  if (token.substr(0, kCompositePrefix.size()) == kCompositePrefix) {
    return composite_from_cli(std::string(token.substr(kCompositePrefix.size())));
  }
  if (token == "composite") fail("transformation composite: no member transformations");
  return spec_from_token(parse_cli_component(token), transformation_cli_table(), "transformation");
}

ComponentSpec constraint_spec_from_cli(std::string_view token) {
  return spec_from_token(parse_cli_component(token), constraint_cli_table(), "constraint");
}

}  // namespace textadv
