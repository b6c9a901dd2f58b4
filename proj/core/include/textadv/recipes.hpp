#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "textadv/attack.hpp"
#include "textadv/component_spec.hpp"
#include "textadv/resources.hpp"
#include "textadv/victim.hpp"

namespace textadv {

// Models and resources attack construction draws from. Classification goals
// need `classifier`, text-to-text goals need `translator`; gradient-based
// components additionally need the classifier to be a LinearTextClassifier.
struct AttackBuildInputs {
  std::shared_ptr<const ClassifierModel> classifier;
  std::shared_ptr<const TextToTextModel> translator;
  ResourceSet resources;
};

// The implemented attack recipes. "-lite" marks recipes whose neural
// language-model or sentence-encoder constraints are dropped.
const std::vector<std::string>& recipe_names();

// Blueprint for one recipe; unknown names raise an error listing the valid
// recipes.
AttackSpec recipe_spec(const std::string& name);

// Builds a runnable Attack from a blueprint. Component and parameter names
// use the prototype-dump vocabulary; a component that exists upstream but is
// out of scope here (language models, sentence encoders, masked-LM swaps)
// raises an unsupported-component error naming it.
Attack build_attack(const AttackSpec& spec, const AttackBuildInputs& inputs);

Attack build_recipe(const std::string& name, const AttackBuildInputs& inputs);

// CLI component tokens ("name:key=value,key=value") mapped to blueprints.
// List-valued parameters join their items with '+'. Boolean values accept
// true/false in any case.
ComponentSpec goal_spec_from_cli(std::string_view token);
ComponentSpec search_spec_from_cli(std::string_view token);
ComponentSpec transformation_spec_from_cli(std::string_view token);
ComponentSpec constraint_spec_from_cli(std::string_view token);

}  // namespace textadv
