#include "textadv/victim.hpp"

#include <stdexcept>

#include "textadv/attacked_text.hpp"
#include "textadv/util.hpp"

namespace textadv {

ToyTranslator::ToyTranslator(std::map<std::string, std::string> dictionary)
    : dict_(std::move(dictionary)) {}

std::vector<std::string> ToyTranslator::translate(const std::vector<std::string>& texts) const {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    AttackedText t(text);
    std::string result;
    const auto& seps = t.separators();
    for (std::size_t i = 0; i < t.num_words(); ++i) {
      result += seps[i];
      auto it = dict_.find(lowercase(t.words()[i]));
      result += it == dict_.end() ? t.words()[i] : it->second;
    }
    result += seps[t.num_words()];
    out.push_back(std::move(result));
  }
  return out;
}

std::size_t argmax_label(const std::vector<double>& scores) {
  if (scores.empty()) throw std::invalid_argument("argmax_label: empty scores");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace textadv
