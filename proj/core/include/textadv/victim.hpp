#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace textadv {

// Victims are model-agnostic black boxes over raw strings: text in, scores or
// text out. Implementations must be const-callable and thread-safe so dataset
// examples can be attacked concurrently.

class ClassifierModel {
 public:
  virtual ~ClassifierModel() = default;
  // One probability row per input text; rows sum to 1.
  virtual std::vector<std::vector<double>> predict_proba(
      const std::vector<std::string>& texts) const = 0;
  virtual std::size_t num_labels() const = 0;
  virtual std::string model_id() const = 0;
};

class TextToTextModel {
 public:
  virtual ~TextToTextModel() = default;
  virtual std::vector<std::string> translate(const std::vector<std::string>& texts) const = 0;
  virtual std::string model_id() const = 0;
};

// What a goal function gets back from a victim for one input.
using VictimOutput = std::variant<std::vector<double>, std::string>;

// Word-for-word dictionary translator. Known words (case-insensitive) map to
// their dictionary entry; unknown words are copied verbatim; separators are
// preserved, so the output keeps the input's punctuation shape.
class ToyTranslator : public TextToTextModel {
 public:
  explicit ToyTranslator(std::map<std::string, std::string> dictionary);

  std::vector<std::string> translate(const std::vector<std::string>& texts) const override;
  std::string model_id() const override { return "toy-translator"; }

  const std::map<std::string, std::string>& dictionary() const { return dict_; }

 private:
  std::map<std::string, std::string> dict_;
};

// argmax with ties resolved toward the lowest index.
std::size_t argmax_label(const std::vector<double>& scores);

}  // namespace textadv
