#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textadv/attacked_text.hpp"
#include "textadv/victim.hpp"

namespace textadv {

// The reserved probe token. It contributes no features, so replacing a word
// with it measures the model's output with that word effectively removed.
inline constexpr std::string_view kUnkToken = "<unk>";

struct FeatureConfig {
  // Hashed character n-grams of in-vocabulary words, added on top of the
  // bag-of-words feature. Out-of-vocabulary words contribute nothing at all,
  // which keeps the feature map additive per word and makes the unk probe
  // exact.
  bool char_ngrams = false;
  int ngram_min = 2;
  int ngram_max = 4;
  std::size_t ngram_buckets = 4096;
};

// Multinomial logistic regression over additive per-word features. Because
// the model is linear and features are additive over words, the effect of
// swapping one word is computable in closed form, which the white-box
// transformation and importance ranking rely on.
class LinearTextClassifier : public ClassifierModel {
 public:
  LinearTextClassifier() = default;
  LinearTextClassifier(std::vector<std::string> vocabulary, std::size_t num_labels,
                       FeatureConfig config);

  std::vector<std::vector<double>> predict_proba(
      const std::vector<std::string>& texts) const override;
  std::size_t num_labels() const override { return num_labels_; }
  std::string model_id() const override;

  std::vector<double> predict_one(const std::string& text) const;

  const std::vector<std::string>& vocabulary() const { return vocab_words_; }
  const FeatureConfig& feature_config() const { return config_; }
  std::size_t feature_dim() const;
  bool in_vocabulary(std::string_view word) const;

  // Raw parameter access (label-major weight matrix, one row per label).
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& bias() const { return bias_; }

  // Sparse feature vector of a text: feature id -> count.
  std::vector<std::pair<std::uint32_t, double>> features(std::string_view text) const;
  // Features of a single word; empty for OOV words and the unk token.
  std::vector<std::pair<std::uint32_t, double>> word_features(std::string_view word) const;

  // Cross-entropy of `label` on the text.
  double loss(std::string_view text, std::size_t label) const;

  // White-box hooks ----------------------------------------------------------

  // Per-word sensitivity of the label's loss: L2 norm of the loss gradient
  // restricted to each word's features. OOV words score 0.
  std::vector<double> gradient_word_importance(const AttackedText& t, std::size_t label) const;

  // Vocabulary words ranked by the loss increase caused by swapping word i to
  // them, largest first (exact for this model, not a first-order estimate).
  // Excludes the word currently at i; empty if that word is OOV. Ties break
  // toward the lower vocabulary id.
  std::vector<std::pair<std::string, double>> word_swap_loss_ranking(
      const AttackedText& t, std::size_t label, std::size_t word_index) const;

 private:
  std::vector<double> logits_from_features(
      const std::vector<std::pair<std::uint32_t, double>>& feats) const;

  FeatureConfig config_;
  std::size_t num_labels_ = 0;
  std::vector<std::string> vocab_words_;
  std::unordered_map<std::string, std::uint32_t> vocab_;
  std::vector<double> weights_;  // num_labels_ x feature_dim()
  std::vector<double> bias_;
};

std::vector<double> softmax(const std::vector<double>& logits);

// --- Training ---------------------------------------------------------------

struct TrainOptions {
  int epochs = 50;
  double learning_rate = 0.1;
  int batch_size = 32;
  std::uint64_t seed = 0;
  // Epochs without dev-accuracy improvement before stopping; 0 disables.
  // When active, the best-dev weights are restored at the end.
  int early_stopping_patience = 0;
  double dev_fraction = 0.0;
  FeatureConfig features;
};

struct EpochStats {
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double dev_accuracy = 0.0;
};

struct LabeledExample {
  std::string text;
  std::size_t label = 0;
};

struct TrainedClassifier {
  LinearTextClassifier model;
  std::vector<EpochStats> history;
};

// Mini-batch gradient descent on the softmax cross-entropy. The vocabulary is
// built from the training texts in first-appearance order; given a seed the
// whole run is deterministic. num_labels is inferred as max(label)+1 and must
// be at least 2.
TrainedClassifier train_linear_classifier(const std::vector<LabeledExample>& examples,
                                          const TrainOptions& options);

// The vocabulary train_linear_classifier builds: lowercased words of the
// training texts in first-appearance order, unk excluded.
std::vector<std::string> training_vocabulary(const std::vector<LabeledExample>& examples);

// One training pass of train_linear_classifier, exposed so loops that swap
// the dataset between epochs (adversarial training) update weights the same
// way: shuffles order in place with rng, then applies batched updates over
// examples[order]. feats[i] must be model.features(examples[i].text).
// Returns the pass's mean loss and accuracy; dev_accuracy stays zero.
EpochStats run_sgd_epoch(LinearTextClassifier& model, const std::vector<LabeledExample>& examples,
                         const std::vector<std::vector<std::pair<std::uint32_t, double>>>& feats,
                         std::vector<std::size_t>& order, int batch_size, double learning_rate,
                         std::mt19937_64& rng);

double classifier_accuracy(const ClassifierModel& model,
                           const std::vector<LabeledExample>& examples);

// --- Persistence ------------------------------------------------------------

// Versioned text format; parameters are stored as hex floats so a round trip
// is bit-identical.
void save_classifier(const LinearTextClassifier& model, const std::string& path);
LinearTextClassifier load_classifier(const std::string& path);

void save_translator(const ToyTranslator& model, const std::string& path);
ToyTranslator load_translator(const std::string& path);

// Loads either model kind based on the file header.
struct LoadedModel {
  std::shared_ptr<LinearTextClassifier> classifier;
  std::shared_ptr<ToyTranslator> translator;
};
LoadedModel load_model(const std::string& path);

}  // namespace textadv
