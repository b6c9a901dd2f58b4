#include "textadv/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "textadv/util.hpp"

namespace textadv {

namespace {

bool is_unk_token(std::string_view lowered) { return lowered == kUnkToken; }

}  // namespace

LinearTextClassifier::LinearTextClassifier(std::vector<std::string> vocabulary,
                                           std::size_t num_labels, FeatureConfig config)
    : config_(config), num_labels_(num_labels), vocab_words_(std::move(vocabulary)) {
  if (num_labels_ < 2) throw std::invalid_argument("classifier needs at least 2 labels");
  for (std::size_t i = 0; i < vocab_words_.size(); ++i) {
    std::string key = lowercase(vocab_words_[i]);
    if (vocab_.contains(key)) throw std::invalid_argument("duplicate vocabulary word: " + key);
    vocab_.emplace(std::move(key), static_cast<std::uint32_t>(i));
  }
  weights_.assign(num_labels_ * feature_dim(), 0.0);
  bias_.assign(num_labels_, 0.0);
}

std::size_t LinearTextClassifier::feature_dim() const {
  return vocab_words_.size() + (config_.char_ngrams ? config_.ngram_buckets : 0);
}

bool LinearTextClassifier::in_vocabulary(std::string_view word) const {
  return vocab_.contains(lowercase(word));
}

std::vector<std::pair<std::uint32_t, double>> LinearTextClassifier::word_features(
    std::string_view word) const {
  std::vector<std::pair<std::uint32_t, double>> out;
  std::string lower = lowercase(word);
  if (is_unk_token(lower)) return out;
  auto it = vocab_.find(lower);
  if (it == vocab_.end()) return out;
  out.emplace_back(it->second, 1.0);
  if (config_.char_ngrams) {
    std::string padded = "^" + lower + "$";
    for (int n = config_.ngram_min; n <= config_.ngram_max; ++n) {
      if (padded.size() < static_cast<std::size_t>(n)) break;
      for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= padded.size(); ++i) {
        std::uint64_t h = fnv1a64(std::string_view(padded).substr(i, static_cast<std::size_t>(n)));
        std::uint32_t id = static_cast<std::uint32_t>(
            vocab_words_.size() + (h % config_.ngram_buckets));
        out.emplace_back(id, 1.0);
      }
    }
  }
  return out;
}

std::vector<std::pair<std::uint32_t, double>> LinearTextClassifier::features(
    std::string_view text) const {
  std::unordered_map<std::uint32_t, double> acc;
  AttackedText t(text);
  for (const std::string& w : t.words()) {
    for (const auto& [id, v] : word_features(w)) acc[id] += v;
  }
  std::vector<std::pair<std::uint32_t, double>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> LinearTextClassifier::logits_from_features(
    const std::vector<std::pair<std::uint32_t, double>>& feats) const {
  std::vector<double> z = bias_;
  const std::size_t dim = feature_dim();
  for (std::size_t l = 0; l < num_labels_; ++l) {
    const double* row = &weights_[l * dim];
    double s = 0.0;
    for (const auto& [id, v] : feats) s += row[id] * v;
    z[l] += s;
  }
  return z;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> LinearTextClassifier::predict_one(const std::string& text) const {
  return softmax(logits_from_features(features(text)));
}

std::vector<std::vector<double>> LinearTextClassifier::predict_proba(
    const std::vector<std::string>& texts) const {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(predict_one(text));
  return out;
}

std::string LinearTextClassifier::model_id() const {
  std::ostringstream id;
  id << "linear-" << num_labels_ << "l-" << vocab_words_.size() << "v";
  if (config_.char_ngrams) id << "-ng" << config_.ngram_min << "." << config_.ngram_max;
  return id.str();
}

double LinearTextClassifier::loss(std::string_view text, std::size_t label) const {
  if (label >= num_labels_) throw std::out_of_range("loss: label out of range");
  std::vector<double> p = softmax(logits_from_features(features(text)));
  return -std::log(std::max(p[label], 1e-300));
}

std::vector<double> LinearTextClassifier::gradient_word_importance(const AttackedText& t,
                                                                   std::size_t label) const {
  if (label >= num_labels_) throw std::out_of_range("gradient: label out of range");
  std::vector<double> p = softmax(logits_from_features(features(t.text())));
  // dL/dz, then per-feature dL/df = sum_l g_l * W[l][f].
  std::vector<double> g = p;
  g[label] -= 1.0;
  const std::size_t dim = feature_dim();
  std::vector<double> scores(t.num_words(), 0.0);
  for (std::size_t i = 0; i < t.num_words(); ++i) {
    double sq = 0.0;
    for (const auto& [id, v] : word_features(t.words()[i])) {
      double df = 0.0;
      for (std::size_t l = 0; l < num_labels_; ++l) df += g[l] * weights_[l * dim + id];
      sq += (df * v) * (df * v);
    }
    scores[i] = std::sqrt(sq);
  }
  return scores;
}

std::vector<std::pair<std::string, double>> LinearTextClassifier::word_swap_loss_ranking(
    const AttackedText& t, std::size_t label, std::size_t word_index) const {
  if (word_index >= t.num_words()) throw std::out_of_range("word index out of range");
  std::vector<std::pair<std::string, double>> out;
  const std::string current = lowercase(t.words()[word_index]);
  if (!vocab_.contains(current)) return out;

  const auto base_feats = features(t.text());
  const std::vector<double> base_logits = logits_from_features(base_feats);
  const double base_loss = -std::log(std::max(softmax(base_logits)[label], 1e-300));
  const auto cur_feats = word_features(t.words()[word_index]);
  const std::size_t dim = feature_dim();

  // Delta of the current word's features on each logit, subtracted once.
  std::vector<double> minus_cur(num_labels_, 0.0);
  for (std::size_t l = 0; l < num_labels_; ++l) {
    for (const auto& [id, v] : cur_feats) minus_cur[l] += weights_[l * dim + id] * v;
  }

  out.reserve(vocab_words_.size());
  std::vector<double> z(num_labels_);
  for (std::size_t w = 0; w < vocab_words_.size(); ++w) {
    const std::string& candidate = vocab_words_[w];
    if (lowercase(candidate) == current) continue;
    const auto cand_feats = word_features(candidate);
    for (std::size_t l = 0; l < num_labels_; ++l) {
      double add = 0.0;
      for (const auto& [id, v] : cand_feats) add += weights_[l * dim + id] * v;
      z[l] = base_logits[l] - minus_cur[l] + add;
    }
    double swapped_loss = -std::log(std::max(softmax(z)[label], 1e-300));
    out.emplace_back(candidate, swapped_loss - base_loss);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

// --- Training ---------------------------------------------------------------

std::vector<std::string> training_vocabulary(const std::vector<LabeledExample>& examples) {
  std::vector<std::string> vocab;
  std::unordered_map<std::string, bool> seen;
  for (const auto& ex : examples) {
    AttackedText t(ex.text);
    for (const std::string& w : t.words()) {
      std::string lower = lowercase(w);
      if (is_unk_token(lower)) continue;
      if (!seen.emplace(lower, true).second) continue;
      vocab.push_back(lower);
    }
  }
  return vocab;
}

EpochStats run_sgd_epoch(LinearTextClassifier& model, const std::vector<LabeledExample>& examples,
                         const std::vector<std::vector<std::pair<std::uint32_t, double>>>& feats,
                         std::vector<std::size_t>& order, int batch_size, double learning_rate,
                         std::mt19937_64& rng) {
  const std::size_t dim = model.feature_dim();
  const std::size_t num_labels = model.num_labels();
  const int batch = std::max(1, batch_size);

  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rand_index(rng, i)]);
  }
  double loss_sum = 0.0;
  std::size_t correct = 0;
  for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(batch)) {
    const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(batch));
    std::unordered_map<std::uint32_t, std::vector<double>> grad;  // feature -> per-label
    std::vector<double> grad_bias(num_labels, 0.0);
    for (std::size_t bi = start; bi < end; ++bi) {
      const std::size_t i = order[bi];
      std::vector<double> z = model.bias();
      for (std::size_t l = 0; l < num_labels; ++l) {
        for (const auto& [id, v] : feats[i]) z[l] += model.weights()[l * dim + id] * v;
      }
      std::vector<double> p = softmax(z);
      loss_sum += -std::log(std::max(p[examples[i].label], 1e-300));
      if (argmax_label(p) == examples[i].label) ++correct;
      for (std::size_t l = 0; l < num_labels; ++l) {
        double g = p[l] - (l == examples[i].label ? 1.0 : 0.0);
        grad_bias[l] += g;
        for (const auto& [id, v] : feats[i]) {
          auto [it, inserted] = grad.try_emplace(id, std::vector<double>(num_labels, 0.0));
          it->second[l] += g * v;
        }
      }
    }
    const double scale = learning_rate / static_cast<double>(end - start);
    // Deterministic update order: features sorted by id.
    std::vector<std::uint32_t> ids;
    ids.reserve(grad.size());
    for (const auto& [id, g] : grad) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (std::uint32_t id : ids) {
      const std::vector<double>& g = grad[id];
      for (std::size_t l = 0; l < num_labels; ++l) model.weights()[l * dim + id] -= scale * g[l];
    }
    for (std::size_t l = 0; l < num_labels; ++l) model.bias()[l] -= scale * grad_bias[l];
  }

  EpochStats stats;
  stats.train_loss = order.empty() ? 0.0 : loss_sum / static_cast<double>(order.size());
  stats.train_accuracy =
      order.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(order.size());
  return stats;
}

TrainedClassifier train_linear_classifier(const std::vector<LabeledExample>& examples,
                                          const TrainOptions& options) {
  if (examples.empty()) throw std::invalid_argument("training set is empty");
  std::size_t num_labels = 0;
  for (const auto& ex : examples) num_labels = std::max(num_labels, ex.label + 1);
  if (num_labels < 2) num_labels = 2;

  TrainedClassifier out{
      LinearTextClassifier(training_vocabulary(examples), num_labels, options.features), {}};
  LinearTextClassifier& model = out.model;
  const std::size_t dim = model.feature_dim();

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  // Deterministic dev split off the tail of a seeded shuffle.
  std::size_t dev_count = 0;
  if (options.dev_fraction > 0.0) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rand_index(rng, i)]);
    }
    dev_count = static_cast<std::size_t>(options.dev_fraction * static_cast<double>(order.size()));
    dev_count = std::min(dev_count, order.size() - 1);
  }
  std::vector<std::size_t> train_idx(order.begin(), order.end() - static_cast<std::ptrdiff_t>(dev_count));
  std::vector<std::size_t> dev_idx(order.end() - static_cast<std::ptrdiff_t>(dev_count), order.end());

  // Precompute feature vectors once; they do not change across epochs.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> feats(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) feats[i] = model.features(examples[i].text);

  auto eval_split = [&](const std::vector<std::size_t>& idx) {
    if (idx.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i : idx) {
      std::vector<double> z = model.bias();
      for (std::size_t l = 0; l < z.size(); ++l) {
        for (const auto& [id, v] : feats[i]) z[l] += model.weights()[l * dim + id] * v;
      }
      if (argmax_label(softmax(z)) == examples[i].label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(idx.size());
  };

  double best_dev = -1.0;
  int stale_epochs = 0;
  std::vector<double> best_weights, best_bias;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    EpochStats stats = run_sgd_epoch(model, examples, feats, train_idx, options.batch_size,
                                     options.learning_rate, rng);
    stats.dev_accuracy = eval_split(dev_idx);
    out.history.push_back(stats);

    if (options.early_stopping_patience > 0 && !dev_idx.empty()) {
      if (stats.dev_accuracy > best_dev) {
        best_dev = stats.dev_accuracy;
        best_weights = model.weights();
        best_bias = model.bias();
        stale_epochs = 0;
      } else if (++stale_epochs >= options.early_stopping_patience) {
        break;
      }
    }
  }

  if (options.early_stopping_patience > 0 && !best_weights.empty()) {
    model.weights() = best_weights;
    model.bias() = best_bias;
  }
  return out;
}

double classifier_accuracy(const ClassifierModel& model,
                           const std::vector<LabeledExample>& examples) {
  if (examples.empty()) return 0.0;
  std::vector<std::string> texts;
  texts.reserve(examples.size());
  for (const auto& ex : examples) texts.push_back(ex.text);
  const auto probs = model.predict_proba(texts);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (argmax_label(probs[i]) == examples[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

// --- Persistence ------------------------------------------------------------

namespace {

constexpr std::string_view kMagic = "textadv-model v1";

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex_double(const std::string& s, const std::string& path, std::size_t lineno) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void save_classifier(const LinearTextClassifier& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  const FeatureConfig& fc = model.feature_config();
  out << kMagic << " linear\n";
  out << "labels " << model.num_labels() << "\n";
  out << "features " << (fc.char_ngrams ? "bow+chargrams" : "bow");
  if (fc.char_ngrams) out << " " << fc.ngram_min << " " << fc.ngram_max << " " << fc.ngram_buckets;
  out << "\n";
  out << "vocab " << model.vocabulary().size() << "\n";
  for (const std::string& w : model.vocabulary()) out << w << "\n";
  out << "bias";
  for (double b : model.bias()) out << " " << hex_double(b);
  out << "\n";
  const std::size_t dim = model.feature_dim();
  for (std::size_t l = 0; l < model.num_labels(); ++l) {
    out << "w" << l;
    for (std::size_t f = 0; f < dim; ++f) out << " " << hex_double(model.weights()[l * dim + f]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed writing model file: " + path);
}

namespace {

std::string read_line(std::istream& in, const std::string& path, std::size_t& lineno) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path + ": truncated model file (line " + std::to_string(lineno + 1) + ")");
  }
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

LinearTextClassifier load_classifier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::size_t lineno = 0;
  std::string header = read_line(in, path, lineno);
  if (header != std::string(kMagic) + " linear") {
    throw std::runtime_error(path + ": not a linear classifier file (header '" + header + "')");
  }

  auto expect_field = [&](const std::string& line, const std::string& key) {
    if (line.rfind(key + " ", 0) != 0) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected '" + key + "'");
    }
    return line.substr(key.size() + 1);
  };

  std::size_t labels = std::stoul(expect_field(read_line(in, path, lineno), "labels"));
  std::vector<std::string> feat_fields = split(expect_field(read_line(in, path, lineno), "features"), ' ');
  FeatureConfig fc;
  if (feat_fields.at(0) == "bow+chargrams") {
    fc.char_ngrams = true;
    fc.ngram_min = std::stoi(feat_fields.at(1));
    fc.ngram_max = std::stoi(feat_fields.at(2));
    fc.ngram_buckets = std::stoul(feat_fields.at(3));
  } else if (feat_fields.at(0) != "bow") {
    throw std::runtime_error(path + ": unknown feature kind '" + feat_fields.at(0) + "'");
  }
  std::size_t vocab_size = std::stoul(expect_field(read_line(in, path, lineno), "vocab"));
  std::vector<std::string> vocab;
  vocab.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) vocab.push_back(read_line(in, path, lineno));

  LinearTextClassifier model(std::move(vocab), labels, fc);
  {
    std::vector<std::string> fields = split(read_line(in, path, lineno), ' ');
    if (fields.empty() || fields[0] != "bias" || fields.size() != labels + 1) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad bias line");
    }
    for (std::size_t l = 0; l < labels; ++l) {
      model.bias()[l] = parse_hex_double(fields[l + 1], path, lineno);
    }
  }
  const std::size_t dim = model.feature_dim();
  for (std::size_t l = 0; l < labels; ++l) {
    std::vector<std::string> fields = split(read_line(in, path, lineno), ' ');
    if (fields.size() != dim + 1 || fields[0] != "w" + std::to_string(l)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad weight row");
    }
    for (std::size_t f = 0; f < dim; ++f) {
      model.weights()[l * dim + f] = parse_hex_double(fields[f + 1], path, lineno);
    }
  }
  return model;
}

void save_translator(const ToyTranslator& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << kMagic << " translator\n";
  out << "entries " << model.dictionary().size() << "\n";
  for (const auto& [src, dst] : model.dictionary()) out << src << "\t" << dst << "\n";
  if (!out) throw std::runtime_error("failed writing model file: " + path);
}

ToyTranslator load_translator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::size_t lineno = 0;
  std::string header = read_line(in, path, lineno);
  if (header != std::string(kMagic) + " translator") {
    throw std::runtime_error(path + ": not a translator file (header '" + header + "')");
  }
  std::string entries_line = read_line(in, path, lineno);
  if (entries_line.rfind("entries ", 0) != 0) {
    throw std::runtime_error(path + ":2: expected 'entries N'");
  }
  std::size_t n = std::stoul(entries_line.substr(8));
  std::map<std::string, std::string> dict;
  for (std::size_t i = 0; i < n; ++i) {
    std::string line = read_line(in, path, lineno);
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected src<TAB>dst");
    }
    dict[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return ToyTranslator(std::move(dict));
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  in.close();
  LoadedModel out;
  if (header == std::string(kMagic) + " linear") {
    out.classifier = std::make_shared<LinearTextClassifier>(load_classifier(path));
  } else if (header == std::string(kMagic) + " translator") {
    out.translator = std::make_shared<ToyTranslator>(load_translator(path));
  } else {
    throw std::runtime_error(path + ": unrecognized model header '" + header + "'");
  }
  return out;
}

}  // namespace textadv
