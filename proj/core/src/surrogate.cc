#include "asc/surrogate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asc/rng.h"
#include "asc/text.h"
#include "json_util.h"

namespace asc {
using nlohmann::json;

void SurrogateConfig::Validate() const {
  if (epochs < 1) throw ConfigError("surrogate epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("surrogate batch size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("surrogate learning rate must be positive");
  if (l2 < 0.0) throw ConfigError("surrogate l2 must be >= 0");
}

std::vector<std::string> PairFeatures(const PairRecord& pair, bool use_auxiliary) {
  std::string aux = pair.auxiliary_text;
  if (!use_auxiliary) aux = (pair.target ? *pair.target + " " : std::string()) + pair.category;
  std::vector<std::string> out;
  for (const std::string& t : SimpleTokenize(aux)) out.push_back("a:" + ToLower(t));
  for (const std::string& t : SimpleTokenize(pair.sentence_text)) out.push_back("s:" + ToLower(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> SurrogateModel::Features(const PairRecord& pair) const {
  std::vector<int> ids;
  for (const std::string& f : PairFeatures(pair, use_auxiliary_)) {
    auto it = feature_ids_.find(f);
    if (it != feature_ids_.end()) ids.push_back(it->second);
  }
  return ids;
}

std::vector<double> SurrogateModel::Logits(const std::vector<int>& features) const {
  const std::size_t l = labels_.size();
  std::vector<double> z = bias_;
  for (int f : features) {
    const double* row = &weights_[static_cast<std::size_t>(f) * l];
    for (std::size_t j = 0; j < l; ++j) {
      if (!frozen_[j]) z[j] += row[j];
    }
  }
  return z;
}

namespace {

void Softmax(std::vector<double>& z) {
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

}  // namespace

Prediction SurrogateModel::Predict(const PairRecord& pair) const {
  std::vector<double> p = Logits(Features(pair));
  Softmax(p);
  std::array<double, kNumSentiments> scores{};
  for (std::size_t j = 0; j < labels_.size(); ++j) scores[static_cast<int>(labels_[j])] = p[j];
  return MakePrediction(pair.key(), scores);
}

SurrogateModel TrainSurrogate(const std::vector<PairRecord>& pairs, Task task,
                              const SurrogateConfig& config, Diagnostics* diag) {
  config.Validate();
  if (pairs.empty()) throw ValidationError("surrogate training set is empty");
  SurrogateModel m;
  m.task_ = task;
  m.labels_ = TaskLabels(task);
  m.use_auxiliary_ = config.use_auxiliary;
  const std::size_t l = m.labels_.size();

  std::vector<std::vector<int>> x;
  std::vector<int> y;
  std::vector<long> label_counts(l, 0);
  for (const PairRecord& p : pairs) {
    auto it = std::find(m.labels_.begin(), m.labels_.end(), p.gold_label);
    if (it == m.labels_.end()) {
      throw ValidationError("pair " + FormatKey(p.key()) + " has label " +
                            std::string(SentimentName(p.gold_label)) + " outside the " +
                            std::string(TaskName(task)) + " label set");
    }
    y.push_back(static_cast<int>(it - m.labels_.begin()));
    ++label_counts[y.back()];
    std::vector<int> ids;
    for (const std::string& f : PairFeatures(p, config.use_auxiliary)) {
      auto [fit, inserted] = m.feature_ids_.emplace(f, static_cast<int>(m.feature_names_.size()));
      if (inserted) m.feature_names_.push_back(f);
      ids.push_back(fit->second);
    }
    x.push_back(std::move(ids));
  }

  const double n = static_cast<double>(pairs.size());
  m.frozen_.assign(l, 0);
  m.bias_.resize(l);
  for (std::size_t j = 0; j < l; ++j) {
    m.bias_[j] = std::log((static_cast<double>(label_counts[j]) + 1.0) / (n + static_cast<double>(l)));
    if (label_counts[j] == 0) {
      m.frozen_[j] = 1;
      Warn(diag, "label " + std::string(SentimentName(m.labels_[j])) +
                     " absent from surrogate training data; prior-only scores");
    }
  }
  m.weights_.assign(m.feature_names_.size() * l, 0.0);

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(config.seed, HashString("surrogate")));
  std::vector<double> grad_w;
  std::vector<int> touched;
  std::vector<double> grad_b(l);
  std::vector<double> touched_grad;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[UniformIndex(rng, i)]);
    }
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double scale = config.learning_rate / static_cast<double>(end - start);
      std::fill(grad_b.begin(), grad_b.end(), 0.0);
      touched.clear();
      touched_grad.clear();
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t i = order[b];
        std::vector<double> p = m.Logits(x[i]);
        Softmax(p);
        for (std::size_t j = 0; j < l; ++j) {
          const double g = p[j] - (static_cast<int>(j) == y[i] ? 1.0 : 0.0);
          grad_b[j] += g;
          p[j] = g;
        }
        for (int f : x[i]) {
          touched.push_back(f);
          touched_grad.insert(touched_grad.end(), p.begin(), p.end());
        }
      }
      for (std::size_t t = 0; t < touched.size(); ++t) {
        double* row = &m.weights_[static_cast<std::size_t>(touched[t]) * l];
        for (std::size_t j = 0; j < l; ++j) {
          if (!m.frozen_[j]) row[j] -= scale * touched_grad[t * l + j];
        }
      }
      if (config.l2 > 0.0) {
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        const double decay = 1.0 - config.learning_rate * config.l2;
        for (int f : touched) {
          double* row = &m.weights_[static_cast<std::size_t>(f) * l];
          for (std::size_t j = 0; j < l; ++j) row[j] *= decay;
        }
      }
      for (std::size_t j = 0; j < l; ++j) {
        if (!m.frozen_[j]) m.bias_[j] -= scale * grad_b[j];
      }
    }
  }
  return m;
}

std::vector<Prediction> PredictSurrogate(const SurrogateModel& model,
                                         const std::vector<PairRecord>& pairs) {
  std::vector<Prediction> out;
  out.reserve(pairs.size());
  for (const PairRecord& p : pairs) out.push_back(model.Predict(p));
  return out;
}

void SurrogateModel::Save(const std::filesystem::path& path) const {
  json labels = json::array();
  for (Sentiment s : labels_) labels.push_back(SentimentName(s));
  json j = {{"task", TaskName(task_)},
            {"labels", labels},
            {"frozen", frozen_},
            {"use_auxiliary", use_auxiliary_},
            {"features", feature_names_},
            {"weights", weights_},
            {"bias", bias_}};
  auto out = internal::OpenForWrite(path);
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

SurrogateModel SurrogateModel::Load(const std::filesystem::path& path) {
  auto in = internal::OpenForRead(path);
  SurrogateModel m;
  try {
    const json j = json::parse(in);
    m.task_ = ParseTask(j.at("task").get<std::string>());
    for (const auto& s : j.at("labels")) m.labels_.push_back(ParseSentiment(s.get<std::string>()));
    m.frozen_ = j.at("frozen").get<std::vector<char>>();
    m.use_auxiliary_ = j.at("use_auxiliary").get<bool>();
    m.feature_names_ = j.at("features").get<std::vector<std::string>>();
    m.weights_ = j.at("weights").get<std::vector<double>>();
    m.bias_ = j.at("bias").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError("malformed surrogate model " + path.string() + ": " + e.what(), 0);
  }
  if (m.weights_.size() != m.feature_names_.size() * m.labels_.size() ||
      m.bias_.size() != m.labels_.size() || m.frozen_.size() != m.labels_.size()) {
    throw ValidationError("surrogate model " + path.string() + " has inconsistent shapes");
  }
  for (std::size_t i = 0; i < m.feature_names_.size(); ++i) {
    m.feature_ids_.emplace(m.feature_names_[i], static_cast<int>(i));
  }
  return m;
}

}  // namespace asc
