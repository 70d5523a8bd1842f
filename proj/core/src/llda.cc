#include "asc/llda.h"

#include <algorithm>
#include <cmath>

#include "asc/rng.h"
#include "asc/text.h"
#include "json_util.h"

namespace asc {
using nlohmann::json;

std::optional<int> LldaModel::TopicId(const std::string& aspect) const {
  auto it = std::find(topics_.begin(), topics_.end(), aspect);
  if (it == topics_.end()) return std::nullopt;
  return static_cast<int>(it - topics_.begin());
}

std::optional<int> LldaModel::WordId(const std::string& word) const {
  auto it = word_to_id_.find(word);
  if (it == word_to_id_.end()) return std::nullopt;
  return it->second;
}

double LldaModel::WordProbability(int topic, int word) const {
  const double v = static_cast<double>(id_to_word_.size());
  return (static_cast<double>(TopicWordCount(topic, word)) + eta_) /
         (static_cast<double>(TopicTotal(topic)) + v * eta_);
}

bool LldaModel::CheckInvariants(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why != nullptr) *why = std::move(msg);
    return false;
  };
  const std::size_t k = topics_.size();
  const std::size_t v = id_to_word_.size();
  std::vector<long> topic_word(k * v, 0);
  std::vector<long> topic_total(k, 0);
  std::vector<long> doc_topic(doc_words_.size() * k, 0);
  long tokens = 0;
  long assigned = 0;
  for (std::size_t d = 0; d < doc_words_.size(); ++d) {
    const auto& labels = doc_labels_[d];
    if (assignments_[d].size() != doc_words_[d].size()) {
      return fail("document " + std::to_string(d) + " has a mismatched assignment count");
    }
    for (std::size_t i = 0; i < doc_words_[d].size(); ++i) {
      const int z = assignments_[d][i];
      if (std::find(labels.begin(), labels.end(), z) == labels.end()) {
        return fail("document " + std::to_string(d) + " token " + std::to_string(i) +
                    " assigned to topic " + std::to_string(z) + " outside its labels");
      }
      ++topic_word[static_cast<std::size_t>(z) * v + doc_words_[d][i]];
      ++topic_total[z];
      ++doc_topic[d * k + z];
      ++assigned;
    }
    tokens += static_cast<long>(doc_words_[d].size());
  }
  if (assigned != tokens) return fail("assignment total differs from token total");
  if (topic_word != topic_word_) return fail("topic-word counts inconsistent");
  if (topic_total != topic_total_) return fail("topic totals inconsistent");
  if (doc_topic != doc_topic_) return fail("document-topic counts inconsistent");
  return true;
}

LldaModel FitLlda(const std::vector<LldaDocument>& documents,
                  const std::vector<std::string>& topics, const LldaConfig& config,
                  const SweepObserver& observer) {
  if (topics.empty()) throw ConfigError("L-LDA needs at least one topic");
  if (config.iterations < 0) throw ConfigError("L-LDA iterations must be non-negative");
  if (config.eta <= 0.0) throw ConfigError("L-LDA eta must be positive");
  const int k = static_cast<int>(topics.size());
  const double alpha = config.alpha.value_or(50.0 / k);
  if (alpha <= 0.0) throw ConfigError("L-LDA alpha must be positive");

  LldaModel m;
  m.topics_ = topics;
  m.alpha_ = alpha;
  m.eta_ = config.eta;

  std::vector<std::uint64_t> stream_keys;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const LldaDocument& doc = documents[d];
    const std::string name = doc.id.empty() ? "#" + std::to_string(d) : doc.id;
    if (doc.labels.empty()) throw ValidationError("L-LDA document " + name + " has no labels");
    if (doc.tokens.empty()) throw ValidationError("L-LDA document " + name + " has no tokens");
    std::vector<int> labels;
    for (const std::string& l : doc.labels) {
      auto id = m.TopicId(l);
      if (!id) throw ValidationError("L-LDA document " + name + " has unknown label '" + l + "'");
      if (std::find(labels.begin(), labels.end(), *id) == labels.end()) labels.push_back(*id);
    }
    std::sort(labels.begin(), labels.end());
    std::vector<int> words;
    words.reserve(doc.tokens.size());
    for (const std::string& t : doc.tokens) {
      auto [it, inserted] = m.word_to_id_.emplace(t, static_cast<int>(m.id_to_word_.size()));
      if (inserted) m.id_to_word_.push_back(t);
      words.push_back(it->second);
    }
    m.doc_words_.push_back(std::move(words));
    m.doc_labels_.push_back(std::move(labels));
    stream_keys.push_back(HashString(name));
  }

  const std::size_t v = m.id_to_word_.size();
  const std::size_t num_docs = m.doc_words_.size();
  m.topic_word_.assign(static_cast<std::size_t>(k) * v, 0);
  m.topic_total_.assign(k, 0);
  m.doc_topic_.assign(num_docs * k, 0);
  m.doc_freq_.assign(v, 0);
  m.assignments_.resize(num_docs);

  for (std::size_t d = 0; d < num_docs; ++d) {
    std::vector<int> seen = m.doc_words_[d];
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (int w : seen) ++m.doc_freq_[w];

    Rng rng(DeriveSeed(config.seed, stream_keys[d]));
    const auto& labels = m.doc_labels_[d];
    auto& z = m.assignments_[d];
    z.resize(m.doc_words_[d].size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = labels[UniformIndex(rng, labels.size())];
      ++m.topic_word_[static_cast<std::size_t>(z[i]) * v + m.doc_words_[d][i]];
      ++m.topic_total_[z[i]];
      ++m.doc_topic_[d * k + z[i]];
    }
  }
  if (observer) observer(0, m);

  const double v_eta = static_cast<double>(v) * m.eta_;
  std::vector<double> weights(k);
  for (int sweep = 1; sweep <= config.iterations; ++sweep) {
    for (std::size_t d = 0; d < num_docs; ++d) {
      Rng rng(DeriveSeed(config.seed, stream_keys[d] ^ MixSeed(static_cast<std::uint64_t>(sweep))));
      const auto& labels = m.doc_labels_[d];
      const auto& words = m.doc_words_[d];
      auto& z = m.assignments_[d];
      long* doc_row = &m.doc_topic_[d * k];
      for (std::size_t i = 0; i < words.size(); ++i) {
        const int w = words[i];
        const int old = z[i];
        --m.topic_word_[static_cast<std::size_t>(old) * v + w];
        --m.topic_total_[old];
        --doc_row[old];
        // A single-label document has nothing to sample.
        int topic = labels[0];
        if (labels.size() > 1) {
          double total = 0.0;
          for (std::size_t j = 0; j < labels.size(); ++j) {
            const int t = labels[j];
            const double p = (static_cast<double>(doc_row[t]) + alpha) *
                             (static_cast<double>(m.topic_word_[static_cast<std::size_t>(t) * v + w]) + m.eta_) /
                             (static_cast<double>(m.topic_total_[t]) + v_eta);
            total += p;
            weights[j] = total;
          }
          const double u = UniformDouble(rng) * total;
          std::size_t j = 0;
          while (j + 1 < labels.size() && u >= weights[j]) ++j;
          topic = labels[j];
        }
        z[i] = topic;
        ++m.topic_word_[static_cast<std::size_t>(topic) * v + w];
        ++m.topic_total_[topic];
        ++doc_row[topic];
      }
    }
    m.sweeps_ = sweep;
    if (observer) observer(sweep, m);
  }
  return m;
}

std::vector<LldaDocument> DocumentsFromDataset(const Dataset& dataset) {
  std::vector<LldaDocument> docs;
  for (const Review& review : dataset.reviews) {
    if (review.annotations.empty()) continue;
    LldaDocument doc;
    doc.id = review.id;
    for (std::string& t : LowercaseTokens(review)) {
      if (HasLetter(t)) doc.tokens.push_back(std::move(t));
    }
    if (doc.tokens.empty()) continue;
    for (const Annotation& a : review.annotations) {
      if (std::find(doc.labels.begin(), doc.labels.end(), a.category) == doc.labels.end()) {
        doc.labels.push_back(a.category);
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

SeedList TopSeeds(const LldaModel& model, const std::string& aspect, const SeedOptions& options,
                  Diagnostics* diag) {
  SeedList list;
  list.aspect = aspect;
  const auto topic = model.TopicId(aspect);
  if (!topic) throw ValidationError("aspect '" + aspect + "' is not a topic of the model");
  if (options.k <= 0) return list;

  std::vector<std::pair<std::string, double>> eligible;
  for (int w = 0; w < model.vocabulary_size(); ++w) {
    const std::string& word = model.Word(w);
    if (model.DocFrequency(w) < options.min_doc_freq) continue;
    if (options.stopwords != nullptr && options.stopwords->count(word) > 0) continue;
    eligible.emplace_back(word, model.WordProbability(*topic, w));
  }
  auto by_score = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t k = static_cast<std::size_t>(options.k);
  if (eligible.size() < k) {
    Warn(diag, "aspect " + aspect + ": only " + std::to_string(eligible.size()) +
                   " eligible seed words, fewer than k = " + std::to_string(k));
    std::sort(eligible.begin(), eligible.end(), by_score);
  } else {
    std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(k),
                      eligible.end(), by_score);
    eligible.resize(k);
  }
  list.seeds = std::move(eligible);
  return list;
}

void WriteSeeds(const std::filesystem::path& path, const SeedTable& seeds) {
  json j = json::object();
  for (const auto& [aspect, list] : seeds) {
    json arr = json::array();
    for (const auto& [token, score] : list.seeds) arr.push_back(json::array({token, score}));
    j[aspect] = std::move(arr);
  }
  auto out = internal::OpenForWrite(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

SeedTable ReadSeeds(const std::filesystem::path& path) {
  auto in = internal::OpenForRead(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed seed file " + path.string() + ": " + e.what(), e.byte);
  }
  SeedTable table;
  try {
    for (const auto& [aspect, arr] : j.items()) {
      SeedList list;
      list.aspect = aspect;
      for (const json& pair : arr) {
        list.seeds.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<double>());
      }
      table.emplace(aspect, std::move(list));
    }
  } catch (const json::exception& e) {
    throw ValidationError("seed file " + path.string() + ": " + e.what());
  }
  return table;
}

}  // namespace asc
