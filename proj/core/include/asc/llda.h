// Labeled LDA fitted by collapsed Gibbs sampling. There is one topic per
// aspect category and each document may only use the topics of its labels.

#ifndef ASC_LLDA_H_
#define ASC_LLDA_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "asc/corpus.h"
#include "asc/error.h"

namespace asc {

struct LldaDocument {
  // Keys the document's random stream, so results do not depend on where a
  // document sits in the corpus. Defaults to the document's position.
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
};

struct LldaConfig {
  std::optional<double> alpha;  // defaults to 50 / K
  double eta = 0.01;
  int iterations = 500;
  std::uint64_t seed = 1;
};

class LldaModel;

// Called after initialization (sweep 0) and after every sweep.
using SweepObserver = std::function<void(int sweep, const LldaModel&)>;

class LldaModel {
 public:
  const std::vector<std::string>& topics() const { return topics_; }
  int num_topics() const { return static_cast<int>(topics_.size()); }
  int vocabulary_size() const { return static_cast<int>(id_to_word_.size()); }
  int num_documents() const { return static_cast<int>(doc_words_.size()); }
  double alpha() const { return alpha_; }
  double eta() const { return eta_; }
  int sweeps() const { return sweeps_; }
  // True when fitted with zero iterations: assignments are the random
  // initialization only.
  bool initialization_only() const { return sweeps_ == 0; }

  std::optional<int> TopicId(const std::string& aspect) const;
  std::optional<int> WordId(const std::string& word) const;
  const std::string& Word(int id) const { return id_to_word_[id]; }

  long TopicWordCount(int topic, int word) const {
    return topic_word_[static_cast<std::size_t>(topic) * id_to_word_.size() + word];
  }
  long TopicTotal(int topic) const { return topic_total_[topic]; }
  long DocTopicCount(int doc, int topic) const {
    return doc_topic_[static_cast<std::size_t>(doc) * topics_.size() + topic];
  }
  const std::vector<int>& DocWords(int doc) const { return doc_words_[doc]; }
  const std::vector<int>& DocLabels(int doc) const { return doc_labels_[doc]; }
  const std::vector<int>& Assignments(int doc) const { return assignments_[doc]; }
  // Number of documents containing the word.
  int DocFrequency(int word) const { return doc_freq_[word]; }

  // (topic_word_count + eta) / (topic_total + V * eta).
  double WordProbability(int topic, int word) const;

  // Recomputes every count from the assignments and compares; also checks
  // that each assignment lies in its document's label set.
  bool CheckInvariants(std::string* why = nullptr) const;

 private:
  friend LldaModel FitLlda(const std::vector<LldaDocument>&, const std::vector<std::string>&,
                           const LldaConfig&, const SweepObserver&);

  std::vector<std::string> topics_;
  std::unordered_map<std::string, int> word_to_id_;
  std::vector<std::string> id_to_word_;
  std::vector<std::vector<int>> doc_words_;
  std::vector<std::vector<int>> doc_labels_;
  std::vector<std::vector<int>> assignments_;
  std::vector<long> topic_word_;  // K x V, row-major
  std::vector<long> topic_total_;
  std::vector<long> doc_topic_;   // D x K, row-major
  std::vector<int> doc_freq_;
  double alpha_ = 0.0;
  double eta_ = 0.0;
  int sweeps_ = 0;
};

// Throws ValidationError for a document with no labels, no tokens, or a
// label outside `topics`, and ConfigError for non-positive priors or
// negative iteration counts.
LldaModel FitLlda(const std::vector<LldaDocument>& documents,
                  const std::vector<std::string>& topics, const LldaConfig& config,
                  const SweepObserver& observer = nullptr);

// One document per annotated review (unannotated reviews carry no label
// restriction and are skipped). Tokens are lowercased and tokens without a
// letter are dropped.
std::vector<LldaDocument> DocumentsFromDataset(const Dataset& dataset);

struct SeedList {
  std::string aspect;
  std::vector<std::pair<std::string, double>> seeds;  // non-increasing score

  bool empty() const { return seeds.empty(); }
  bool operator==(const SeedList&) const = default;
};

struct SeedOptions {
  int k = 10;
  int min_doc_freq = 3;
  const std::set<std::string>* stopwords = nullptr;
};

// Ranks words by smoothed topic-word probability, skipping stopwords and
// words in fewer than `min_doc_freq` documents. Ties break by word. Fewer
// than k eligible words returns them all and warns.
SeedList TopSeeds(const LldaModel& model, const std::string& aspect, const SeedOptions& options,
                  Diagnostics* diag = nullptr);

using SeedTable = std::map<std::string, SeedList>;

// {aspect: [[token, score], ...]}
void WriteSeeds(const std::filesystem::path& path, const SeedTable& seeds);
SeedTable ReadSeeds(const std::filesystem::path& path);

}  // namespace asc

#endif  // ASC_LLDA_H_
