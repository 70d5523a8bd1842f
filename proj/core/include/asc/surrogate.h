// Desk-scale stand-in for the fine-tuned sentence-pair classifier:
// multinomial logistic regression over a bag of words of the auxiliary
// sentence and the review, kept in two feature namespaces ("a:" and "s:").

#ifndef ASC_SURROGATE_H_
#define ASC_SURROGATE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "asc/auxgen.h"
#include "asc/metrics.h"

namespace asc {

struct SurrogateConfig {
  int epochs = 30;
  int batch_size = 16;
  double learning_rate = 0.2;
  double l2 = 1e-4;  // applied to the weights of features seen in a batch
  std::uint64_t seed = 1;  // shuffles the batches
  // When false the auxiliary text is replaced by the bare aspect name
  // (prefixed by the target for TABSA); used to ablate the auxiliary signal.
  bool use_auxiliary = true;

  // Throws ConfigError.
  void Validate() const;
};

class SurrogateModel {
 public:
  Task task() const { return task_; }
  const std::vector<Sentiment>& labels() const { return labels_; }
  int num_features() const { return static_cast<int>(feature_names_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }
  bool use_auxiliary() const { return use_auxiliary_; }

  Prediction Predict(const PairRecord& pair) const;

  void Save(const std::filesystem::path& path) const;
  static SurrogateModel Load(const std::filesystem::path& path);

 private:
  friend SurrogateModel TrainSurrogate(const std::vector<PairRecord>&, Task,
                                       const SurrogateConfig&, Diagnostics*);
  std::vector<int> Features(const PairRecord& pair) const;
  std::vector<double> Logits(const std::vector<int>& features) const;

  Task task_ = Task::kAbsa;
  std::vector<Sentiment> labels_;
  std::vector<char> frozen_;  // label absent from training data
  std::unordered_map<std::string, int> feature_ids_;
  std::vector<std::string> feature_names_;
  std::vector<double> weights_;  // features x labels, row-major
  std::vector<double> bias_;
  bool use_auxiliary_ = true;
};

// Feature strings of a pair (deduplicated, sorted).
std::vector<std::string> PairFeatures(const PairRecord& pair, bool use_auxiliary);

// Throws ValidationError on an empty training set or a gold label outside
// the task's label set. Labels missing from the data get prior-only scores
// and a warning.
SurrogateModel TrainSurrogate(const std::vector<PairRecord>& pairs, Task task,
                              const SurrogateConfig& config, Diagnostics* diag = nullptr);

// Predictions in input order.
std::vector<Prediction> PredictSurrogate(const SurrogateModel& model,
                                         const std::vector<PairRecord>& pairs);

}  // namespace asc

#endif  // ASC_SURROGATE_H_
