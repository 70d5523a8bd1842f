// Evaluation metrics for both tasks.
//
// ABSA (SemEval-2014 Task 4): micro P/R/F1 of aspect detection and sentiment
// accuracy under binary, 3-class and 4-class regimes.
// TABSA (SentiHood): strict accuracy, macro-F1 and AUC of aspect detection;
// sentiment accuracy and AUC.

#ifndef ASC_METRICS_H_
#define ASC_METRICS_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asc/corpus.h"
#include "asc/error.h"

namespace asc {

struct Prediction {
  UnitKey key;
  // Probability per label in label order; labels outside the task's set are 0.
  std::array<double, kNumSentiments> scores{};
  Sentiment predicted = Sentiment::kNone;

  double score(Sentiment s) const { return scores[static_cast<int>(s)]; }
  bool operator==(const Prediction&) const = default;
};

// Argmax over `allowed`, ties to the earlier label.
Sentiment ArgmaxLabel(const std::array<double, kNumSentiments>& scores,
                      std::span<const Sentiment> allowed);

// Builds a prediction with predicted = argmax. Throws ValidationError when
// the scores do not sum to 1 within 1e-6 or are negative.
Prediction MakePrediction(UnitKey key, const std::array<double, kNumSentiments>& scores);

// Prediction JSON-lines: {"review_id", "target"?, "category",
// "scores": {label: p}, "predicted"}.
void WritePredictions(const std::filesystem::path& path, const std::vector<Prediction>& preds);
std::vector<Prediction> ReadPredictions(const std::filesystem::path& path);

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// All metric functions throw ValidationError when predictions and golds are
// not keyed identically.
PrfScores SemEvalCategorizationPrf(const std::vector<Prediction>& preds,
                                   const std::vector<ClassificationUnit>& golds);

enum class SentimentClasses { kBinary, kThree, kFour };

// Throws UndefinedMetricError when no gold unit falls in the class set.
double SemEvalSentimentAccuracy(const std::vector<Prediction>& preds,
                                const std::vector<ClassificationUnit>& golds,
                                SentimentClasses classes);

// A (review, target) group counts when every category decision matches:
// detection and, unless `detection_only`, polarity. Throws ValidationError
// for a group that does not have exactly one unit per SentiHood category.
double SentiHoodStrictAccuracy(const std::vector<Prediction>& preds,
                               const std::vector<ClassificationUnit>& golds,
                               bool detection_only = false);

// Per (review, target) detection precision and recall, macro-averaged, then
// combined by harmonic mean. A target with no gold aspects has recall 1 (and
// precision 1 when nothing was predicted for it, 0 otherwise); each such
// target is reported in `diag`.
double SentiHoodMacroF1(const std::vector<Prediction>& preds,
                        const std::vector<ClassificationUnit>& golds,
                        Diagnostics* diag = nullptr);

enum class AucMode { kAspectDetection, kSentiment };

// Aspect detection: score 1 - P(none), positive when gold != none.
// Sentiment: gold != none units only, score P(positive), positive when gold
// is positive. Throws UndefinedMetricError when only one class is present.
double Auc(const std::vector<Prediction>& preds, const std::vector<ClassificationUnit>& golds,
           AucMode mode);

// Mann-Whitney area under the ROC curve with tied scores counted half.
double RocAuc(std::span<const double> scores, std::span<const char> positive);

struct MetricsReport {
  Task task = Task::kAbsa;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> notes;

  // Throws std::out_of_range for an absent metric.
  double Get(const std::string& name) const;
  bool Has(const std::string& name) const;
};

struct ReportOptions {
  bool strict_detection_only = false;
};

// ABSA: precision, recall, f1, acc_binary, acc_3class, acc_4class.
// TABSA: strict_acc, macro_f1, aspect_auc, sentiment_acc, sentiment_auc.
// An undefined metric is omitted and explained in `notes`.
MetricsReport ComputeReport(Task task, const std::vector<Prediction>& preds,
                            const std::vector<ClassificationUnit>& golds,
                            const ReportOptions& options = {});

std::string ReportJson(const MetricsReport& report);
// Column layout follows the usual results tables for each task.
std::string ReportTable(const MetricsReport& report);
void WriteReport(const std::filesystem::path& json_path, const std::filesystem::path& text_path,
                 const MetricsReport& report);

}  // namespace asc

#endif  // ASC_METRICS_H_
