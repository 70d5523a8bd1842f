#include <cstdio>
#include <stdexcept>

#include "asc/metrics.h"
#include "json_util.h"

namespace asc {
using nlohmann::json;

double MetricsReport::Get(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw std::out_of_range("metric '" + name + "' not in report");
}

bool MetricsReport::Has(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return true;
  }
  return false;
}

MetricsReport ComputeReport(Task task, const std::vector<Prediction>& preds,
                            const std::vector<ClassificationUnit>& golds,
                            const ReportOptions& options) {
  MetricsReport r;
  r.task = task;
  auto attempt = [&](const std::string& name, auto&& fn) {
    try {
      r.values.emplace_back(name, fn());
    } catch (const UndefinedMetricError& e) {
      r.notes.push_back(name + " undefined: " + e.what());
    }
  };
  if (task == Task::kAbsa) {
    const PrfScores prf = SemEvalCategorizationPrf(preds, golds);
    r.values.emplace_back("precision", prf.precision);
    r.values.emplace_back("recall", prf.recall);
    r.values.emplace_back("f1", prf.f1);
    attempt("acc_binary", [&] {
      return SemEvalSentimentAccuracy(preds, golds, SentimentClasses::kBinary);
    });
    attempt("acc_3class", [&] {
      return SemEvalSentimentAccuracy(preds, golds, SentimentClasses::kThree);
    });
    attempt("acc_4class", [&] {
      return SemEvalSentimentAccuracy(preds, golds, SentimentClasses::kFour);
    });
  } else {
    attempt("strict_acc", [&] {
      return SentiHoodStrictAccuracy(preds, golds, options.strict_detection_only);
    });
    attempt("macro_f1", [&] { return SentiHoodMacroF1(preds, golds, &r.notes); });
    attempt("aspect_auc", [&] { return Auc(preds, golds, AucMode::kAspectDetection); });
    attempt("sentiment_acc", [&] {
      return SemEvalSentimentAccuracy(preds, golds, SentimentClasses::kBinary);
    });
    attempt("sentiment_auc", [&] { return Auc(preds, golds, AucMode::kSentiment); });
  }
  return r;
}

std::string ReportJson(const MetricsReport& report) {
  json values = json::object();
  for (const auto& [k, v] : report.values) values[k] = v;
  json j = {{"task", TaskName(report.task)},
            {"metrics", std::move(values)},
            {"notes", report.notes}};
  return j.dump(2) + "\n";
}

std::string ReportTable(const MetricsReport& report) {
  auto cell = [&](const std::string& name) {
    if (!report.Has(name)) return std::string("      -");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%7.2f", 100.0 * report.Get(name));
    return std::string(buf);
  };
  std::string out;
  if (report.task == Task::kAbsa) {
    out += "Task: ABSA\n";
    out += "          Aspect Categorization   |      Aspect Sentiment\n";
    out += "Precision  Recall      F1         |  Binary  3-Class  4-Class\n";
    out += cell("precision") + "  " + cell("recall") + " " + cell("f1") + "         | " +
           cell("acc_binary") + "  " + cell("acc_3class") + "  " + cell("acc_4class") + "\n";
  } else {
    out += "Task: TABSA\n";
    out += "          Aspect Categorization        |  Aspect Sentiment\n";
    out += "Strict Acc  Macro-F1     AUC           | Accuracy     AUC\n";
    out += "   " + cell("strict_acc") + "   " + cell("macro_f1") + " " + cell("aspect_auc") +
           "           |  " + cell("sentiment_acc") + " " + cell("sentiment_auc") + "\n";
  }
  for (const std::string& note : report.notes) out += "note: " + note + "\n";
  return out;
}

void WriteReport(const std::filesystem::path& json_path, const std::filesystem::path& text_path,
                 const MetricsReport& report) {
  {
    auto out = internal::OpenForWrite(json_path);
    out << ReportJson(report);
    if (!out) throw IoError("failed writing " + json_path.string());
  }
  auto out = internal::OpenForWrite(text_path);
  out << ReportTable(report);
  if (!out) throw IoError("failed writing " + text_path.string());
}

}  // namespace asc
