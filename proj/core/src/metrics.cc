#include "asc/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json_util.h"

namespace asc {
using nlohmann::json;

Sentiment ArgmaxLabel(const std::array<double, kNumSentiments>& scores,
                      std::span<const Sentiment> allowed) {
  Sentiment best = allowed.front();
  for (Sentiment s : allowed) {
    const double v = scores[static_cast<int>(s)];
    const double b = scores[static_cast<int>(best)];
    if (v > b || (v == b && s < best)) best = s;
  }
  return best;
}

Prediction MakePrediction(UnitKey key, const std::array<double, kNumSentiments>& scores) {
  double sum = 0.0;
  for (double p : scores) {
    if (!(p >= 0.0)) {
      throw ValidationError("prediction " + FormatKey(key) + " has a negative or NaN score");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError("prediction " + FormatKey(key) + " scores sum to " +
                          std::to_string(sum) + ", not 1");
  }
  static constexpr std::array<Sentiment, kNumSentiments> kAll = {
      Sentiment::kNone, Sentiment::kNegative, Sentiment::kNeutral, Sentiment::kPositive,
      Sentiment::kConflict};
  Prediction p;
  p.key = std::move(key);
  p.scores = scores;
  p.predicted = ArgmaxLabel(scores, kAll);
  return p;
}

void WritePredictions(const std::filesystem::path& path, const std::vector<Prediction>& preds) {
  auto out = internal::OpenForWrite(path);
  for (const Prediction& p : preds) {
    json j;
    j["review_id"] = p.key.review_id;
    if (p.key.target) j["target"] = *p.key.target;
    j["category"] = p.key.category;
    json scores = json::object();
    for (int i = 0; i < kNumSentiments; ++i) {
      if (p.scores[i] > 0.0) scores[std::string(SentimentName(static_cast<Sentiment>(i)))] = p.scores[i];
    }
    j["scores"] = std::move(scores);
    j["predicted"] = SentimentName(p.predicted);
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<Prediction> ReadPredictions(const std::filesystem::path& path) {
  auto in = internal::OpenForRead(path);
  std::vector<Prediction> preds;
  internal::ForEachJsonLine(in, path.string(), [&](const json& j) {
    UnitKey key;
    key.review_id = j.at("review_id").get<std::string>();
    if (j.contains("target") && !j.at("target").is_null()) key.target = j.at("target").get<std::string>();
    key.category = j.at("category").get<std::string>();
    std::array<double, kNumSentiments> scores{};
    for (const auto& [label, p] : j.at("scores").items()) {
      scores[static_cast<int>(ParseSentiment(label))] = p.get<double>();
    }
    Prediction pred = MakePrediction(std::move(key), scores);
    if (j.contains("predicted")) {
      const Sentiment declared = ParseSentiment(j.at("predicted").get<std::string>());
      if (declared != pred.predicted) {
        throw ValidationError("prediction " + FormatKey(pred.key) +
                              ": 'predicted' is not the argmax of its scores");
      }
    }
    preds.push_back(std::move(pred));
  });
  return preds;
}

namespace {

struct Aligned {
  const Prediction* pred;
  const ClassificationUnit* gold;
};

std::vector<Aligned> Align(const std::vector<Prediction>& preds,
                           const std::vector<ClassificationUnit>& golds) {
  std::map<UnitKey, const Prediction*> by_key;
  for (const Prediction& p : preds) {
    if (!by_key.emplace(p.key, &p).second) {
      throw ValidationError("duplicate prediction for " + FormatKey(p.key));
    }
  }
  std::vector<Aligned> out;
  out.reserve(golds.size());
  std::vector<std::string> missing;
  std::map<UnitKey, bool> gold_keys;
  for (const ClassificationUnit& g : golds) {
    auto it = by_key.find(g.key());
    if (it == by_key.end()) {
      missing.push_back(FormatKey(g.key()));
    } else {
      out.push_back({it->second, &g});
    }
    if (!gold_keys.emplace(g.key(), true).second) {
      throw ValidationError("duplicate gold unit " + FormatKey(g.key()));
    }
  }
  std::vector<std::string> extra;
  for (const auto& [key, p] : by_key) {
    if (gold_keys.count(key) == 0) extra.push_back(FormatKey(key));
  }
  if (!missing.empty() || !extra.empty()) {
    auto list = [](const std::vector<std::string>& keys) {
      std::string s;
      for (std::size_t i = 0; i < keys.size() && i < 10; ++i) s += (i ? ", " : "") + keys[i];
      if (keys.size() > 10) s += ", ... (" + std::to_string(keys.size()) + " total)";
      return s;
    };
    std::string msg = "predictions and golds are keyed differently";
    if (!missing.empty()) msg += "; missing predictions: " + list(missing);
    if (!extra.empty()) msg += "; predictions without gold: " + list(extra);
    throw ValidationError(msg);
  }
  return out;
}

double Ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double HarmonicMean(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

// (review_id, target) -> aligned units
std::map<std::pair<std::string, std::string>, std::vector<Aligned>> GroupByTarget(
    const std::vector<Aligned>& aligned) {
  std::map<std::pair<std::string, std::string>, std::vector<Aligned>> groups;
  for (const Aligned& a : aligned) {
    groups[{a.gold->review_id, a.gold->target.value_or("")}].push_back(a);
  }
  return groups;
}

}  // namespace

PrfScores SemEvalCategorizationPrf(const std::vector<Prediction>& preds,
                                   const std::vector<ClassificationUnit>& golds) {
  double tp = 0, fp = 0, fn = 0;
  for (const Aligned& a : Align(preds, golds)) {
    const bool predicted = a.pred->predicted != Sentiment::kNone;
    const bool actual = a.gold->gold != Sentiment::kNone;
    if (predicted && actual) ++tp;
    if (predicted && !actual) ++fp;
    if (!predicted && actual) ++fn;
  }
  PrfScores s;
  s.precision = Ratio(tp, tp + fp);
  s.recall = Ratio(tp, tp + fn);
  s.f1 = HarmonicMean(s.precision, s.recall);
  return s;
}

double SemEvalSentimentAccuracy(const std::vector<Prediction>& preds,
                                const std::vector<ClassificationUnit>& golds,
                                SentimentClasses classes) {
  std::vector<Sentiment> allowed = {Sentiment::kNegative, Sentiment::kPositive};
  if (classes != SentimentClasses::kBinary) allowed.push_back(Sentiment::kNeutral);
  if (classes == SentimentClasses::kFour) allowed.push_back(Sentiment::kConflict);
  std::sort(allowed.begin(), allowed.end());
  long total = 0, correct = 0;
  for (const Aligned& a : Align(preds, golds)) {
    if (std::find(allowed.begin(), allowed.end(), a.gold->gold) == allowed.end()) continue;
    ++total;
    if (ArgmaxLabel(a.pred->scores, allowed) == a.gold->gold) ++correct;
  }
  if (total == 0) throw UndefinedMetricError("no gold units in the sentiment class set");
  return static_cast<double>(correct) / static_cast<double>(total);
}

double SentiHoodStrictAccuracy(const std::vector<Prediction>& preds,
                               const std::vector<ClassificationUnit>& golds,
                               bool detection_only) {
  const std::size_t per_group = SentiHoodCategories().size();
  const auto groups = GroupByTarget(Align(preds, golds));
  if (groups.empty()) throw UndefinedMetricError("no (review, target) groups to score");
  long correct = 0;
  for (const auto& [key, units] : groups) {
    if (units.size() != per_group) {
      throw ValidationError("group " + key.first + "/" + key.second + " has " +
                            std::to_string(units.size()) + " category units, expected " +
                            std::to_string(per_group));
    }
    const bool all = std::all_of(units.begin(), units.end(), [&](const Aligned& a) {
      if (detection_only) {
        return (a.pred->predicted != Sentiment::kNone) == (a.gold->gold != Sentiment::kNone);
      }
      return a.pred->predicted == a.gold->gold;
    });
    if (all) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(groups.size());
}

double SentiHoodMacroF1(const std::vector<Prediction>& preds,
                        const std::vector<ClassificationUnit>& golds, Diagnostics* diag) {
  const auto groups = GroupByTarget(Align(preds, golds));
  if (groups.empty()) throw UndefinedMetricError("no (review, target) groups to score");
  double p_sum = 0.0, r_sum = 0.0;
  for (const auto& [key, units] : groups) {
    long predicted = 0, actual = 0, both = 0;
    for (const Aligned& a : units) {
      const bool p = a.pred->predicted != Sentiment::kNone;
      const bool g = a.gold->gold != Sentiment::kNone;
      predicted += p;
      actual += g;
      both += p && g;
    }
    if (actual == 0) {
      Warn(diag, "target " + key.first + "/" + key.second +
                     " has no gold aspects; recall counted as 1");
      r_sum += 1.0;
      p_sum += predicted == 0 ? 1.0 : 0.0;
    } else {
      r_sum += static_cast<double>(both) / static_cast<double>(actual);
      p_sum += predicted == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(predicted);
    }
  }
  const double n = static_cast<double>(groups.size());
  return HarmonicMean(p_sum / n, r_sum / n);
}

double RocAuc(std::span<const double> scores, std::span<const char> positive) {
  if (scores.size() != positive.size()) throw ValidationError("AUC inputs differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Average 1-based ranks over tied runs.
  double pos_rank_sum = 0.0;
  long pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (positive[order[k]]) {
        pos_rank_sum += avg_rank;
        ++pos;
      }
    }
    i = j + 1;
  }
  const long neg = static_cast<long>(n) - pos;
  if (pos == 0 || neg == 0) throw UndefinedMetricError("AUC needs both positive and negative units");
  const double u = pos_rank_sum - static_cast<double>(pos) * static_cast<double>(pos + 1) / 2.0;
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

double Auc(const std::vector<Prediction>& preds, const std::vector<ClassificationUnit>& golds,
           AucMode mode) {
  std::vector<double> scores;
  std::vector<char> labels;
  for (const Aligned& a : Align(preds, golds)) {
    if (mode == AucMode::kAspectDetection) {
      scores.push_back(1.0 - a.pred->score(Sentiment::kNone));
      labels.push_back(a.gold->gold != Sentiment::kNone);
    } else {
      if (a.gold->gold == Sentiment::kNone) continue;
      scores.push_back(a.pred->score(Sentiment::kPositive));
      labels.push_back(a.gold->gold == Sentiment::kPositive);
    }
  }
  return RocAuc(scores, labels);
}

}  // namespace asc
