#include "asc/dataset_io.h"

#include <algorithm>
#include <ostream>

#include "json_util.h"

namespace asc {
using nlohmann::json;

namespace {

json ReviewToJson(const Review& r) {
  json tokens = json::array();
  for (const ParsedToken& t : r.tokens) {
    tokens.push_back({{"id", t.index},
                      {"form", t.form},
                      {"lemma", t.lemma},
                      {"upos", t.upos},
                      {"xpos", t.xpos},
                      {"head", t.head},
                      {"deprel", t.deprel}});
  }
  json annotations = json::array();
  for (const Annotation& a : r.annotations) {
    json j;
    if (a.target) j["target"] = *a.target;
    j["category"] = a.category;
    j["sentiment"] = SentimentName(a.sentiment);
    annotations.push_back(std::move(j));
  }
  return {{"id", r.id},
          {"text", r.text},
          {"tokens", std::move(tokens)},
          {"annotations", std::move(annotations)},
          {"split", r.split}};
}

Review ReviewFromJson(const json& j) {
  Review r;
  r.id = j.at("id").get<std::string>();
  r.text = j.at("text").get<std::string>();
  r.split = j.value("split", "");
  for (const json& t : j.value("tokens", json::array())) {
    ParsedToken tok;
    tok.index = t.at("id").get<int>();
    tok.form = t.at("form").get<std::string>();
    tok.lemma = t.value("lemma", "");
    tok.upos = t.value("upos", "");
    tok.xpos = t.value("xpos", "");
    tok.head = t.at("head").get<int>();
    tok.deprel = t.value("deprel", "");
    r.tokens.push_back(std::move(tok));
  }
  if (r.parsed()) ValidateTree(r.tokens, "review " + r.id);
  for (const json& a : j.value("annotations", json::array())) {
    Annotation ann;
    if (a.contains("target") && !a.at("target").is_null()) ann.target = a.at("target").get<std::string>();
    ann.category = a.at("category").get<std::string>();
    ann.sentiment = ParseSentiment(a.at("sentiment").get<std::string>());
    if (ann.sentiment == Sentiment::kNone) {
      throw ValidationError("review " + r.id + ": annotation with sentiment none");
    }
    r.annotations.push_back(std::move(ann));
  }
  return r;
}

}  // namespace

void WriteDatasetJsonl(std::ostream& out, const Dataset& dataset) {
  for (const Review& r : dataset.reviews) out << ReviewToJson(r).dump() << '\n';
}

void WriteDatasetJsonl(const std::filesystem::path& path, const Dataset& dataset) {
  auto out = internal::OpenForWrite(path);
  WriteDatasetJsonl(out, dataset);
  if (!out) throw IoError("failed writing " + path.string());
}

Dataset ReadDatasetJsonl(std::istream& in, std::optional<Task> task) {
  Dataset dataset;
  internal::ForEachJsonLine(in, "dataset", [&](const json& j) {
    dataset.reviews.push_back(ReviewFromJson(j));
  });
  if (task) {
    dataset.task = *task;
  } else {
    const bool tabsa = std::any_of(dataset.reviews.begin(), dataset.reviews.end(),
                                   [](const Review& r) { return !MentionedTargets(r).empty(); });
    dataset.task = tabsa ? Task::kTabsa : Task::kAbsa;
  }
  return dataset;
}

Dataset ReadDatasetJsonl(const std::filesystem::path& path, std::optional<Task> task) {
  auto in = internal::OpenForRead(path);
  return ReadDatasetJsonl(in, task);
}

void WriteUnitsJsonl(const std::filesystem::path& path,
                     const std::vector<ClassificationUnit>& units) {
  auto out = internal::OpenForWrite(path);
  for (const ClassificationUnit& u : units) {
    json j;
    j["review_id"] = u.review_id;
    if (u.target) j["target"] = *u.target;
    j["category"] = u.category;
    j["gold_label"] = SentimentName(u.gold);
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<ClassificationUnit> ReadUnitsJsonl(const std::filesystem::path& path) {
  auto in = internal::OpenForRead(path);
  std::vector<ClassificationUnit> units;
  internal::ForEachJsonLine(in, path.string(), [&](const json& j) {
    ClassificationUnit u;
    u.review_id = j.at("review_id").get<std::string>();
    if (j.contains("target") && !j.at("target").is_null()) u.target = j.at("target").get<std::string>();
    u.category = j.at("category").get<std::string>();
    u.gold = ParseSentiment(j.at("gold_label").get<std::string>());
    units.push_back(std::move(u));
  });
  return units;
}

}  // namespace asc
