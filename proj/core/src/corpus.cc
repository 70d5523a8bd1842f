#include "asc/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/detail/rapidxml.hpp>

#include "asc/text.h"
#include "json.hpp"

namespace asc {
namespace rx = boost::property_tree::detail::rapidxml;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kNumSentiments> kSentimentNames = {
    "none", "negative", "neutral", "positive", "conflict"};

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool IsTargetToken(std::string_view tok) {
  if (tok.size() < 4 || tok.substr(0, 3) != "LOC") return false;
  return std::all_of(tok.begin() + 3, tok.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::string NodeValue(const rx::xml_node<char>* node) {
  return std::string(node->value(), node->value_size());
}

std::string AttributeValue(const rx::xml_node<char>* node, const char* name) {
  const rx::xml_attribute<char>* attr = node->first_attribute(name);
  return attr == nullptr ? std::string() : std::string(attr->value(), attr->value_size());
}

bool AddAnnotation(Review& review, Annotation a, Diagnostics* diag) {
  for (const Annotation& existing : review.annotations) {
    if (existing.target == a.target && existing.category == a.category) {
      Warn(diag, "review " + review.id + ": duplicate opinion for (" +
                     a.target.value_or("-") + ", " + a.category + "); keeping the first");
      return false;
    }
  }
  review.annotations.push_back(std::move(a));
  return true;
}

}  // namespace

std::string_view SentimentName(Sentiment s) { return kSentimentNames[static_cast<int>(s)]; }

Sentiment ParseSentiment(std::string_view name) {
  const std::string lower = ToLower(name);
  for (int i = 0; i < kNumSentiments; ++i) {
    if (kSentimentNames[i] == lower) return static_cast<Sentiment>(i);
  }
  throw ValidationError("unknown sentiment label '" + std::string(name) + "'");
}

std::string_view TaskName(Task t) { return t == Task::kAbsa ? "absa" : "tabsa"; }

Task ParseTask(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "absa") return Task::kAbsa;
  if (lower == "tabsa") return Task::kTabsa;
  throw ConfigError("unknown task '" + std::string(name) + "' (expected absa or tabsa)");
}

std::vector<Sentiment> TaskLabels(Task t) {
  if (t == Task::kTabsa) return {Sentiment::kNone, Sentiment::kNegative, Sentiment::kPositive};
  return {Sentiment::kNone, Sentiment::kNegative, Sentiment::kNeutral, Sentiment::kPositive,
          Sentiment::kConflict};
}

const std::vector<std::string>& SemEvalCategories() {
  static const std::vector<std::string> kCategories = {"food", "price", "service", "ambience",
                                                       "anecdotes"};
  return kCategories;
}

const std::vector<std::string>& SentiHoodCategories() {
  static const std::vector<std::string> kCategories = {"price", "transit-location", "safety",
                                                       "general"};
  return kCategories;
}

const std::vector<std::string>& TaskCategories(Task t) {
  return t == Task::kAbsa ? SemEvalCategories() : SentiHoodCategories();
}

std::vector<std::string> LowercaseTokens(const Review& review) {
  std::vector<std::string> out;
  if (review.parsed()) {
    out.reserve(review.tokens.size());
    for (const ParsedToken& t : review.tokens) out.push_back(ToLower(t.form));
    return out;
  }
  out = SimpleTokenize(review.text);
  for (std::string& s : out) s = ToLower(s);
  return out;
}

std::vector<std::string> MentionedTargets(const Review& review) {
  std::vector<std::string> targets;
  auto add = [&](const std::string& t) {
    if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
  };
  if (review.parsed()) {
    for (const ParsedToken& t : review.tokens) {
      if (IsTargetToken(t.form)) add(t.form);
    }
  } else {
    for (const std::string& t : SimpleTokenize(review.text)) {
      if (IsTargetToken(t)) add(t);
    }
  }
  for (const Annotation& a : review.annotations) {
    if (a.target) add(*a.target);
  }
  return targets;
}

Dataset Dataset::Filter(std::string_view split) const {
  Dataset out;
  out.task = task;
  for (const Review& r : reviews) {
    if (split.empty() || r.split == split) out.reviews.push_back(r);
  }
  return out;
}

Dataset LoadSemEvalString(std::string_view xml, const std::string& split, Diagnostics* diag) {
  std::vector<char> buffer(xml.begin(), xml.end());
  buffer.push_back('\0');
  rx::xml_document<char> doc;
  try {
    doc.parse<rx::parse_validate_closing_tags>(buffer.data());
  } catch (const rx::parse_error& e) {
    const std::size_t offset = static_cast<std::size_t>(e.where<char>() - buffer.data());
    throw ParseError("malformed SemEval XML at byte offset " + std::to_string(offset) + ": " +
                         e.what(),
                     offset);
  }
  const rx::xml_node<char>* root = doc.first_node("sentences");
  if (root == nullptr) throw ParseError("SemEval XML has no <sentences> root element", 0);

  Dataset dataset;
  dataset.task = Task::kAbsa;
  const auto& categories = SemEvalCategories();
  for (const rx::xml_node<char>* s = root->first_node("sentence"); s != nullptr;
       s = s->next_sibling("sentence")) {
    Review review;
    review.id = AttributeValue(s, "id");
    review.split = split;
    if (const auto* text = s->first_node("text")) review.text = NodeValue(text);
    if (const auto* cats = s->first_node("aspectCategories")) {
      for (const auto* c = cats->first_node("aspectCategory"); c != nullptr;
           c = c->next_sibling("aspectCategory")) {
        std::string category = AttributeValue(c, "category");
        if (category == "anecdotes/miscellaneous") category = "anecdotes";
        if (std::find(categories.begin(), categories.end(), category) == categories.end()) {
          throw ValidationError("review " + review.id + ": unknown category '" + category + "'");
        }
        const std::string polarity = AttributeValue(c, "polarity");
        Sentiment sentiment;
        try {
          sentiment = ParseSentiment(polarity);
        } catch (const ValidationError&) {
          throw ValidationError("review " + review.id + ": unknown polarity '" + polarity + "'");
        }
        if (sentiment == Sentiment::kNone) {
          throw ValidationError("review " + review.id + ": polarity 'none' is not an annotation");
        }
        AddAnnotation(review, {std::nullopt, std::move(category), sentiment}, diag);
      }
    }
    dataset.reviews.push_back(std::move(review));
  }
  return dataset;
}

Dataset LoadSemEval(const std::filesystem::path& path, const std::string& split,
                    Diagnostics* diag) {
  return LoadSemEvalString(ReadFile(path), split, diag);
}

Dataset LoadSentiHoodString(std::string_view text, const std::string& split, Diagnostics* diag) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed SentiHood JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw ParseError("SentiHood JSON must be an array of entries", 0);

  Dataset dataset;
  dataset.task = Task::kTabsa;
  const auto& categories = SentiHoodCategories();
  for (const json& entry : doc) {
    Review review;
    const json& id = entry.at("id");
    review.id = id.is_string() ? id.get<std::string>() : id.dump();
    review.text = std::string(Trim(entry.at("text").get<std::string>()));
    review.split = split;
    const std::vector<std::string> tokens = SimpleTokenize(review.text);
    for (const json& op : entry.value("opinions", json::array())) {
      const std::string aspect = op.at("aspect").get<std::string>();
      if (std::find(categories.begin(), categories.end(), aspect) == categories.end()) continue;
      const std::string target = op.at("target_entity").get<std::string>();
      const std::string polarity = op.at("sentiment").get<std::string>();
      Sentiment sentiment;
      try {
        sentiment = ParseSentiment(polarity);
      } catch (const ValidationError&) {
        throw ValidationError("review " + review.id + ": unknown polarity '" + polarity + "'");
      }
      if (sentiment != Sentiment::kNegative && sentiment != Sentiment::kPositive) {
        throw ValidationError("review " + review.id + ": polarity '" + polarity +
                              "' is not admitted for TABSA");
      }
      if (std::find(tokens.begin(), tokens.end(), target) == tokens.end()) {
        Warn(diag, "review " + review.id + ": target " + target + " does not occur in the text");
      }
      AddAnnotation(review, {target, aspect, sentiment}, diag);
    }
    dataset.reviews.push_back(std::move(review));
  }
  return dataset;
}

Dataset LoadSentiHood(const std::filesystem::path& path, const std::string& split,
                      Diagnostics* diag) {
  return LoadSentiHoodString(ReadFile(path), split, diag);
}

void AttachParses(Dataset& dataset, const std::vector<ConlluSentence>& parses) {
  std::map<std::string, std::size_t> review_index;
  for (std::size_t i = 0; i < dataset.reviews.size(); ++i) {
    review_index.emplace(dataset.reviews[i].id, i);
  }
  const bool by_id =
      !parses.empty() && std::all_of(parses.begin(), parses.end(), [&](const ConlluSentence& s) {
        return s.sent_id && review_index.count(*s.sent_id) > 0;
      });

  std::vector<const ConlluSentence*> assigned(dataset.reviews.size(), nullptr);
  if (by_id) {
    for (const ConlluSentence& s : parses) {
      const std::size_t i = review_index.at(*s.sent_id);
      if (assigned[i] != nullptr) {
        throw AlignmentError("CoNLL-U sentence id " + *s.sent_id + " appears more than once");
      }
      assigned[i] = &s;
    }
    for (std::size_t i = 0; i < assigned.size(); ++i) {
      if (assigned[i] == nullptr) {
        throw AlignmentError("no CoNLL-U sentence for review " + dataset.reviews[i].id);
      }
    }
  } else {
    const std::size_t n = std::min(parses.size(), dataset.reviews.size());
    for (std::size_t i = 0; i < n; ++i) assigned[i] = &parses[i];
    if (parses.size() != dataset.reviews.size()) {
      std::string first_unmatched =
          parses.size() < dataset.reviews.size()
              ? "review " + dataset.reviews[n].id
              : "CoNLL-U sentence " + parses[n].sent_id.value_or("#" + std::to_string(n + 1));
      throw AlignmentError("parse count " + std::to_string(parses.size()) +
                           " does not match review count " +
                           std::to_string(dataset.reviews.size()) + "; first unmatched: " +
                           first_unmatched);
    }
  }
  // Validate everything before mutating so a failure leaves the dataset intact.
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    ValidateTree(assigned[i]->tokens, "parse of review " + dataset.reviews[i].id);
  }
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    dataset.reviews[i].tokens = assigned[i]->tokens;
  }
}

std::string FormatKey(const UnitKey& key) {
  std::string out = key.review_id;
  if (key.target) out += "/" + *key.target;
  out += "/" + key.category;
  return out;
}

std::vector<ClassificationUnit> EnumerateUnits(const Dataset& dataset,
                                               const std::vector<std::string>& categories) {
  std::vector<ClassificationUnit> units;
  for (const Review& review : dataset.reviews) {
    auto gold_for = [&](const std::optional<std::string>& target, const std::string& category) {
      for (const Annotation& a : review.annotations) {
        if (a.target == target && a.category == category) return a.sentiment;
      }
      return Sentiment::kNone;
    };
    std::vector<std::optional<std::string>> targets;
    if (dataset.task == Task::kAbsa) {
      targets.push_back(std::nullopt);
    } else {
      for (std::string& t : MentionedTargets(review)) targets.emplace_back(std::move(t));
    }
    for (const auto& target : targets) {
      for (const std::string& category : categories) {
        units.push_back({review.id, target, category, gold_for(target, category)});
      }
    }
  }
  return units;
}

double ImplicitAspectRate(const Dataset& dataset) {
  std::size_t total = 0;
  std::size_t implicit = 0;
  for (const Review& review : dataset.reviews) {
    const std::string lower = ToLower(review.text);
    std::set<std::string> seen;
    for (const Annotation& a : review.annotations) {
      if (!seen.insert(a.category).second) continue;
      ++total;
      if (lower.find(a.category) == std::string::npos) ++implicit;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(implicit) / static_cast<double>(total);
}

double MultiAspectRate(const Dataset& dataset) {
  if (dataset.reviews.empty()) return 0.0;
  std::size_t multi = 0;
  for (const Review& review : dataset.reviews) {
    std::set<std::string> cats;
    for (const Annotation& a : review.annotations) cats.insert(a.category);
    if (cats.size() > 1) ++multi;
  }
  return static_cast<double>(multi) / static_cast<double>(dataset.reviews.size());
}

}  // namespace asc
