#include "asc/auxgen.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "asc/syntax_rules.h"
#include "asc/text.h"
#include "json_util.h"

namespace asc {
using nlohmann::json;

AuxGenConfig AuxGenConfig::ForTask(Task task) {
  AuxGenConfig c;
  c.threshold = task == Task::kAbsa ? 0.3 : 0.4;
  return c;
}

void AuxGenConfig::Validate() const {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw ConfigError("similarity threshold must lie in [-1, 1]");
  }
  if (seeds_per_aspect < 0) throw ConfigError("seeds_per_aspect must be >= 0");
}

namespace {

bool IsContentPos(const std::string& upos) {
  return upos == "NOUN" || upos == "PROPN" || upos == "ADJ" || upos == "VERB";
}

SeedList Truncated(const SeedList& seeds, int max_seeds) {
  if (max_seeds <= 0 || seeds.seeds.size() <= static_cast<std::size_t>(max_seeds)) return seeds;
  SeedList out;
  out.aspect = seeds.aspect;
  out.seeds.assign(seeds.seeds.begin(), seeds.seeds.begin() + max_seeds);
  return out;
}

}  // namespace

std::vector<Candidate> SemanticCandidates(const Review& review, const SeedList& seeds,
                                          const EmbeddingMatrix& m, double threshold,
                                          int max_seeds) {
  const SeedList used = Truncated(seeds, max_seeds);
  std::vector<Candidate> out;
  if (used.empty()) return out;
  const std::vector<std::string> forms = LowercaseTokens(review);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (review.parsed() && !IsContentPos(review.tokens[i].upos)) continue;
    if (seen.count(forms[i]) > 0) continue;
    const auto sim = MaxSeedSimilarity(m, forms[i], used);
    if (sim && *sim >= threshold) {
      seen.insert(forms[i]);
      out.push_back({static_cast<int>(i) + 1, forms[i]});
    }
  }
  return out;
}

AuxiliarySentence Construct(const ClassificationUnit& unit, const Review& review,
                            const SeedList& seeds, const EmbeddingMatrix& m,
                            const AuxGenConfig& config) {
  if (config.include_modifiers && !review.parsed()) {
    throw ConfigError("review " + review.id + " has no parse but modifiers were requested");
  }
  AuxiliarySentence aux;
  aux.unit = unit.key();
  const std::vector<Candidate> candidates =
      SemanticCandidates(review, seeds, m, config.threshold, config.seeds_per_aspect);
  const std::string prefix = unit.target ? *unit.target + " " : std::string();
  if (candidates.empty()) {
    aux.fallback_used = true;
    aux.text = prefix + unit.category;
    return aux;
  }

  const std::vector<std::string> forms = LowercaseTokens(review);
  std::set<int> candidate_positions;
  for (const Candidate& c : candidates) candidate_positions.insert(c.position);
  std::set<int> modifier_positions;
  if (config.include_modifiers) {
    const DependencyGraph graph(review.tokens);
    for (const Candidate& c : candidates) {
      for (const ModifierHit& hit : ModifiersFor(graph, c.position)) {
        if (candidate_positions.count(hit.modifier) == 0) modifier_positions.insert(hit.modifier);
      }
    }
  }
  for (int p : candidate_positions) aux.candidates.push_back(forms[p - 1]);
  for (int p : modifier_positions) aux.modifiers.push_back(forms[p - 1]);

  std::set<int> selected = candidate_positions;
  selected.insert(modifier_positions.begin(), modifier_positions.end());
  aux.text = prefix;
  bool first = true;
  for (int p : selected) {
    if (!first) aux.text += ' ';
    aux.text += forms[p - 1];
    first = false;
  }
  return aux;
}

std::map<UnitKey, AuxiliarySentence> ConstructAll(const Dataset& dataset,
                                                  const std::vector<ClassificationUnit>& units,
                                                  const SeedTable& seeds,
                                                  const EmbeddingMatrix& m,
                                                  const AuxGenConfig& config) {
  config.Validate();
  std::unordered_map<std::string, const Review*> by_id;
  for (const Review& r : dataset.reviews) by_id.emplace(r.id, &r);
  const SeedList no_seeds;
  std::map<UnitKey, AuxiliarySentence> out;
  for (const ClassificationUnit& u : units) {
    auto it = by_id.find(u.review_id);
    if (it == by_id.end()) throw ValidationError("unit refers to unknown review " + u.review_id);
    auto s = seeds.find(u.category);
    out.emplace(u.key(), Construct(u, *it->second, s == seeds.end() ? no_seeds : s->second, m,
                                   config));
  }
  return out;
}

std::vector<PairRecord> BuildPairs(const Dataset& dataset,
                                   const std::vector<ClassificationUnit>& units,
                                   const std::map<UnitKey, AuxiliarySentence>& aux) {
  std::unordered_map<std::string, const Review*> by_id;
  for (const Review& r : dataset.reviews) by_id.emplace(r.id, &r);
  std::vector<PairRecord> pairs;
  pairs.reserve(units.size());
  for (const ClassificationUnit& u : units) {
    auto a = aux.find(u.key());
    if (a == aux.end()) {
      throw ValidationError("no auxiliary sentence for unit " + FormatKey(u.key()));
    }
    auto r = by_id.find(u.review_id);
    if (r == by_id.end()) throw ValidationError("unit refers to unknown review " + u.review_id);
    pairs.push_back({u.review_id, u.target, u.category, a->second.text, r->second->text, u.gold,
                     a->second.fallback_used});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const PairRecord& a, const PairRecord& b) { return a.key() < b.key(); });
  return pairs;
}

void WritePairs(const std::filesystem::path& path, const std::vector<PairRecord>& pairs) {
  auto out = internal::OpenForWrite(path);
  for (const PairRecord& p : pairs) {
    json j;
    j["review_id"] = p.review_id;
    if (p.target) j["target"] = *p.target;
    j["category"] = p.category;
    j["auxiliary_text"] = p.auxiliary_text;
    j["sentence_text"] = p.sentence_text;
    j["gold_label"] = SentimentName(p.gold_label);
    j["fallback_used"] = p.fallback_used;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::size_t EmitPairs(const Dataset& dataset, const std::vector<ClassificationUnit>& units,
                      const std::map<UnitKey, AuxiliarySentence>& aux,
                      const std::filesystem::path& path) {
  const std::vector<PairRecord> pairs = BuildPairs(dataset, units, aux);
  WritePairs(path, pairs);
  return pairs.size();
}

std::vector<PairRecord> ReadPairs(const std::filesystem::path& path) {
  auto in = internal::OpenForRead(path);
  std::vector<PairRecord> pairs;
  internal::ForEachJsonLine(in, path.string(), [&](const json& j) {
    PairRecord p;
    p.review_id = j.at("review_id").get<std::string>();
    if (j.contains("target") && !j.at("target").is_null()) p.target = j.at("target").get<std::string>();
    p.category = j.at("category").get<std::string>();
    p.auxiliary_text = j.at("auxiliary_text").get<std::string>();
    p.sentence_text = j.at("sentence_text").get<std::string>();
    p.gold_label = ParseSentiment(j.at("gold_label").get<std::string>());
    p.fallback_used = j.at("fallback_used").get<bool>();
    pairs.push_back(std::move(p));
  });
  return pairs;
}

}  // namespace asc
