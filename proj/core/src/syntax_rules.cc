#include "asc/syntax_rules.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace asc {

DependencyGraph::DependencyGraph(std::vector<ParsedToken> tokens) : tokens_(std::move(tokens)) {
  ValidateTree(tokens_, "dependency graph");
  children_.resize(tokens_.size() + 1);
  for (const ParsedToken& t : tokens_) children_[t.head].push_back(t.index);
}

std::string_view ModifierRuleName(ModifierRule rule) {
  switch (rule) {
    case ModifierRule::kAmod:
      return "AMOD";
    case ModifierRule::kNsubjAdj:
      return "NSUBJ_ADJ";
    case ModifierRule::kAdvmodOutlier:
      return "ADVMOD_OUTLIER";
  }
  return "?";
}

bool IsNoun(const ParsedToken& t) { return t.upos == "NOUN" || t.upos == "PROPN"; }
bool IsAdjective(const ParsedToken& t) { return t.upos == "ADJ"; }
bool IsAdverb(const ParsedToken& t) { return t.upos == "ADV"; }

namespace {

// amod dependents are adjectives, or participles UD tags as VERB.
bool IsAdjectivalModifier(const ParsedToken& t) { return IsAdjective(t) || t.upos == "VERB"; }

}  // namespace

bool HitSatisfiesRule(const DependencyGraph& graph, int candidate_index, const ModifierHit& hit) {
  if (hit.modifier < 1 || hit.modifier > graph.size() || hit.anchor < 1 ||
      hit.anchor > graph.size()) {
    return false;
  }
  const ParsedToken& mod = graph.token(hit.modifier);
  const ParsedToken& anchor = graph.token(hit.anchor);
  switch (hit.rule) {
    case ModifierRule::kAmod:
      return hit.anchor == candidate_index && IsNoun(anchor) && mod.head == hit.anchor &&
             BaseRelation(mod.deprel) == "amod" && IsAdjectivalModifier(mod);
    case ModifierRule::kNsubjAdj:
      return hit.anchor == candidate_index && IsNoun(anchor) && anchor.head == hit.modifier &&
             BaseRelation(anchor.deprel) == "nsubj" && IsAdjective(mod);
    case ModifierRule::kAdvmodOutlier:
      return mod.head == hit.anchor && BaseRelation(mod.deprel) == "advmod" && IsAdverb(mod) &&
             !IsAdjective(anchor);
  }
  return false;
}

std::vector<ModifierHit> ModifiersFor(const DependencyGraph& graph, int candidate_index) {
  if (candidate_index < 1 || candidate_index > graph.size()) {
    throw std::out_of_range("candidate index " + std::to_string(candidate_index) +
                            " outside sentence of " + std::to_string(graph.size()) + " tokens");
  }
  const ParsedToken& candidate = graph.token(candidate_index);
  std::map<int, ModifierHit> hits;  // keyed by modifier index
  if (!IsNoun(candidate)) return {};

  std::vector<int> opinion_words;
  for (int child : graph.children(candidate_index)) {
    const ParsedToken& t = graph.token(child);
    if (BaseRelation(t.deprel) == "amod" && IsAdjectivalModifier(t)) {
      if (hits.emplace(child, ModifierHit{child, ModifierRule::kAmod, candidate_index}).second) {
        opinion_words.push_back(child);
      }
    }
  }
  if (candidate.head != 0 && BaseRelation(candidate.deprel) == "nsubj" &&
      IsAdjective(graph.token(candidate.head))) {
    const int head = candidate.head;
    if (hits.emplace(head, ModifierHit{head, ModifierRule::kNsubjAdj, candidate_index}).second) {
      opinion_words.push_back(head);
    }
  }
  for (int word : opinion_words) {
    if (IsAdjective(graph.token(word))) continue;
    for (int child : graph.children(word)) {
      const ParsedToken& t = graph.token(child);
      if (BaseRelation(t.deprel) == "advmod" && IsAdverb(t) && child != candidate_index) {
        hits.emplace(child, ModifierHit{child, ModifierRule::kAdvmodOutlier, word});
      }
    }
  }
  std::vector<ModifierHit> out;
  out.reserve(hits.size());
  for (const auto& [index, hit] : hits) out.push_back(hit);
  return out;
}

}  // namespace asc
