// Opinion-modifier extraction for a candidate token over a dependency graph.
//
// Three rules, applied to a noun candidate:
//   kAmod          adjectival dependents of the candidate via amod;
//   kNsubjAdj      adjectival predicates whose nominal subject is the
//                  candidate ("The sushi is yummy");
//   kAdvmodOutlier adverbs attached by advmod to a verbal (participial)
//                  modifier found by the first two rules ("Genetically
//                  modified food"). Degree adverbs on plain adjectives
//                  ("very delicious") are not opinion words and are left out.

#ifndef ASC_SYNTAX_RULES_H_
#define ASC_SYNTAX_RULES_H_

#include <string_view>
#include <vector>

#include "asc/conllu.h"

namespace asc {

// Adjacency view over one sentence's parse. Indices are 1-based like the
// tokens; index 0 is the virtual root.
class DependencyGraph {
 public:
  // Throws ValidationError when the tokens do not form a tree.
  explicit DependencyGraph(std::vector<ParsedToken> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const ParsedToken& token(int index) const { return tokens_[index - 1]; }
  const std::vector<ParsedToken>& tokens() const { return tokens_; }
  // Dependents in sentence order.
  const std::vector<int>& children(int index) const { return children_[index]; }

 private:
  std::vector<ParsedToken> tokens_;
  std::vector<std::vector<int>> children_;
};

enum class ModifierRule { kAmod, kNsubjAdj, kAdvmodOutlier };

std::string_view ModifierRuleName(ModifierRule rule);

struct ModifierHit {
  int modifier = 0;  // token index
  ModifierRule rule = ModifierRule::kAmod;
  int anchor = 0;  // the candidate, or the modifier that licensed an outlier

  bool operator==(const ModifierHit&) const = default;
};

bool IsNoun(const ParsedToken& t);
bool IsAdjective(const ParsedToken& t);
bool IsAdverb(const ParsedToken& t);

// Hits in sentence order, one per token index (earlier rules win). Throws
// std::out_of_range for an invalid candidate index.
std::vector<ModifierHit> ModifiersFor(const DependencyGraph& graph, int candidate_index);

// The structural predicate each rule promises; used to audit hits.
bool HitSatisfiesRule(const DependencyGraph& graph, int candidate_index, const ModifierHit& hit);

}  // namespace asc

#endif  // ASC_SYNTAX_RULES_H_
