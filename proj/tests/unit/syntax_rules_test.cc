#include "asc/syntax_rules.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <set>

#include "asc/conllu.h"
#include "asc/rng.h"
#include "synthetic.h"

namespace asc {
namespace {

using ::testing::ElementsAre;

const std::vector<ConlluSentence>& Golden() {
  static const auto* s = new std::vector<ConlluSentence>(
      ReadConllu(std::string(ASC_TEST_DATA_DIR) + "/fixtures/rules.conllu"));
  return *s;
}

DependencyGraph GoldenGraph(const std::string& id) {
  for (const ConlluSentence& s : Golden()) {
    if (s.sent_id == id) return DependencyGraph(s.tokens);
  }
  throw std::runtime_error("no fixture " + id);
}

TEST(SyntaxRulesTest, AmodOnPlainAdjectiveSkipsDegreeAdverb) {
  const DependencyGraph g = GoldenGraph("very_delicious_sushi");
  EXPECT_THAT(ModifiersFor(g, 3), ElementsAre(ModifierHit{2, ModifierRule::kAmod, 3}));
}

TEST(SyntaxRulesTest, CopularAdjectiveWithNominalSubject) {
  const DependencyGraph g = GoldenGraph("sushi_is_yummy");
  EXPECT_THAT(ModifiersFor(g, 2), ElementsAre(ModifierHit{4, ModifierRule::kNsubjAdj, 2}));
}

TEST(SyntaxRulesTest, AdverbOnParticipleIsOutlierModifier) {
  const DependencyGraph g = GoldenGraph("genetically_modified_food");
  EXPECT_THAT(ModifiersFor(g, 3), ElementsAre(ModifierHit{1, ModifierRule::kAdvmodOutlier, 2},
                                              ModifierHit{2, ModifierRule::kAmod, 3}));
}

TEST(SyntaxRulesTest, ObjectWithoutAdjectivesHasNoModifiers) {
  EXPECT_TRUE(ModifiersFor(GoldenGraph("i_ate_sushi"), 3).empty());
}

TEST(SyntaxRulesTest, NonNounCandidateHasNoModifiers) {
  EXPECT_TRUE(ModifiersFor(GoldenGraph("sushi_is_yummy"), 4).empty());
}

TEST(SyntaxRulesTest, InvalidCandidateIndexThrows) {
  const DependencyGraph g = GoldenGraph("i_ate_sushi");
  EXPECT_THROW(ModifiersFor(g, 0), std::out_of_range);
  EXPECT_THROW(ModifiersFor(g, 4), std::out_of_range);
}

TEST(SyntaxRulesTest, SubtypedRelationsCount) {
  std::vector<ParsedToken> t = {{1, "food", "food", "NOUN", "NN", 3, "nsubj:outer"},
                                {2, "is", "be", "AUX", "VBZ", 3, "cop"},
                                {3, "good", "good", "ADJ", "JJ", 0, "root"}};
  EXPECT_THAT(ModifiersFor(DependencyGraph(t), 1),
              ElementsAre(ModifierHit{3, ModifierRule::kNsubjAdj, 1}));
}

TEST(SyntaxRulesTest, RuleNames) {
  EXPECT_EQ(ModifierRuleName(ModifierRule::kAmod), "AMOD");
  EXPECT_EQ(ModifierRuleName(ModifierRule::kNsubjAdj), "NSUBJ_ADJ");
  EXPECT_EQ(ModifierRuleName(ModifierRule::kAdvmodOutlier), "ADVMOD_OUTLIER");
}

// Random trees over a small tag/relation alphabet, built so every token's
// head precedes or follows it arbitrarily but the result stays a tree.
std::vector<ParsedToken> RandomTree(Rng& rng, int n) {
  static const std::vector<std::string> kUpos = {"NOUN", "PROPN", "ADJ", "VERB", "ADV", "DET"};
  static const std::vector<std::string> kRel = {"amod", "nsubj", "advmod", "obj", "det", "conj"};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[UniformIndex(rng, i + 1)]);
  std::vector<ParsedToken> t(n);
  for (int k = 0; k < n; ++k) {
    ParsedToken& tok = t[order[k] - 1];
    tok.index = order[k];
    tok.form = "w" + std::to_string(order[k]);
    tok.upos = kUpos[UniformIndex(rng, kUpos.size())];
    tok.head = k == 0 ? 0 : order[UniformIndex(rng, k)];
    tok.deprel = k == 0 ? "root" : kRel[UniformIndex(rng, kRel.size())];
  }
  return t;
}

// Independent statement of the three rules as set comprehensions.
std::set<int> OracleModifiers(const std::vector<ParsedToken>& t, int c) {
  auto tok = [&](int i) -> const ParsedToken& { return t[i - 1]; };
  std::set<int> out;
  if (tok(c).upos != "NOUN" && tok(c).upos != "PROPN") return out;
  std::set<int> opinion;
  for (const ParsedToken& x : t) {
    if (x.head == c && x.deprel == "amod" && (x.upos == "ADJ" || x.upos == "VERB")) {
      opinion.insert(x.index);
    }
  }
  if (tok(c).head != 0 && tok(c).deprel == "nsubj" && tok(tok(c).head).upos == "ADJ") {
    opinion.insert(tok(c).head);
  }
  out = opinion;
  for (const ParsedToken& x : t) {
    if (x.index != c && x.deprel == "advmod" && x.upos == "ADV" && opinion.count(x.head) &&
        tok(x.head).upos != "ADJ") {
      out.insert(x.index);
    }
  }
  return out;
}

TEST(SyntaxRulesPropertyTest, RandomTreesMatchOracleAndAreSoundAndOrdered) {
  Rng rng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<ParsedToken> tokens = RandomTree(rng, 2 + static_cast<int>(UniformIndex(rng, 9)));
    const DependencyGraph g(tokens);
    for (int c = 1; c <= g.size(); ++c) {
      const std::vector<ModifierHit> hits = ModifiersFor(g, c);
      std::set<int> got;
      int previous = 0;
      for (const ModifierHit& h : hits) {
        EXPECT_TRUE(HitSatisfiesRule(g, c, h));
        EXPECT_GT(h.modifier, previous);
        previous = h.modifier;
        got.insert(h.modifier);
        if (h.rule == ModifierRule::kAdvmodOutlier) {
          // Anchored on a first-round modifier, not deeper.
          bool anchor_found = false;
          for (const ModifierHit& a : hits) {
            anchor_found |= a.modifier == h.anchor && a.rule != ModifierRule::kAdvmodOutlier;
          }
          EXPECT_TRUE(anchor_found);
        }
      }
      EXPECT_EQ(got, OracleModifiers(tokens, c));
      nonempty += !hits.empty();
    }
  }
  EXPECT_GT(nonempty, 100);
}

TEST(SyntaxRulesPropertyTest, TemplatedCorpusHitsAreSound) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 200;
  const Dataset d = synthetic::MakeTemplatedAbsa(17, options);
  for (const Review& r : d.reviews) {
    const DependencyGraph g(r.tokens);
    for (int c = 1; c <= g.size(); ++c) {
      for (const ModifierHit& h : ModifiersFor(g, c)) EXPECT_TRUE(HitSatisfiesRule(g, c, h));
    }
  }
}

}  // namespace
}  // namespace asc
