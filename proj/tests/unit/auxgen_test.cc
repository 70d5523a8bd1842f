#include "asc/auxgen.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "asc/pipeline.h"
#include "asc/stopwords.h"
#include "asc/syntax_rules.h"
#include "fixtures.h"
#include "synthetic.h"

namespace asc {
namespace {

using ::testing::ElementsAre;

ClassificationUnit UnitFor(const Review& r, const std::string& category,
                           std::optional<std::string> target = std::nullopt) {
  return {r.id, std::move(target), category, Sentiment::kNone};
}

class RunningExampleTest : public ::testing::Test {
 protected:
  const Dataset data_ = synthetic::RunningExample();
  const EmbeddingMatrix vectors_ = synthetic::RunningExampleVectors();
  const SeedTable seeds_ = synthetic::RunningExampleSeeds();
  const AuxGenConfig config_ = AuxGenConfig::ForTask(Task::kAbsa);
};

TEST_F(RunningExampleTest, FixtureEmbeddingPutsCoffeeNearMenu) {
  ASSERT_GE(*vectors_.Similarity("coffee", "menu"), 0.3);
}

TEST_F(RunningExampleTest, CoffeeIsTheFoodCandidate) {
  const std::vector<Candidate> c =
      SemanticCandidates(data_.reviews[0], seeds_.at("food"), vectors_, 0.3);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].form, "coffee");
  EXPECT_EQ(c[0].position, 6);
}

TEST_F(RunningExampleTest, FoodAuxiliarySentence) {
  const Review& s1 = data_.reviews[0];
  const AuxiliarySentence a = Construct(UnitFor(s1, "food"), s1, seeds_.at("food"), vectors_, config_);
  EXPECT_THAT(a.candidates, ElementsAre("coffee"));
  EXPECT_THAT(a.modifiers, ElementsAre("outstanding"));
  EXPECT_EQ(a.text, "coffee outstanding");
  EXPECT_FALSE(a.fallback_used);
}

TEST_F(RunningExampleTest, PriceFallsBack) {
  const Review& s1 = data_.reviews[0];
  const AuxiliarySentence a = Construct(UnitFor(s1, "price"), s1, seeds_.at("price"), vectors_, config_);
  EXPECT_TRUE(a.candidates.empty());
  EXPECT_EQ(a.text, "price");
  EXPECT_TRUE(a.fallback_used);
}

TEST_F(RunningExampleTest, WaitersFriendly) {
  const Review& s2 = data_.reviews[1];
  const AuxiliarySentence a =
      Construct(UnitFor(s2, "service"), s2, seeds_.at("service"), vectors_, config_);
  EXPECT_EQ(a.text, "waiters friendly");
}

TEST_F(RunningExampleTest, TargetPrefixesTabsaText) {
  const Review& s1 = data_.reviews[0];
  EXPECT_EQ(Construct(UnitFor(s1, "food", "LOC1"), s1, seeds_.at("food"), vectors_, config_).text,
            "LOC1 coffee outstanding");
  const AuxiliarySentence fallback =
      Construct(UnitFor(s1, "price", "LOC1"), s1, seeds_.at("price"), vectors_, config_);
  EXPECT_EQ(fallback.text, "LOC1 price");
  EXPECT_TRUE(fallback.fallback_used);
}

TEST_F(RunningExampleTest, ImpossibleThresholdGivesNothing) {
  EXPECT_TRUE(SemanticCandidates(data_.reviews[0], seeds_.at("food"), vectors_, 1.0 + 1e-9).empty());
}

TEST_F(RunningExampleTest, WithoutModifiersOnlyCandidatesRemain) {
  AuxGenConfig c = config_;
  c.include_modifiers = false;
  const Review& s1 = data_.reviews[0];
  EXPECT_EQ(Construct(UnitFor(s1, "food"), s1, seeds_.at("food"), vectors_, c).text, "coffee");
}

TEST_F(RunningExampleTest, UnparsedReviewNeedsModifiersOff) {
  Review r = data_.reviews[0];
  r.tokens.clear();
  EXPECT_THROW(Construct(UnitFor(r, "food"), r, seeds_.at("food"), vectors_, config_), ConfigError);
  AuxGenConfig c = config_;
  c.include_modifiers = false;
  // Without a parse every token is eligible; "mention" and "outstanding" stay
  // below the floor.
  EXPECT_EQ(Construct(UnitFor(r, "food"), r, seeds_.at("food"), vectors_, c).text, "coffee");
}

TEST_F(RunningExampleTest, MissingSeedsFallBackForEveryCategory) {
  const std::vector<ClassificationUnit> units = EnumerateUnits(data_, SemEvalCategories());
  const auto aux = ConstructAll(data_, units, seeds_, vectors_, config_);
  ASSERT_EQ(aux.size(), 10u);
  EXPECT_EQ(aux.at({"s1", std::nullopt, "ambience"}).text, "ambience");
  EXPECT_EQ(aux.at({"s1", std::nullopt, "anecdotes"}).text, "anecdotes");
}

TEST_F(RunningExampleTest, EmitPairsCountsAndRoundTrips) {
  const std::vector<ClassificationUnit> units = EnumerateUnits(data_, SemEvalCategories());
  const auto aux = ConstructAll(data_, units, seeds_, vectors_, config_);
  const auto path = std::filesystem::temp_directory_path() / "asc_auxgen_pairs.jsonl";
  EXPECT_EQ(EmitPairs(data_, units, aux, path), data_.reviews.size() * 5);
  const std::vector<PairRecord> pairs = ReadPairs(path);
  EXPECT_EQ(pairs, BuildPairs(data_, units, aux));
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(),
                             [](const PairRecord& a, const PairRecord& b) { return a.key() < b.key(); }));
  const auto food = std::find_if(pairs.begin(), pairs.end(), [](const PairRecord& p) {
    return p.review_id == "s1" && p.category == "food";
  });
  ASSERT_NE(food, pairs.end());
  EXPECT_EQ(food->auxiliary_text, "coffee outstanding");
  EXPECT_EQ(food->sentence_text, "Did I mention that the coffee is outstanding?");
  EXPECT_EQ(food->gold_label, Sentiment::kPositive);
}

TEST_F(RunningExampleTest, EmptyUnitListWritesEmptyFile) {
  const auto path = std::filesystem::temp_directory_path() / "asc_auxgen_empty.jsonl";
  EXPECT_EQ(EmitPairs(data_, {}, {}, path), 0u);
  EXPECT_EQ(std::filesystem::file_size(path), 0u);
}

TEST_F(RunningExampleTest, UnwritablePathIsIoError) {
  EXPECT_THROW(EmitPairs(data_, {}, {}, "/nonexistent/dir/pairs.jsonl"), IoError);
}

TEST_F(RunningExampleTest, UnitWithoutAuxiliarySentenceIsRejected) {
  const std::vector<ClassificationUnit> units = EnumerateUnits(data_, SemEvalCategories());
  EXPECT_THROW(BuildPairs(data_, units, {}), ValidationError);
}

TEST(AuxGenConfigTest, TaskDefaultsAndValidation) {
  EXPECT_EQ(AuxGenConfig::ForTask(Task::kAbsa).threshold, 0.3);
  EXPECT_EQ(AuxGenConfig::ForTask(Task::kTabsa).threshold, 0.4);
  EXPECT_EQ(AuxGenConfig().seeds_per_aspect, 10);
  AuxGenConfig c;
  c.threshold = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(SemanticCandidatesTest, OtherClusterSeedsSelectNothing) {
  SgnsConfig config;
  config.dim = 30;
  config.min_count = 1;
  config.subsample = 0.0;
  const EmbeddingMatrix m = TrainSgns(synthetic::MakeTwoClusterCorpus(1), config);
  Review r;
  r.id = "a";
  r.text = "a1 a2 a3 a4 a5 a6 a7 a8 a9 a10";
  const SeedList b_seeds{"b", {{"b1", 1}, {"b2", 1}, {"b3", 1}}};
  // Brute-force oracle: every a-token against every seed.
  double max_inter = -1.0;
  for (int i = 1; i <= 10; ++i) {
    for (const auto& [seed, score] : b_seeds.seeds) {
      max_inter = std::max(max_inter, *m.Similarity("a" + std::to_string(i), seed));
    }
  }
  ASSERT_LT(max_inter, 0.3);
  EXPECT_TRUE(SemanticCandidates(r, b_seeds, m, 0.3).empty());
  EXPECT_EQ(SemanticCandidates(r, {"a", {{"a1", 1}}}, m, 0.3).front().form, "a1");
}

TEST(SemanticCandidatesTest, DeduplicatesByLowercaseForm) {
  Vocabulary v;
  v.Add("food", 1);
  const EmbeddingMatrix m(std::move(v), 1, {1.0});
  Review r;
  r.text = "Food food FOOD";
  const std::vector<Candidate> c = SemanticCandidates(r, {"food", {{"food", 1}}}, m, 0.5);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].position, 1);
}

// Seeds and vectors learned from a templated corpus, shared by the property
// tests below.
struct LearnedWorld {
  Dataset data;
  SeedTable seeds;
  EmbeddingMatrix vectors;
};

const LearnedWorld& World() {
  static const LearnedWorld* world = [] {
    auto* w = new LearnedWorld;
    synthetic::TemplatedOptions options;
    options.num_reviews = 300;
    options.filler_rate = 0.1;
    w->data = synthetic::MakeTemplatedAbsa(31, options);
    SeedExtraction extraction;
    extraction.llda.iterations = 100;
    extraction.seeds.stopwords = &DefaultStopwords();
    w->seeds = ExtractSeeds(w->data, SemEvalCategories(), extraction);
    SgnsConfig sgns;
    sgns.dim = 50;
    // A few thousand tokens need many passes before the vectors spread out.
    sgns.epochs = 100;
    sgns.subsample = 0.0;
    w->vectors = TrainSgns(SentencesFromDataset(w->data), sgns);
    return w;
  }();
  return *world;
}

TEST(AuxGenPropertyTest, FallbackTotalityAndOrder) {
  const LearnedWorld& w = World();
  const std::vector<ClassificationUnit> units = EnumerateUnits(w.data, SemEvalCategories());
  const auto aux = ConstructAll(w.data, units, w.seeds, w.vectors, AuxGenConfig::ForTask(Task::kAbsa));
  std::map<std::string, const Review*> by_id;
  for (const Review& r : w.data.reviews) by_id[r.id] = &r;
  int fallbacks = 0;
  for (const ClassificationUnit& u : units) {
    const AuxiliarySentence& a = aux.at(u.key());
    EXPECT_FALSE(a.text.empty());
    EXPECT_EQ(a.fallback_used, a.candidates.empty());
    EXPECT_EQ(a.fallback_used, a.text == u.category);
    fallbacks += a.fallback_used;
    if (a.fallback_used) continue;
    // The text is a subsequence of the review's lowercased tokens.
    const std::vector<std::string> forms = LowercaseTokens(*by_id.at(u.review_id));
    std::size_t pos = 0;
    std::istringstream words(a.text);
    for (std::string word; words >> word;) {
      while (pos < forms.size() && forms[pos] != word) ++pos;
      ASSERT_LT(pos, forms.size()) << a.text;
      ++pos;
    }
    // Every modifier is licensed by a candidate through the rules.
    const Review& r = *by_id.at(u.review_id);
    const DependencyGraph g(r.tokens);
    for (const std::string& mod : a.modifiers) {
      bool licensed = false;
      for (int c = 1; c <= g.size(); ++c) {
        if (std::find(a.candidates.begin(), a.candidates.end(), forms[c - 1]) == a.candidates.end()) continue;
        for (const ModifierHit& h : ModifiersFor(g, c)) licensed |= forms[h.modifier - 1] == mod;
      }
      EXPECT_TRUE(licensed) << mod << " in " << a.text;
    }
  }
  EXPECT_GT(fallbacks, 0);
  EXPECT_LT(fallbacks, static_cast<int>(units.size()));
}

TEST(AuxGenPropertyTest, RaisingThresholdNeverAddsCandidates) {
  const LearnedWorld& w = World();
  for (std::size_t i = 0; i < 60; ++i) {
    const Review& r = w.data.reviews[i];
    for (const auto& [aspect, seeds] : w.seeds) {
      std::vector<std::string> previous;
      bool first = true;
      for (double t = -0.2; t <= 1.0; t += 0.1) {
        std::vector<std::string> now;
        for (const Candidate& c : SemanticCandidates(r, seeds, w.vectors, t)) now.push_back(c.form);
        if (!first) {
          for (const std::string& f : now) {
            EXPECT_NE(std::find(previous.begin(), previous.end(), f), previous.end());
          }
        }
        previous = now;
        first = false;
      }
    }
  }
}

TEST(AuxGenPropertyTest, OtherAspectsSeedsDoNotLeak) {
  const LearnedWorld& w = World();
  SeedTable altered = w.seeds;
  altered["price"] = {"price", {{"pasta", 1.0}, {"waiter", 1.0}}};
  const Dataset head{w.data.task, {w.data.reviews.begin(), w.data.reviews.begin() + 40}};
  const std::vector<ClassificationUnit> units = EnumerateUnits(head, SemEvalCategories());
  const auto config = AuxGenConfig::ForTask(Task::kAbsa);
  const auto a = ConstructAll(head, units, w.seeds, w.vectors, config);
  const auto b = ConstructAll(head, units, altered, w.vectors, config);
  for (const ClassificationUnit& u : units) {
    if (u.category == "price") continue;
    EXPECT_EQ(a.at(u.key()), b.at(u.key()));
  }
}

}  // namespace
}  // namespace asc
