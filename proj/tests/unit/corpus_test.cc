#include "asc/corpus.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <map>
#include <set>

#include "asc/conllu.h"
#include "synthetic.h"

namespace asc {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

const std::string kData = ASC_TEST_DATA_DIR;

TEST(SemEvalTest, LoadsSampleFile) {
  Diagnostics diag;
  const Dataset d = LoadSemEval(kData + "/fixtures/semeval_sample.xml", "train", &diag);
  EXPECT_TRUE(diag.empty());
  EXPECT_EQ(d.task, Task::kAbsa);
  ASSERT_EQ(d.reviews.size(), 5u);
  EXPECT_EQ(d.reviews[0].text, "Did I mention that the coffee is outstanding?");
  EXPECT_THAT(d.reviews[0].annotations,
              ElementsAre(Annotation{std::nullopt, "food", Sentiment::kPositive}));
  EXPECT_EQ(d.reviews[0].split, "train");
  EXPECT_EQ(d.reviews[2].text, "We went there on a rainy Tuesday & it was fine.");
  EXPECT_EQ(d.reviews[2].annotations[0].category, "anecdotes");
  EXPECT_EQ(d.reviews[3].annotations[2].sentiment, Sentiment::kConflict);
  EXPECT_TRUE(d.reviews[4].annotations.empty());
  EXPECT_FALSE(d.reviews[0].parsed());
}

TEST(SemEvalTest, MalformedXmlReportsByteOffset) {
  const std::string xml = "<sentences><sentence id=\"1\"><text>x</txet></sentence></sentences>";
  try {
    LoadSemEvalString(xml, "train");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.location(), 0u);
    EXPECT_LE(e.location(), xml.size());
    EXPECT_THAT(e.what(), HasSubstr("byte offset"));
  }
}

TEST(SemEvalTest, UnknownPolarityNamesTheReview) {
  const std::string xml =
      "<sentences><sentence id=\"r42\"><text>x</text><aspectCategories>"
      "<aspectCategory category=\"food\" polarity=\"great\"/></aspectCategories></sentence>"
      "</sentences>";
  try {
    LoadSemEvalString(xml, "train");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_THAT(e.what(), HasSubstr("r42"));
  }
}

TEST(SemEvalTest, DuplicateCategoryKeepsFirstAndWarns) {
  const std::string xml =
      "<sentences><sentence id=\"r1\"><text>x</text><aspectCategories>"
      "<aspectCategory category=\"food\" polarity=\"positive\"/>"
      "<aspectCategory category=\"food\" polarity=\"negative\"/>"
      "</aspectCategories></sentence></sentences>";
  Diagnostics diag;
  const Dataset d = LoadSemEvalString(xml, "train", &diag);
  ASSERT_EQ(d.reviews[0].annotations.size(), 1u);
  EXPECT_EQ(d.reviews[0].annotations[0].sentiment, Sentiment::kPositive);
  EXPECT_EQ(diag.size(), 1u);
}

TEST(SentiHoodTest, LoadsSampleFile) {
  Diagnostics diag;
  const Dataset d = LoadSentiHood(kData + "/fixtures/sentihood_sample.json", "test", &diag);
  EXPECT_TRUE(diag.empty());
  EXPECT_EQ(d.task, Task::kTabsa);
  ASSERT_EQ(d.reviews.size(), 3u);
  EXPECT_EQ(d.reviews[0].id, "1");
  EXPECT_EQ(d.reviews[0].text, "I hear that under LOC1 is quite cheap");
  EXPECT_THAT(d.reviews[0].annotations,
              ElementsAre(Annotation{"LOC1", "price", Sentiment::kPositive}));
  // Only "nightlife" was annotated, which is not an evaluated category.
  EXPECT_TRUE(d.reviews[1].annotations.empty());
  EXPECT_EQ(d.reviews[2].annotations.size(), 3u);
}

TEST(SentiHoodTest, TargetMissingFromTextWarnsAndKeepsEntry) {
  const std::string json =
      R"([{"id": 7, "text": "LOC1 is nice", "opinions": [)"
      R"({"sentiment": "Positive", "aspect": "general", "target_entity": "LOC2"}]}])";
  Diagnostics diag;
  const Dataset d = LoadSentiHoodString(json, "train", &diag);
  ASSERT_EQ(d.reviews[0].annotations.size(), 1u);
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_THAT(diag[0], HasSubstr("LOC2"));
  EXPECT_THAT(MentionedTargets(d.reviews[0]), ElementsAre("LOC1", "LOC2"));
}

TEST(SentiHoodTest, ConflictingDuplicateOpinionsKeepFirst) {
  const std::string json =
      R"([{"id": "a", "text": "LOC1 is cheap", "opinions": [)"
      R"({"sentiment": "Positive", "aspect": "price", "target_entity": "LOC1"},)"
      R"({"sentiment": "Negative", "aspect": "price", "target_entity": "LOC1"}]}])";
  Diagnostics diag;
  const Dataset d = LoadSentiHoodString(json, "train", &diag);
  ASSERT_EQ(d.reviews[0].annotations.size(), 1u);
  EXPECT_EQ(d.reviews[0].annotations[0].sentiment, Sentiment::kPositive);
  EXPECT_EQ(diag.size(), 1u);
}

TEST(SentiHoodTest, MalformedJsonIsParseError) {
  EXPECT_THROW(LoadSentiHoodString("[{\"id\": 1,", "train"), ParseError);
}

TEST(SentimentTest, NamesRoundTrip) {
  for (int i = 0; i < kNumSentiments; ++i) {
    const auto s = static_cast<Sentiment>(i);
    EXPECT_EQ(ParseSentiment(SentimentName(s)), s);
  }
  EXPECT_EQ(ParseSentiment("Positive"), Sentiment::kPositive);
  EXPECT_THROW(ParseSentiment("meh"), ValidationError);
}

Dataset RunningExample() {
  Dataset d = LoadSemEval(kData + "/fixtures/semeval_sample.xml", "train");
  d.reviews.resize(2);
  AttachParses(d, ReadConllu(kData + "/fixtures/running_example.conllu"));
  return d;
}

TEST(AttachParsesTest, CoffeeIsSubjectOfOutstanding) {
  const Dataset d = RunningExample();
  const std::vector<ParsedToken>& t = d.reviews[0].tokens;
  ASSERT_EQ(t.size(), 9u);
  EXPECT_EQ(t[5].form, "coffee");
  EXPECT_EQ(t[5].deprel, "nsubj");
  EXPECT_EQ(t[t[5].head - 1].form, "outstanding");
}

TEST(AttachParsesTest, IsIdempotent) {
  Dataset d = RunningExample();
  const Dataset once = d;
  AttachParses(d, ReadConllu(kData + "/fixtures/running_example.conllu"));
  EXPECT_EQ(d.reviews, once.reviews);
}

TEST(AttachParsesTest, CountMismatchNamesFirstUnmatchedReview) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 10;
  Dataset d = synthetic::MakeTemplatedAbsa(3, options);
  std::vector<ConlluSentence> parses = synthetic::ToConllu(d);
  for (ConlluSentence& s : parses) s.sent_id.reset();
  parses.pop_back();
  for (Review& r : d.reviews) r.tokens.clear();
  try {
    AttachParses(d, parses);
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    EXPECT_THAT(e.what(), HasSubstr("r9"));
  }
  EXPECT_FALSE(d.reviews[0].parsed());
}

TEST(AttachParsesTest, AlignsBySentenceIdRegardlessOfOrder) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 20;
  const Dataset original = synthetic::MakeTemplatedAbsa(5, options);
  std::vector<ConlluSentence> parses = synthetic::ToConllu(original);
  std::reverse(parses.begin(), parses.end());
  Dataset d = original;
  for (Review& r : d.reviews) r.tokens.clear();
  AttachParses(d, parses);
  EXPECT_EQ(d.reviews, original.reviews);
}

TEST(AttachParsesTest, BadHeadIsValidationErrorAndLeavesDatasetUntouched) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 3;
  Dataset d = synthetic::MakeTemplatedAbsa(5, options);
  std::vector<ConlluSentence> parses = synthetic::ToConllu(d);
  for (Review& r : d.reviews) r.tokens.clear();
  parses[2].tokens[0].head = 99;
  EXPECT_THROW(AttachParses(d, parses), ValidationError);
  for (const Review& r : d.reviews) EXPECT_FALSE(r.parsed());
}

TEST(EnumerateUnitsTest, RunningExampleUnits) {
  const Dataset d = RunningExample();
  const std::vector<ClassificationUnit> units = EnumerateUnits(d, SemEvalCategories());
  ASSERT_EQ(units.size(), 10u);
  std::map<std::string, Sentiment> s1, s2;
  for (const ClassificationUnit& u : units) (u.review_id == "s1" ? s1 : s2)[u.category] = u.gold;
  EXPECT_EQ(s1["food"], Sentiment::kPositive);
  EXPECT_EQ(s1["price"], Sentiment::kNone);
  EXPECT_EQ(s1["service"], Sentiment::kNone);
  EXPECT_EQ(s1["ambience"], Sentiment::kNone);
  EXPECT_EQ(s1["anecdotes"], Sentiment::kNone);
  EXPECT_EQ(s2["service"], Sentiment::kPositive);
  EXPECT_EQ(s2["food"], Sentiment::kPositive);
  int none = 0;
  for (const auto& [c, s] : s2) none += s == Sentiment::kNone;
  EXPECT_EQ(none, 3);
}

TEST(EnumerateUnitsTest, TwoTargetsGiveEightUnits) {
  const Dataset d = LoadSentiHood(kData + "/fixtures/sentihood_sample.json", "test");
  const std::vector<ClassificationUnit> units =
      EnumerateUnits(d.Filter("test"), SentiHoodCategories());
  // 4 + 4 + 8: the third entry mentions LOC2 and LOC1.
  ASSERT_EQ(units.size(), 16u);
  EXPECT_EQ(units[8].target, "LOC2");
  EXPECT_EQ(units[12].target, "LOC1");
}

TEST(EnumerateUnitsTest, AbsaCountAndGoldRoundTrip) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 200;
  const Dataset d = synthetic::MakeTemplatedAbsa(9, options);
  const std::vector<ClassificationUnit> units = EnumerateUnits(d, SemEvalCategories());
  EXPECT_EQ(units.size(), d.reviews.size() * SemEvalCategories().size());
  std::map<std::string, std::set<std::pair<std::string, Sentiment>>> from_units, from_reviews;
  for (const ClassificationUnit& u : units) {
    if (u.gold != Sentiment::kNone) from_units[u.review_id].insert({u.category, u.gold});
  }
  for (const Review& r : d.reviews) {
    for (const Annotation& a : r.annotations) from_reviews[r.id].insert({a.category, a.sentiment});
  }
  EXPECT_EQ(from_units, from_reviews);
}

TEST(EnumerateUnitsTest, TabsaGoldRoundTrip) {
  synthetic::TemplatedOptions options;
  options.num_reviews = 200;
  const Dataset d = synthetic::MakeTemplatedTabsa(9, options);
  std::size_t annotations = 0;
  for (const Review& r : d.reviews) annotations += r.annotations.size();
  std::size_t non_none = 0;
  for (const ClassificationUnit& u : EnumerateUnits(d, SentiHoodCategories())) {
    non_none += u.gold != Sentiment::kNone;
    EXPECT_NE(u.gold, Sentiment::kNeutral);
    EXPECT_NE(u.gold, Sentiment::kConflict);
  }
  EXPECT_EQ(non_none, annotations);
}

TEST(StatisticsTest, ImplicitAndMultiAspectRates) {
  Dataset d;
  d.reviews.push_back({"1", "The food was great", {}, {{std::nullopt, "food", Sentiment::kPositive},
                                                       {std::nullopt, "price", Sentiment::kNegative}},
                       "train"});
  d.reviews.push_back({"2", "Nice place", {}, {{std::nullopt, "ambience", Sentiment::kPositive}},
                       "train"});
  EXPECT_DOUBLE_EQ(ImplicitAspectRate(d), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(MultiAspectRate(d), 0.5);
}

}  // namespace
}  // namespace asc
