// Canonical record model for the SemEval-2014 Task 4 (restaurants, aspect
// categories) and SentiHood corpora, plus enumeration of per-(target, aspect)
// classification units.

#ifndef ASC_CORPUS_H_
#define ASC_CORPUS_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asc/conllu.h"
#include "asc/error.h"

namespace asc {

// Label order doubles as the argmax tie-break order.
enum class Sentiment { kNone = 0, kNegative, kNeutral, kPositive, kConflict };
inline constexpr int kNumSentiments = 5;

std::string_view SentimentName(Sentiment s);
// Case-insensitive; throws ValidationError on unknown strings.
Sentiment ParseSentiment(std::string_view name);

enum class Task { kAbsa, kTabsa };

std::string_view TaskName(Task t);
Task ParseTask(std::string_view name);

// Labels a unit of the task may carry, in label order.
std::vector<Sentiment> TaskLabels(Task t);

const std::vector<std::string>& SemEvalCategories();   // food price service ambience anecdotes
const std::vector<std::string>& SentiHoodCategories();  // price transit-location safety general
const std::vector<std::string>& TaskCategories(Task t);

struct Annotation {
  std::optional<std::string> target;  // absent for ABSA
  std::string category;
  Sentiment sentiment = Sentiment::kNone;

  bool operator==(const Annotation&) const = default;
};

struct Review {
  std::string id;
  std::string text;
  std::vector<ParsedToken> tokens;  // empty until a parse is attached
  std::vector<Annotation> annotations;
  std::string split;

  bool parsed() const { return !tokens.empty(); }
  bool operator==(const Review&) const = default;
};

// Lowercased token forms: parser tokens when a parse is attached, otherwise
// SimpleTokenize of the text.
std::vector<std::string> LowercaseTokens(const Review& review);

// Targets named in the review: tokens matching LOC<digits> exactly, in order
// of first mention, plus any annotated target not found that way.
std::vector<std::string> MentionedTargets(const Review& review);

struct Dataset {
  Task task = Task::kAbsa;
  std::vector<Review> reviews;

  // Reviews restricted to one split; an empty split name keeps everything.
  Dataset Filter(std::string_view split) const;
};

// Throws ParseError (location = byte offset) on malformed XML and
// ValidationError naming the review id on an unknown polarity. The
// "anecdotes/miscellaneous" category is stored as "anecdotes".
Dataset LoadSemEval(const std::filesystem::path& path, const std::string& split,
                    Diagnostics* diag = nullptr);
Dataset LoadSemEvalString(std::string_view xml, const std::string& split,
                          Diagnostics* diag = nullptr);

// Keeps only the four evaluated categories. Targets missing from the text
// and duplicate (target, aspect) opinions are warnings; the first duplicate
// wins.
Dataset LoadSentiHood(const std::filesystem::path& path, const std::string& split,
                      Diagnostics* diag = nullptr);
Dataset LoadSentiHoodString(std::string_view json, const std::string& split,
                            Diagnostics* diag = nullptr);

// Replaces each review's tokens by the matching CoNLL-U sentence. Sentences
// align by sent_id when every sentence carries one that names a review,
// otherwise by position. Throws AlignmentError or ValidationError.
void AttachParses(Dataset& dataset, const std::vector<ConlluSentence>& parses);

struct UnitKey {
  std::string review_id;
  std::optional<std::string> target;
  std::string category;

  auto operator<=>(const UnitKey&) const = default;
  bool operator==(const UnitKey&) const = default;
};

std::string FormatKey(const UnitKey& key);

struct ClassificationUnit {
  std::string review_id;
  std::optional<std::string> target;
  std::string category;
  Sentiment gold = Sentiment::kNone;

  UnitKey key() const { return {review_id, target, category}; }
  bool operator==(const ClassificationUnit&) const = default;
};

// ABSA: |categories| units per review. TABSA: |categories| x mentioned
// targets. Gold is taken from the annotations, none otherwise.
std::vector<ClassificationUnit> EnumerateUnits(const Dataset& dataset,
                                               const std::vector<std::string>& categories);

// Fraction of annotations whose category name does not occur in the
// lowercased review text.
double ImplicitAspectRate(const Dataset& dataset);

// Fraction of reviews with annotations on more than one category.
double MultiAspectRate(const Dataset& dataset);

}  // namespace asc

#endif  // ASC_CORPUS_H_
