// Auxiliary-sentence construction: semantic candidates chosen by seed
// similarity, their opinion modifiers from the dependency rules, assembled in
// sentence order; the aspect name stands in when nothing qualifies.

#ifndef ASC_AUXGEN_H_
#define ASC_AUXGEN_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asc/corpus.h"
#include "asc/embeddings.h"
#include "asc/llda.h"

namespace asc {

struct AuxGenConfig {
  double threshold = 0.3;  // similarity floor; 0.3 SemEval, 0.4 SentiHood
  int seeds_per_aspect = 10;
  bool include_modifiers = true;

  static AuxGenConfig ForTask(Task task);
  // Throws ConfigError.
  void Validate() const;
};

struct AuxiliarySentence {
  UnitKey unit;
  std::vector<std::string> candidates;  // lowercased, sentence order
  std::vector<std::string> modifiers;   // lowercased, sentence order
  std::string text;
  bool fallback_used = false;

  bool operator==(const AuxiliarySentence&) const = default;
};

struct Candidate {
  int position = 0;  // 1-based token index
  std::string form;  // lowercased
};

// Content tokens (NOUN, PROPN, ADJ, VERB when the review is parsed; every
// token otherwise) whose best seed similarity meets `threshold`, in sentence
// order, first occurrence of each lowercased form. Only the first
// `max_seeds` seeds are used when it is positive.
std::vector<Candidate> SemanticCandidates(const Review& review, const SeedList& seeds,
                                          const EmbeddingMatrix& m, double threshold,
                                          int max_seeds = 0);

// Throws ConfigError when modifiers are requested for an unparsed review.
AuxiliarySentence Construct(const ClassificationUnit& unit, const Review& review,
                            const SeedList& seeds, const EmbeddingMatrix& m,
                            const AuxGenConfig& config);

// Constructs every unit; reviews are looked up by id and a category without
// seeds always falls back.
std::map<UnitKey, AuxiliarySentence> ConstructAll(const Dataset& dataset,
                                                  const std::vector<ClassificationUnit>& units,
                                                  const SeedTable& seeds,
                                                  const EmbeddingMatrix& m,
                                                  const AuxGenConfig& config);

struct PairRecord {
  std::string review_id;
  std::optional<std::string> target;
  std::string category;
  std::string auxiliary_text;
  std::string sentence_text;
  Sentiment gold_label = Sentiment::kNone;
  bool fallback_used = false;

  UnitKey key() const { return {review_id, target, category}; }
  bool operator==(const PairRecord&) const = default;
};

// Joins units with their auxiliary sentences, sorted by unit key. Throws
// ValidationError for a unit without an auxiliary sentence.
std::vector<PairRecord> BuildPairs(const Dataset& dataset,
                                   const std::vector<ClassificationUnit>& units,
                                   const std::map<UnitKey, AuxiliarySentence>& aux);

// Writes one JSON object per record and returns the count written.
std::size_t EmitPairs(const Dataset& dataset, const std::vector<ClassificationUnit>& units,
                      const std::map<UnitKey, AuxiliarySentence>& aux,
                      const std::filesystem::path& path);
void WritePairs(const std::filesystem::path& path, const std::vector<PairRecord>& pairs);
std::vector<PairRecord> ReadPairs(const std::filesystem::path& path);

}  // namespace asc

#endif  // ASC_AUXGEN_H_
