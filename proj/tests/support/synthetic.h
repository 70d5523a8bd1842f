// Synthetic corpora for tests. Each generator is the oracle for the tests
// that use it: the planted vocabularies and templated parses are known by
// construction.

#ifndef ASC_TESTS_SUPPORT_SYNTHETIC_H_
#define ASC_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "asc/corpus.h"
#include "asc/llda.h"

namespace asc::synthetic {

struct PlantedTopicCorpus {
  std::vector<std::string> topics;
  std::map<std::string, std::vector<std::string>> planted;  // topic -> vocabulary
  std::vector<LldaDocument> documents;
};

// `num_docs` documents, each drawing its words from 1-2 planted topics with
// disjoint `words_per_topic`-word vocabularies. Within a topic word i has
// weight 1 / (i + 1)^0.3, so frequencies are distinct but all words recur.
PlantedTopicCorpus MakePlantedTopicCorpus(std::uint64_t seed, int num_docs = 200,
                                          int num_topics = 4, int words_per_topic = 20,
                                          int doc_length = 40);

// Two disjoint clusters: a1..a10 only co-occur with each other, likewise
// b1..b10.
std::vector<std::vector<std::string>> MakeTwoClusterCorpus(std::uint64_t seed,
                                                           int sentences = 600,
                                                           int sentence_length = 8);

struct TemplatedOptions {
  int num_reviews = 400;
  double two_clause_rate = 0.35;
  double filler_rate = 0.0;  // reviews with no aspect at all
  std::string id_prefix = "r";
  std::string split = "train";
};

// Restaurant reviews over SemEval's categories built from clause templates
// ("the pasta was delicious", "we had a rude waiter", ...). Every review
// carries a dependency parse consistent with its template.
Dataset MakeTemplatedAbsa(std::uint64_t seed, const TemplatedOptions& options);

// Neighbourhood reviews over SentiHood's categories mentioning LOC1/LOC2.
Dataset MakeTemplatedTabsa(std::uint64_t seed, const TemplatedOptions& options);

// Writers in the original corpus formats, used to build file fixtures.
std::string ToSemEvalXml(const Dataset& dataset);
std::string ToSentiHoodJson(const Dataset& dataset);
std::vector<ConlluSentence> ToConllu(const Dataset& dataset);

}  // namespace asc::synthetic

#endif  // ASC_TESTS_SUPPORT_SYNTHETIC_H_
