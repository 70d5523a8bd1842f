// Skip-gram word embeddings trained with negative sampling, plus cosine
// similarity queries against aspect seeds.

#ifndef ASC_EMBEDDINGS_H_
#define ASC_EMBEDDINGS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "asc/llda.h"

namespace asc {

class Vocabulary {
 public:
  // Tokens occurring at least `min_count` times, ordered by descending
  // count, ties by token.
  static Vocabulary Build(const std::vector<std::vector<std::string>>& sentences, int min_count);

  // Returns the new id; throws ValidationError on a duplicate token.
  int Add(const std::string& token, long count);
  std::optional<int> Id(std::string_view token) const;
  const std::string& Token(int id) const { return tokens_[id]; }
  long Count(int id) const { return counts_[id]; }
  int size() const { return static_cast<int>(tokens_.size()); }
  bool empty() const { return tokens_.empty(); }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> tokens_;
  std::vector<long> counts_;
};

struct SgnsConfig {
  int dim = 200;
  int window = 10;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;  // decays linearly to 1e-4 of this value
  int min_count = 2;
  double subsample = 1e-3;  // 0 disables frequent-word subsampling
  bool shrink_window = true;  // sample the effective window in [1, window]
  std::uint64_t seed = 1;
  // 1 = deterministic. More threads run lock-free updates whose results
  // vary from run to run.
  int threads = 1;

  // Throws ConfigError.
  void Validate() const;
};

class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  // `output` may be empty (vectors loaded from a file).
  EmbeddingMatrix(Vocabulary vocab, int dim, std::vector<double> input,
                  std::vector<double> output = {});

  int dim() const { return dim_; }
  int size() const { return vocab_.size(); }
  const Vocabulary& vocabulary() const { return vocab_; }
  bool has_output_vectors() const { return !output_.empty(); }

  std::span<const double> InputVector(int id) const {
    return {input_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> OutputVector(int id) const {
    return {output_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> MutableInputVector(int id) {
    return {input_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> MutableOutputVector(int id) {
    return {output_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& input() const { return input_; }
  const std::vector<double>& output() const { return output_; }

  // Cosine of the input vectors; nullopt when either token is out of
  // vocabulary. Zero vectors have similarity 0.
  std::optional<double> Similarity(std::string_view a, std::string_view b) const;
  double SimilarityById(int a, int b) const;

  bool AllFinite() const;

 private:
  Vocabulary vocab_;
  int dim_ = 0;
  std::vector<double> input_;
  std::vector<double> output_;
  std::vector<double> norms_;
};

struct SgnsTrainingStats {
  std::vector<double> epoch_mean_objective;  // per-pair objective before each update
  long pairs = 0;
};

// Word2vec initialization: input uniform in [-0.5, 0.5) / dim, output zero.
EmbeddingMatrix InitializeSgns(const Vocabulary& vocab, const SgnsConfig& config);

// Throws ConfigError for an invalid config or an empty vocabulary after
// min_count filtering.
EmbeddingMatrix TrainSgns(const std::vector<std::vector<std::string>>& sentences,
                          const SgnsConfig& config, SgnsTrainingStats* stats = nullptr);

struct SgnsSample {
  int center;
  int context;
  std::vector<int> negatives;
};

// Mean pair objective of `samples` under the matrix's current vectors.
double MeanSgnsObjective(const EmbeddingMatrix& m, const std::vector<SgnsSample>& samples);

// Lowercased token sequences of every review; callers pick the split.
std::vector<std::vector<std::string>> SentencesFromDataset(const Dataset& dataset);

// Text format: "V dim" header, then one token and dim numbers per line.
// Numbers are written in shortest round-trip form.
void SaveVectors(const std::filesystem::path& path, const EmbeddingMatrix& m);
// Throws ParseError whose location is the 1-based line number.
EmbeddingMatrix LoadVectors(const std::filesystem::path& path);

// Maximum similarity between `token` and any in-vocabulary seed; nullopt
// when the token or every seed is out of vocabulary.
std::optional<double> MaxSeedSimilarity(const EmbeddingMatrix& m, std::string_view token,
                                        const SeedList& seeds);

}  // namespace asc

#endif  // ASC_EMBEDDINGS_H_
