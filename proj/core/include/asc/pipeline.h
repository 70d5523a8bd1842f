// End-to-end orchestration: ingest -> seed-extract -> embed-train -> auxgen
// -> surrogate (or imported predictions) -> score. Every stage reads and
// writes files in the output directory, so any stage can be switched off and
// its artifact supplied instead.

#ifndef ASC_PIPELINE_H_
#define ASC_PIPELINE_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "asc/auxgen.h"
#include "asc/corpus.h"
#include "asc/embeddings.h"
#include "asc/llda.h"
#include "asc/metrics.h"
#include "asc/surrogate.h"

namespace asc {

enum class InputFormat { kSemEval, kSentiHood, kJsonl };

InputFormat ParseInputFormat(std::string_view name);

// Loads a split and attaches its parses when a CoNLL-U path is given.
Dataset LoadInput(const std::filesystem::path& path, InputFormat format, Task task,
                  const std::string& split,
                  const std::optional<std::filesystem::path>& parses = std::nullopt,
                  Diagnostics* diag = nullptr);

struct SeedExtraction {
  LldaConfig llda;
  SeedOptions seeds;
};

// Fits L-LDA on the annotated reviews of `train` and returns the top seeds
// per category.
SeedTable ExtractSeeds(const Dataset& train, const std::vector<std::string>& categories,
                       const SeedExtraction& options, Diagnostics* diag = nullptr);

inline const std::set<std::string> kAllStages = {"seed-extract", "embed-train", "auxgen",
                                                 "surrogate", "score"};

struct PipelineConfig {
  Task task = Task::kAbsa;
  InputFormat format = InputFormat::kSemEval;
  std::filesystem::path train;
  std::filesystem::path test;
  std::optional<std::filesystem::path> train_parses;
  std::optional<std::filesystem::path> test_parses;
  std::filesystem::path out_dir;
  std::set<std::string> stages = kAllStages;

  std::optional<std::filesystem::path> stopwords;
  SeedExtraction seed_extraction;
  SgnsConfig sgns;
  AuxGenConfig auxgen;
  SurrogateConfig surrogate;
  // When set, these predictions replace the surrogate stage.
  std::optional<std::filesystem::path> predictions_file;
  bool strict_detection_only = false;
};

// Plain key = value file; '#' starts a comment. Relative paths resolve
// against the config file's directory. Throws ConfigError.
PipelineConfig ParsePipelineConfig(std::istream& in, const std::filesystem::path& base_dir);
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

struct PipelineResult {
  MetricsReport report;
  Diagnostics diagnostics;
};

// Writes train.jsonl, test.jsonl, seeds.json, vectors.txt, train_pairs.jsonl,
// test_pairs.jsonl, predictions.jsonl, report.json and report.txt into
// out_dir. Throws StageError naming the failing stage.
PipelineResult RunPipeline(const PipelineConfig& config);

}  // namespace asc

#endif  // ASC_PIPELINE_H_
