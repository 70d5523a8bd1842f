#include "asc/pipeline.h"

#include <fstream>
#include <sstream>

#include <boost/program_options.hpp>

#include "asc/dataset_io.h"
#include "asc/stopwords.h"
#include "asc/text.h"

namespace asc {
namespace po = boost::program_options;
namespace fs = std::filesystem;

InputFormat ParseInputFormat(std::string_view name) {
  const std::string lower = ToLower(name);
  if (lower == "semeval") return InputFormat::kSemEval;
  if (lower == "sentihood") return InputFormat::kSentiHood;
  if (lower == "jsonl") return InputFormat::kJsonl;
  throw ConfigError("unknown input format '" + std::string(name) +
                    "' (expected semeval, sentihood or jsonl)");
}

Dataset LoadInput(const fs::path& path, InputFormat format, Task task, const std::string& split,
                  const std::optional<fs::path>& parses, Diagnostics* diag) {
  Dataset d;
  switch (format) {
    case InputFormat::kSemEval:
      d = LoadSemEval(path, split, diag);
      break;
    case InputFormat::kSentiHood:
      d = LoadSentiHood(path, split, diag);
      break;
    case InputFormat::kJsonl:
      d = ReadDatasetJsonl(path, task);
      for (Review& r : d.reviews) {
        if (r.split.empty()) r.split = split;
      }
      break;
  }
  d.task = task;
  if (parses) AttachParses(d, ReadConllu(*parses));
  return d;
}

SeedTable ExtractSeeds(const Dataset& train, const std::vector<std::string>& categories,
                       const SeedExtraction& options, Diagnostics* diag) {
  const std::vector<LldaDocument> docs = DocumentsFromDataset(train);
  if (docs.empty()) throw ValidationError("no annotated reviews to fit L-LDA on");
  const LldaModel model = FitLlda(docs, categories, options.llda);
  if (model.initialization_only()) Warn(diag, "L-LDA ran zero sweeps; seeds reflect initialization only");
  SeedTable table;
  for (const std::string& c : categories) table.emplace(c, TopSeeds(model, c, options.seeds, diag));
  return table;
}

PipelineConfig ParsePipelineConfig(std::istream& in, const fs::path& base_dir) {
  po::options_description desc("pipeline");
  // clang-format off
  desc.add_options()
      ("task", po::value<std::string>()->required())
      ("format", po::value<std::string>())
      ("train", po::value<std::string>()->required())
      ("test", po::value<std::string>()->required())
      ("train_parses", po::value<std::string>())
      ("test_parses", po::value<std::string>())
      ("out_dir", po::value<std::string>()->required())
      ("stages", po::value<std::string>())
      ("stopwords", po::value<std::string>())
      ("threshold", po::value<double>())
      ("seeds_k", po::value<int>())
      ("seeds_min_doc_freq", po::value<int>())
      ("include_modifiers", po::value<bool>())
      ("llda_alpha", po::value<double>())
      ("llda_eta", po::value<double>())
      ("llda_iters", po::value<int>())
      ("llda_seed", po::value<std::uint64_t>())
      ("embed_dim", po::value<int>())
      ("embed_window", po::value<int>())
      ("embed_neg", po::value<int>())
      ("embed_epochs", po::value<int>())
      ("embed_lr", po::value<double>())
      ("embed_min_count", po::value<int>())
      ("embed_subsample", po::value<double>())
      ("embed_seed", po::value<std::uint64_t>())
      ("surrogate_epochs", po::value<int>())
      ("surrogate_batch", po::value<int>())
      ("surrogate_lr", po::value<double>())
      ("surrogate_l2", po::value<double>())
      ("surrogate_seed", po::value<std::uint64_t>())
      ("surrogate_use_auxiliary", po::value<bool>())
      ("predictions_file", po::value<std::string>())
      ("strict_detection_only", po::value<bool>());
  // clang-format on
  po::variables_map vm;
  try {
    po::store(po::parse_config_file(in, desc, false), vm);
    po::notify(vm);
  } catch (const po::error& e) {
    throw ConfigError(std::string("pipeline config: ") + e.what());
  }
  auto path = [&](const std::string& key) {
    fs::path p(vm[key].as<std::string>());
    return p.is_absolute() ? p : base_dir / p;
  };
  auto opt_path = [&](const std::string& key) -> std::optional<fs::path> {
    if (!vm.count(key)) return std::nullopt;
    return path(key);
  };
  auto set = [&](const char* key, auto& field) {
    using T = std::decay_t<decltype(field)>;
    if (vm.count(key)) field = vm[key].as<T>();
  };

  PipelineConfig c;
  c.task = ParseTask(vm["task"].as<std::string>());
  c.format = vm.count("format") ? ParseInputFormat(vm["format"].as<std::string>())
                                : (c.task == Task::kAbsa ? InputFormat::kSemEval
                                                         : InputFormat::kSentiHood);
  c.train = path("train");
  c.test = path("test");
  c.train_parses = opt_path("train_parses");
  c.test_parses = opt_path("test_parses");
  c.out_dir = path("out_dir");
  c.stopwords = opt_path("stopwords");
  c.predictions_file = opt_path("predictions_file");
  if (vm.count("stages")) {
    c.stages.clear();
    for (const std::string& s : Split(vm["stages"].as<std::string>(), ',')) {
      const std::string name(Trim(s));
      if (name.empty()) continue;
      if (kAllStages.count(name) == 0) throw ConfigError("unknown pipeline stage '" + name + "'");
      c.stages.insert(name);
    }
  }
  c.auxgen = AuxGenConfig::ForTask(c.task);
  set("threshold", c.auxgen.threshold);
  set("include_modifiers", c.auxgen.include_modifiers);
  set("seeds_k", c.seed_extraction.seeds.k);
  c.auxgen.seeds_per_aspect = c.seed_extraction.seeds.k;
  set("seeds_min_doc_freq", c.seed_extraction.seeds.min_doc_freq);
  if (vm.count("llda_alpha")) c.seed_extraction.llda.alpha = vm["llda_alpha"].as<double>();
  set("llda_eta", c.seed_extraction.llda.eta);
  set("llda_iters", c.seed_extraction.llda.iterations);
  set("llda_seed", c.seed_extraction.llda.seed);
  set("embed_dim", c.sgns.dim);
  set("embed_window", c.sgns.window);
  set("embed_neg", c.sgns.negatives);
  set("embed_epochs", c.sgns.epochs);
  set("embed_lr", c.sgns.learning_rate);
  set("embed_min_count", c.sgns.min_count);
  set("embed_subsample", c.sgns.subsample);
  set("embed_seed", c.sgns.seed);
  set("surrogate_epochs", c.surrogate.epochs);
  set("surrogate_batch", c.surrogate.batch_size);
  set("surrogate_lr", c.surrogate.learning_rate);
  set("surrogate_l2", c.surrogate.l2);
  set("surrogate_seed", c.surrogate.seed);
  set("surrogate_use_auxiliary", c.surrogate.use_auxiliary);
  set("strict_detection_only", c.strict_detection_only);

  c.auxgen.Validate();
  c.sgns.Validate();
  c.surrogate.Validate();
  if (c.auxgen.include_modifiers && (!c.train_parses || !c.test_parses) &&
      c.format != InputFormat::kJsonl) {
    throw ConfigError("include_modifiers needs train_parses and test_parses");
  }
  return c;
}

PipelineConfig LoadPipelineConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pipeline config " + path.string());
  return ParsePipelineConfig(in, path.parent_path());
}

namespace {

template <typename Fn>
auto RunStage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

PipelineResult RunPipeline(const PipelineConfig& config) {
  PipelineResult result;
  Diagnostics& diag = result.diagnostics;
  const fs::path& out = config.out_dir;
  auto enabled = [&](const char* stage) { return config.stages.count(stage) > 0; };
  const std::vector<std::string>& categories = TaskCategories(config.task);

  RunStage("ingest", [&] {
    fs::create_directories(out);
    return 0;
  });
  const Dataset train = RunStage("ingest", [&] {
    Dataset d = LoadInput(config.train, config.format, config.task, "train", config.train_parses, &diag);
    WriteDatasetJsonl(out / "train.jsonl", d);
    return d;
  });
  const Dataset test = RunStage("ingest", [&] {
    Dataset d = LoadInput(config.test, config.format, config.task, "test", config.test_parses, &diag);
    WriteDatasetJsonl(out / "test.jsonl", d);
    return d;
  });

  const SeedTable seeds = RunStage("seed-extract", [&] {
    if (!enabled("seed-extract")) return ReadSeeds(out / "seeds.json");
    const std::set<std::string> stopwords =
        config.stopwords ? LoadStopwords(*config.stopwords) : DefaultStopwords();
    SeedExtraction options = config.seed_extraction;
    options.seeds.stopwords = &stopwords;
    SeedTable table = ExtractSeeds(train, categories, options, &diag);
    WriteSeeds(out / "seeds.json", table);
    return table;
  });

  const EmbeddingMatrix vectors = RunStage("embed-train", [&] {
    if (!enabled("embed-train")) return LoadVectors(out / "vectors.txt");
    EmbeddingMatrix m = TrainSgns(SentencesFromDataset(train), config.sgns);
    SaveVectors(out / "vectors.txt", m);
    return m;
  });

  const std::vector<ClassificationUnit> train_units = EnumerateUnits(train, categories);
  const std::vector<ClassificationUnit> test_units = EnumerateUnits(test, categories);
  auto [train_pairs, test_pairs] = RunStage("auxgen", [&] {
    if (!enabled("auxgen")) {
      return std::make_pair(ReadPairs(out / "train_pairs.jsonl"), ReadPairs(out / "test_pairs.jsonl"));
    }
    auto build = [&](const Dataset& d, const std::vector<ClassificationUnit>& units,
                     const char* file) {
      auto pairs = BuildPairs(d, units, ConstructAll(d, units, seeds, vectors, config.auxgen));
      WritePairs(out / file, pairs);
      return pairs;
    };
    return std::make_pair(build(train, train_units, "train_pairs.jsonl"),
                          build(test, test_units, "test_pairs.jsonl"));
  });

  const std::vector<Prediction> predictions = RunStage("surrogate", [&] {
    if (config.predictions_file) return ReadPredictions(*config.predictions_file);
    if (!enabled("surrogate")) return ReadPredictions(out / "predictions.jsonl");
    const SurrogateModel model = TrainSurrogate(train_pairs, config.task, config.surrogate, &diag);
    model.Save(out / "surrogate_model.json");
    std::vector<Prediction> preds = PredictSurrogate(model, test_pairs);
    WritePredictions(out / "predictions.jsonl", preds);
    return preds;
  });

  result.report = RunStage("score", [&] {
    ReportOptions options;
    options.strict_detection_only = config.strict_detection_only;
    MetricsReport report = ComputeReport(config.task, predictions, test_units, options);
    if (enabled("score")) WriteReport(out / "report.json", out / "report.txt", report);
    return report;
  });
  return result;
}

}  // namespace asc
