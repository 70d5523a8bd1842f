// Command-line front end: one subcommand per pipeline stage plus `pipeline`.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "asc/auxgen.h"
#include "asc/dataset_io.h"
#include "asc/embeddings.h"
#include "asc/llda.h"
#include "asc/metrics.h"
#include "asc/pipeline.h"
#include "asc/stopwords.h"
#include "asc/surrogate.h"

namespace {

void PrintDiagnostics(const asc::Diagnostics& diag) {
  for (const std::string& d : diag) std::cerr << "warning: " << d << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Auxiliary-sentence construction and evaluation for aspect sentiment analysis"};
  app.require_subcommand(1);

  // ingest
  std::string in_format, in_input, in_split = "train", in_parses, in_out, in_task;
  auto* ingest = app.add_subcommand("ingest", "Convert SemEval XML / SentiHood JSON to JSON-lines");
  ingest->add_option("--format", in_format, "semeval | sentihood")->required();
  ingest->add_option("--input", in_input)->required();
  ingest->add_option("--split", in_split, "Split label stored on every review");
  ingest->add_option("--parses", in_parses, "CoNLL-U parses to attach");
  ingest->add_option("--out", in_out)->required();

  // seed-extract
  std::string se_input, se_out, se_split = "train", se_stopwords;
  int se_k = 10, se_iters = 500, se_min_df = 3;
  double se_eta = 0.01;
  std::optional<double> se_alpha;
  std::uint64_t se_seed = 1;
  auto* seed = app.add_subcommand("seed-extract", "Fit L-LDA and write per-aspect seed words");
  seed->add_option("--input", se_input, "Dataset JSON-lines")->required();
  seed->add_option("--k", se_k, "Seeds per aspect");
  seed->add_option("--alpha", se_alpha, "Document-topic prior (default 50/K)");
  seed->add_option("--eta", se_eta, "Topic-word prior");
  seed->add_option("--iters", se_iters, "Gibbs sweeps");
  seed->add_option("--seed", se_seed);
  seed->add_option("--min-doc-freq", se_min_df);
  seed->add_option("--stopwords", se_stopwords, "Stopword file (default: shipped list)");
  seed->add_option("--split", se_split, "Split to fit on; empty string uses every review");
  seed->add_option("--out", se_out)->required();

  // embed-train
  std::string et_input, et_out, et_split = "train";
  asc::SgnsConfig sgns;
  auto* embed = app.add_subcommand("embed-train", "Train skip-gram negative-sampling vectors");
  embed->add_option("--input", et_input, "Dataset JSON-lines")->required();
  embed->add_option("--dim", sgns.dim);
  embed->add_option("--window", sgns.window);
  embed->add_option("--neg", sgns.negatives);
  embed->add_option("--epochs", sgns.epochs);
  embed->add_option("--lr", sgns.learning_rate);
  embed->add_option("--min-count", sgns.min_count);
  embed->add_option("--subsample", sgns.subsample);
  embed->add_option("--seed", sgns.seed);
  embed->add_option("--threads", sgns.threads, "More than 1 is faster but not reproducible");
  embed->add_option("--split", et_split);
  embed->add_option("--out", et_out)->required();

  // auxgen
  std::string ag_dataset, ag_seeds, ag_vectors, ag_out, ag_task;
  std::optional<double> ag_threshold;
  int ag_seeds_per_aspect = 10;
  bool ag_no_modifiers = false;
  auto* aux = app.add_subcommand("auxgen", "Construct auxiliary sentences and emit sentence pairs");
  aux->add_option("--dataset", ag_dataset)->required();
  aux->add_option("--seeds", ag_seeds)->required();
  aux->add_option("--vectors", ag_vectors)->required();
  aux->add_option("--threshold", ag_threshold, "Similarity floor (default 0.3 ABSA, 0.4 TABSA)");
  aux->add_option("--seeds-per-aspect", ag_seeds_per_aspect);
  aux->add_option("--task", ag_task, "absa | tabsa (default: inferred from the dataset)");
  aux->add_flag("--no-modifiers", ag_no_modifiers, "Skip the dependency rules");
  aux->add_option("--out", ag_out)->required();

  // surrogate
  std::string su_train, su_test, su_out, su_task, su_model;
  asc::SurrogateConfig su;
  bool su_no_aux = false;
  auto* sur = app.add_subcommand("surrogate", "Train the logistic-regression surrogate and predict");
  sur->add_option("--train", su_train, "Training pairs")->required();
  sur->add_option("--test", su_test, "Pairs to predict")->required();
  sur->add_option("--task", su_task)->required();
  sur->add_option("--epochs", su.epochs);
  sur->add_option("--batch", su.batch_size);
  sur->add_option("--lr", su.learning_rate);
  sur->add_option("--l2", su.l2);
  sur->add_option("--seed", su.seed);
  sur->add_flag("--no-auxiliary", su_no_aux, "Use the aspect name instead of the auxiliary text");
  sur->add_option("--model-out", su_model);
  sur->add_option("--out", su_out, "Prediction JSON-lines")->required();

  // score
  std::string sc_preds, sc_gold, sc_task, sc_json, sc_txt;
  bool sc_detection_only = false;
  auto* score = app.add_subcommand("score", "Score predictions against gold units");
  score->add_option("--preds", sc_preds)->required();
  score->add_option("--gold", sc_gold, "Unit or pair JSON-lines")->required();
  score->add_option("--task", sc_task)->required();
  score->add_flag("--detection-only", sc_detection_only, "Strict accuracy ignores polarity");
  score->add_option("--report-json", sc_json);
  score->add_option("--report-txt", sc_txt);

  // pipeline
  std::string pl_config, pl_out_dir;
  auto* pipe = app.add_subcommand("pipeline", "Run every stage from a config file");
  pipe->add_option("--config", pl_config)->required();
  pipe->add_option("--out-dir", pl_out_dir, "Overrides out_dir from the config");

  CLI11_PARSE(app, argc, argv);

  asc::Diagnostics diag;
  try {
    if (*ingest) {
      const asc::InputFormat format = asc::ParseInputFormat(in_format);
      if (format == asc::InputFormat::kJsonl) throw asc::ConfigError("ingest reads semeval or sentihood");
      const asc::Task task = format == asc::InputFormat::kSemEval ? asc::Task::kAbsa : asc::Task::kTabsa;
      std::optional<std::filesystem::path> parses;
      if (!in_parses.empty()) parses = in_parses;
      const asc::Dataset d = asc::LoadInput(in_input, format, task, in_split, parses, &diag);
      asc::WriteDatasetJsonl(in_out, d);
      std::cout << d.reviews.size() << " reviews written to " << in_out << '\n';
    } else if (*seed) {
      const asc::Dataset d = asc::ReadDatasetJsonl(se_input).Filter(se_split);
      const std::set<std::string> stopwords =
          se_stopwords.empty() ? asc::DefaultStopwords() : asc::LoadStopwords(se_stopwords);
      asc::SeedExtraction options;
      options.llda.alpha = se_alpha;
      options.llda.eta = se_eta;
      options.llda.iterations = se_iters;
      options.llda.seed = se_seed;
      options.seeds.k = se_k;
      options.seeds.min_doc_freq = se_min_df;
      options.seeds.stopwords = &stopwords;
      const asc::SeedTable table =
          asc::ExtractSeeds(d, asc::TaskCategories(d.task), options, &diag);
      asc::WriteSeeds(se_out, table);
      for (const auto& [aspect, list] : table) {
        std::cout << aspect << ':';
        for (const auto& [token, s] : list.seeds) std::cout << ' ' << token;
        std::cout << '\n';
      }
    } else if (*embed) {
      const asc::Dataset d = asc::ReadDatasetJsonl(et_input).Filter(et_split);
      const asc::EmbeddingMatrix m = asc::TrainSgns(asc::SentencesFromDataset(d), sgns);
      asc::SaveVectors(et_out, m);
      std::cout << m.size() << " x " << m.dim() << " vectors written to " << et_out << '\n';
    } else if (*aux) {
      std::optional<asc::Task> task;
      if (!ag_task.empty()) task = asc::ParseTask(ag_task);
      const asc::Dataset d = asc::ReadDatasetJsonl(ag_dataset, task);
      asc::AuxGenConfig config = asc::AuxGenConfig::ForTask(d.task);
      if (ag_threshold) config.threshold = *ag_threshold;
      config.seeds_per_aspect = ag_seeds_per_aspect;
      config.include_modifiers = !ag_no_modifiers;
      const auto units = asc::EnumerateUnits(d, asc::TaskCategories(d.task));
      const auto sentences = asc::ConstructAll(d, units, asc::ReadSeeds(ag_seeds),
                                               asc::LoadVectors(ag_vectors), config);
      const std::size_t n = asc::EmitPairs(d, units, sentences, ag_out);
      std::cout << n << " pairs written to " << ag_out << '\n';
    } else if (*sur) {
      su.use_auxiliary = !su_no_aux;
      const asc::Task task = asc::ParseTask(su_task);
      const asc::SurrogateModel model =
          asc::TrainSurrogate(asc::ReadPairs(su_train), task, su, &diag);
      if (!su_model.empty()) model.Save(su_model);
      const auto preds = asc::PredictSurrogate(model, asc::ReadPairs(su_test));
      asc::WritePredictions(su_out, preds);
      std::cout << preds.size() << " predictions written to " << su_out << '\n';
    } else if (*score) {
      asc::ReportOptions options;
      options.strict_detection_only = sc_detection_only;
      const asc::MetricsReport report =
          asc::ComputeReport(asc::ParseTask(sc_task), asc::ReadPredictions(sc_preds),
                             asc::ReadUnitsJsonl(sc_gold), options);
      if (!sc_json.empty() || !sc_txt.empty()) {
        asc::WriteReport(sc_json.empty() ? "/dev/null" : sc_json,
                         sc_txt.empty() ? "/dev/null" : sc_txt, report);
      }
      std::cout << asc::ReportTable(report);
    } else if (*pipe) {
      asc::PipelineConfig config = asc::LoadPipelineConfig(pl_config);
      if (!pl_out_dir.empty()) config.out_dir = pl_out_dir;
      const asc::PipelineResult result = asc::RunPipeline(config);
      diag = result.diagnostics;
      std::cout << asc::ReportTable(result.report);
    }
  } catch (const std::exception& e) {
    PrintDiagnostics(diag);
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  PrintDiagnostics(diag);
  return 0;
}
