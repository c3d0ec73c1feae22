#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "credrepair/baselines.hpp"
#include "credrepair/catalog.hpp"
#include "credrepair/corpus.hpp"
#include "credrepair/eval.hpp"
#include "credrepair/features.hpp"
#include "credrepair/mlp.hpp"
#include "credrepair/relevance.hpp"
#include "credrepair/synth.hpp"

namespace credrepair {

enum class ModelKind { kMlp, kLrCount, kLrBinary, kLrSum, kLrAvg, kLrTfidf };

ModelKind model_kind_from_string(const std::string& s);
std::string to_string(ModelKind kind);
const std::vector<ModelKind>& all_model_kinds();

// Everything loaded from disk (or generated); immutable during a run.
struct CorpusBundle {
  RelationCatalog catalog;
  std::vector<Fact> facts;  // positives
  DocumentStore documents;
  EmbeddingTable embeddings;
  AliasDb aliases;
  ParaphraseTable paraphrases;
  // Candidate frames for the automatic mapping; the catalog's own expert
  // frames when empty.
  std::vector<FrameDef> frame_inventory;
};

struct DataPaths {
  std::filesystem::path catalog;
  std::filesystem::path facts;
  std::filesystem::path documents;
  std::filesystem::path embeddings;
  std::filesystem::path aliases;      // optional
  std::filesystem::path paraphrases;  // optional
  std::filesystem::path frames;       // optional inventory for auto mapping
};

CorpusBundle load_bundle(const DataPaths& paths);
CorpusBundle from_synthetic(SyntheticCorpus corpus);

struct PipelineConfig {
  int max_sentences = kAllSentences;
  FrameMode frame_mode = FrameMode::kExpert;
  FrameFilter frame_filter = FrameFilter::kAllRelevant;
  std::array<double, 3> fractions{0.7, 0.15, 0.15};
  int auto_min_overlap = 1;
};

struct PreparedInstance {
  Fact fact;
  std::vector<RelevantSentence> sentences;
  FeatureVector features;
  int cred_label = 0;
  int repair_label = 0;
};

struct PreparedSplit {
  std::vector<PreparedInstance> pos;
  std::vector<PreparedInstance> neg;
};

struct PreparedData {
  PreparedSplit train;
  PreparedSplit dev;
  PreparedSplit test;
  RelationCatalog catalog;  // with auto frames applied when relevant
  // Sampled faux facts per split before relevance filtering, for export.
  std::vector<Fact> raw_negatives_train;
  std::vector<Fact> raw_negatives_dev;
  std::vector<Fact> raw_negatives_test;
};

// The catalog the pipeline actually matches against: under auto frame
// mode, relations get their bag-of-words frame mapping computed (unless
// the catalog already carries one).
RelationCatalog effective_catalog(const CorpusBundle& bundle, const PipelineConfig& cfg);

// Full data flow: relevance filter -> split -> negative sampling ->
// sentence selection -> feature extraction. Facts with no usable
// provenance are excluded, mirroring corpus construction. All randomness
// comes from labeled substreams of `seed`.
PreparedData prepare_data(const CorpusBundle& bundle, const PipelineConfig& cfg,
                          std::uint64_t seed);

struct TrainSettings {
  TrainConfig mlp;        // lr/momentum/decay/epochs/batch/l1/dropout
  int hidden_layers = 2;
  double lr_penalty = 1.0;  // L1 penalty for the LR baselines
  bool append_flags = false;
};

struct BaselineModel {
  FeaturizerKind kind = FeaturizerKind::kBowBinary;
  bool append_flags = false;
  Vocabulary vocab;  // empty for w2v kinds
  LrModel cred;
  LrModel repair;
};

struct TrainedModel {
  ModelKind kind = ModelKind::kMlp;
  MlpModel mlp;            // valid when kind == kMlp
  BaselineModel baseline;  // otherwise
  std::vector<double> loss_trace;  // per-epoch mean loss (MLP only)
};

TrainedModel train_model(ModelKind kind, const PreparedSplit& train,
                         const CorpusBundle& bundle, const TrainSettings& settings,
                         std::uint64_t seed);

struct Scores {
  double credibility = 0.0;
  std::vector<double> repair;
};

Scores score_instance(const TrainedModel& model, const PreparedInstance& inst,
                      const CorpusBundle& bundle);

struct SplitReport {
  CredReport cred;
  RepairReport repair;
  long n_pos = 0;
  long n_neg = 0;
};

SplitReport evaluate_split(const TrainedModel& model, const PreparedSplit& split,
                           const CorpusBundle& bundle, const RelationCatalog& catalog);

// Dispatches on the file's magic.
void save_trained(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_trained(const std::filesystem::path& path);

// Throws when the model's repair head does not cover the catalog classes.
void check_model_matches_catalog(const TrainedModel& model, const RelationCatalog& catalog);

struct RunOutput {
  SplitReport dev;
  SplitReport test;
  TrainedModel model;
};

RunOutput run_single(const CorpusBundle& bundle, const PipelineConfig& pipeline,
                     ModelKind kind, const TrainSettings& settings, std::uint64_t seed);

// One metric row of a results CSV.
struct MetricRow {
  std::string model;
  std::string task;    // credibility | repair
  std::string metric;  // f1, precision, recall, macro_f1, micro_f1, mrr, ...
  std::string seed;    // number, or "mean"/"spread" aggregate rows
  double value = 0.0;
};

std::vector<MetricRow> report_rows(const std::string& model, const SplitReport& report,
                                   std::uint64_t seed);

// Appends mean and spread (max - min) rows per (model, task, metric).
void append_aggregates(std::vector<MetricRow>& rows);

void write_metric_csv(const std::vector<MetricRow>& rows,
                      const std::filesystem::path& path);

void write_loss_trace(const std::vector<double>& epoch_loss,
                      const std::filesystem::path& path);

struct ExperimentConfig {
  DataPaths data;
  PipelineConfig pipeline;
  TrainSettings train;
  std::vector<ModelKind> models{ModelKind::kMlp};
  std::vector<std::uint64_t> seeds{17};
  std::filesystem::path out_dir = "runs/default";
  // Coordinate-descent cycles for per-model dev selection before the
  // final train/report; 0 trains at the configured settings directly.
  int tune_cycles = 0;
};

// Trains every configured model for every seed (optionally selecting
// hyperparameters on dev first), evaluates on test, writes results.csv
// (per-seed rows + mean/spread) and summary.txt.
std::vector<MetricRow> run_experiment(const ExperimentConfig& config,
                                      const CorpusBundle& bundle);

std::string format_double(double v);

}  // namespace credrepair
