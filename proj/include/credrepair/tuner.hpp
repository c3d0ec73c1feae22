#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "credrepair/experiment.hpp"

namespace credrepair {

struct GridParam {
  std::string name;
  std::vector<double> values;
};

// Default search grids: learning rate, Lasso strength, dropout for the
// MLP; the Lasso penalty for the LR baselines.
std::vector<GridParam> default_mlp_grids();
std::vector<GridParam> default_lr_grids();

struct TuneTrial {
  int cycle = 0;
  std::string param;
  double value = 0.0;
  double dev_metric = 0.0;
  bool accepted = false;
};

struct TuneResult {
  std::map<std::string, double> best;
  double best_metric = 0.0;
  std::vector<TuneTrial> log;
};

using ObjectiveFn = std::function<double(const std::map<std::string, double>&)>;

// Coordinate descent over the grids: one hyperparameter at a time in grid
// order, keeping strictly improving values, stopping after a full cycle
// without improvement or max_cycles. Higher metric is better. Never
// returns a config worse on dev than the initial one.
TuneResult coordinate_descent(const std::vector<GridParam>& grids,
                              const ObjectiveFn& objective,
                              std::map<std::string, double> initial, int max_cycles = 3);

void write_tune_log(const std::vector<TuneTrial>& log, const std::filesystem::path& path);

// Dev metric used for model selection.
enum class TuneMetric { kCredF1, kRepairMrr, kRepairMacroF1 };
TuneMetric tune_metric_from_string(const std::string& s);
double metric_value(const SplitReport& report, TuneMetric metric);

// Tunes one model's hyperparameters on the dev split.
TuneResult tune_model(const CorpusBundle& bundle, const PipelineConfig& pipeline,
                      ModelKind kind, const TrainSettings& settings, std::uint64_t seed,
                      TuneMetric metric, int max_cycles = 3);

// Applies a tuned config map onto TrainSettings.
TrainSettings apply_config(TrainSettings settings, ModelKind kind,
                           const std::map<std::string, double>& config);

struct AblationRow {
  std::string model;
  std::string x_name;   // k | depth | mapping
  std::string x_value;  // "1".."10", "all", "1".."D", "expert"/"auto"
  std::string frame_filter;
  std::string seed;  // number or "mean"/"spread"
  std::string task;
  std::string metric;
  double value = 0.0;
};

void write_ablation_csv(const std::vector<AblationRow>& rows,
                        const std::filesystem::path& path);

// Sentence-count sweep: retrains per k with the same settings and seeds;
// k = kAllSentences means every relevant sentence.
std::vector<AblationRow> ablate_sentences(const CorpusBundle& bundle,
                                          PipelineConfig pipeline,
                                          const std::vector<int>& ks,
                                          FrameFilter frame_filter,
                                          const std::vector<ModelKind>& models,
                                          const TrainSettings& settings,
                                          const std::vector<std::uint64_t>& seeds);

// Depth sweep; depth > 2 switches the hidden activation to ReLU.
std::vector<AblationRow> ablate_depth(const CorpusBundle& bundle,
                                      const PipelineConfig& pipeline,
                                      const std::vector<int>& depths,
                                      const TrainSettings& settings,
                                      const std::vector<std::uint64_t>& seeds);

// Expert vs bag-of-words frame mapping, all-sentences and frames-only.
std::vector<AblationRow> ablate_mapping(const CorpusBundle& bundle,
                                        PipelineConfig pipeline,
                                        const TrainSettings& settings,
                                        const std::vector<std::uint64_t>& seeds);

}  // namespace credrepair
