#include "credrepair/tuner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <tuple>

#include "credrepair/error.hpp"

namespace credrepair {

std::vector<GridParam> default_mlp_grids() {
  return {{"lr", {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}},
          {"l1", {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}},
          {"dropout", {0.2, 0.3, 0.4, 0.5}}};
}

std::vector<GridParam> default_lr_grids() {
  return {{"penalty", {0.01, 0.1, 1.0, 10.0, 100.0}}};
}

TuneResult coordinate_descent(const std::vector<GridParam>& grids,
                              const ObjectiveFn& objective,
                              std::map<std::string, double> initial, int max_cycles) {
  if (grids.empty()) throw ValidationError("coordinate descent needs nonempty grids");
  for (const auto& grid : grids) {
    if (grid.values.empty()) {
      throw ValidationError("grid for '" + grid.name + "' is empty");
    }
    if (!initial.count(grid.name)) initial[grid.name] = grid.values.front();
  }

  auto evaluate = [&](const std::map<std::string, double>& config) {
    try {
      return objective(config);
    } catch (const std::exception& e) {
      std::string desc;
      for (const auto& [k, v] : config) {
        desc += (desc.empty() ? "" : ", ") + k + "=" + format_double(v);
      }
      throw std::runtime_error(std::string("trial failed at {") + desc + "}: " + e.what());
    }
  };

  TuneResult result;
  result.best = initial;
  result.best_metric = evaluate(initial);
  result.log.push_back({0, "initial", 0.0, result.best_metric, true});

  for (int cycle = 1; cycle <= max_cycles; ++cycle) {
    bool improved = false;
    for (const auto& grid : grids) {
      for (double value : grid.values) {
        if (value == result.best.at(grid.name)) continue;
        std::map<std::string, double> candidate = result.best;
        candidate[grid.name] = value;
        double metric = evaluate(candidate);
        bool accepted = metric > result.best_metric;  // strictly better only
        result.log.push_back({cycle, grid.name, value, metric, accepted});
        if (accepted) {
          result.best = std::move(candidate);
          result.best_metric = metric;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return result;
}

void write_tune_log(const std::vector<TuneTrial>& log, const std::filesystem::path& path) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "cycle,param,value,dev_metric,accepted\n";
  for (const auto& t : log) {
    out << t.cycle << "," << t.param << "," << format_double(t.value) << ","
        << format_double(t.dev_metric) << "," << (t.accepted ? 1 : 0) << "\n";
  }
}

TuneMetric tune_metric_from_string(const std::string& s) {
  if (s == "cred-f1") return TuneMetric::kCredF1;
  if (s == "repair-mrr") return TuneMetric::kRepairMrr;
  if (s == "repair-macro-f1") return TuneMetric::kRepairMacroF1;
  throw ValidationError("unknown tune metric '" + s +
                        "' (cred-f1|repair-mrr|repair-macro-f1)");
}

double metric_value(const SplitReport& report, TuneMetric metric) {
  switch (metric) {
    case TuneMetric::kCredF1: return report.cred.f1;
    case TuneMetric::kRepairMrr: return report.repair.mrr;
    case TuneMetric::kRepairMacroF1: return report.repair.macro_f1;
  }
  return 0.0;
}

TrainSettings apply_config(TrainSettings settings, ModelKind kind,
                           const std::map<std::string, double>& config) {
  for (const auto& [name, value] : config) {
    if (name == "lr") {
      settings.mlp.lr = value;
    } else if (name == "l1") {
      settings.mlp.l1_lambda = value;
    } else if (name == "dropout") {
      settings.mlp.dropout = value;
    } else if (name == "penalty") {
      settings.lr_penalty = value;
    } else if (name != "initial") {
      throw ValidationError("unknown hyperparameter '" + name + "' for model " +
                            to_string(kind));
    }
  }
  return settings;
}

TuneResult tune_model(const CorpusBundle& bundle, const PipelineConfig& pipeline,
                      ModelKind kind, const TrainSettings& settings, std::uint64_t seed,
                      TuneMetric metric, int max_cycles) {
  std::vector<GridParam> grids =
      kind == ModelKind::kMlp ? default_mlp_grids() : default_lr_grids();
  std::map<std::string, double> initial;
  if (kind == ModelKind::kMlp) {
    initial["lr"] = settings.mlp.lr;
    initial["l1"] = settings.mlp.l1_lambda;
    initial["dropout"] = settings.mlp.dropout;
  } else {
    initial["penalty"] = settings.lr_penalty;
  }
  // Data preparation is deterministic in (pipeline, seed); prepare once.
  PreparedData data = prepare_data(bundle, pipeline, seed);
  ObjectiveFn objective = [&](const std::map<std::string, double>& config) {
    TrainSettings trial = apply_config(settings, kind, config);
    TrainedModel model = train_model(kind, data.train, bundle, trial, seed);
    return metric_value(evaluate_split(model, data.dev, bundle, data.catalog), metric);
  };
  return coordinate_descent(grids, objective, std::move(initial), max_cycles);
}

namespace {

std::vector<AblationRow> rows_from_report(const std::string& model,
                                          const std::string& x_name,
                                          const std::string& x_value,
                                          const std::string& filter, std::uint64_t seed,
                                          const SplitReport& report) {
  std::vector<AblationRow> rows;
  const std::string s = std::to_string(seed);
  auto add = [&](const char* task, const char* metric, double value) {
    rows.push_back({model, x_name, x_value, filter, s, task, metric, value});
  };
  add("credibility", "f1", report.cred.f1);
  add("credibility", "precision", report.cred.precision);
  add("credibility", "recall", report.cred.recall);
  add("repair", "macro_f1", report.repair.macro_f1);
  add("repair", "micro_f1", report.repair.micro_f1);
  add("repair", "mrr", report.repair.mrr);
  return rows;
}

void append_ablation_aggregates(std::vector<AblationRow>& rows) {
  std::map<std::tuple<std::string, std::string, std::string, std::string, std::string,
                      std::string>,
           std::vector<double>>
      groups;
  for (const auto& row : rows) {
    if (row.seed == "mean" || row.seed == "spread") continue;
    groups[{row.model, row.x_name, row.x_value, row.frame_filter, row.task, row.metric}]
        .push_back(row.value);
  }
  for (const auto& [key, values] : groups) {
    const auto& [model, x_name, x_value, filter, task, metric] = key;
    double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                  static_cast<double>(values.size());
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    rows.push_back({model, x_name, x_value, filter, "mean", task, metric, mean});
    rows.push_back({model, x_name, x_value, filter, "spread", task, metric, *hi - *lo});
  }
}

}  // namespace

void write_ablation_csv(const std::vector<AblationRow>& rows,
                        const std::filesystem::path& path) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "model,x_name,x_value,frame_filter,seed,task,metric,value\n";
  for (const auto& row : rows) {
    out << row.model << "," << row.x_name << "," << row.x_value << "," << row.frame_filter
        << "," << row.seed << "," << row.task << "," << row.metric << ","
        << format_double(row.value) << "\n";
  }
}

std::vector<AblationRow> ablate_sentences(const CorpusBundle& bundle,
                                          PipelineConfig pipeline,
                                          const std::vector<int>& ks,
                                          FrameFilter frame_filter,
                                          const std::vector<ModelKind>& models,
                                          const TrainSettings& settings,
                                          const std::vector<std::uint64_t>& seeds) {
  pipeline.frame_filter = frame_filter;
  std::vector<AblationRow> rows;
  for (int k : ks) {
    pipeline.max_sentences = k;
    std::string k_label = k == kAllSentences ? "all" : std::to_string(k);
    for (ModelKind kind : models) {
      for (std::uint64_t seed : seeds) {
        RunOutput out = run_single(bundle, pipeline, kind, settings, seed);
        auto batch = rows_from_report(to_string(kind), "k", k_label,
                                      to_string(frame_filter), seed, out.test);
        rows.insert(rows.end(), batch.begin(), batch.end());
      }
    }
  }
  append_ablation_aggregates(rows);
  return rows;
}

std::vector<AblationRow> ablate_depth(const CorpusBundle& bundle,
                                      const PipelineConfig& pipeline,
                                      const std::vector<int>& depths,
                                      const TrainSettings& settings,
                                      const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ValidationError("depth ablation needs at least one seed");
  // Data stays fixed across the sweep; the seeds vary only the random
  // initialization (and dropout/batch order) of each training run.
  PreparedData data = prepare_data(bundle, pipeline, seeds.front());
  std::vector<AblationRow> rows;
  for (int depth : depths) {
    TrainSettings trial = settings;
    trial.hidden_layers = depth;
    for (std::uint64_t seed : seeds) {
      TrainedModel model = train_model(ModelKind::kMlp, data.train, bundle, trial, seed);
      SplitReport report = evaluate_split(model, data.test, bundle, data.catalog);
      auto batch = rows_from_report("mlp", "depth", std::to_string(depth),
                                    to_string(pipeline.frame_filter), seed, report);
      rows.insert(rows.end(), batch.begin(), batch.end());
    }
  }
  append_ablation_aggregates(rows);
  return rows;
}

std::vector<AblationRow> ablate_mapping(const CorpusBundle& bundle,
                                        PipelineConfig pipeline,
                                        const TrainSettings& settings,
                                        const std::vector<std::uint64_t>& seeds) {
  std::vector<AblationRow> rows;
  for (FrameMode mode : {FrameMode::kExpert, FrameMode::kAuto}) {
    for (FrameFilter filter : {FrameFilter::kAllRelevant, FrameFilter::kFramesOnly}) {
      pipeline.frame_mode = mode;
      pipeline.frame_filter = filter;
      for (std::uint64_t seed : seeds) {
        RunOutput out = run_single(bundle, pipeline, ModelKind::kMlp, settings, seed);
        auto batch = rows_from_report("mlp", "mapping", to_string(mode), to_string(filter),
                                      seed, out.test);
        rows.insert(rows.end(), batch.begin(), batch.end());
      }
    }
  }
  append_ablation_aggregates(rows);
  return rows;
}

}  // namespace credrepair
