// credrepair: fact credibility classification and relation repair over
// knowledge-graph triples with textual provenance.
//
// Every command takes --seed; identical invocations produce byte-identical
// outputs. Exit codes: 0 ok, 1 usage, 2 data validation, 3 runtime.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "credrepair/error.hpp"
#include "credrepair/experiment.hpp"
#include "credrepair/synth.hpp"
#include "credrepair/tuner.hpp"

namespace {

using namespace credrepair;
using nlohmann::json;

struct CliConfig {
  DataPaths data;
  PipelineConfig pipeline;
  TrainSettings train;
  std::vector<ModelKind> models{ModelKind::kMlp};
  std::vector<std::uint64_t> seeds{17};
  std::filesystem::path out_dir = "runs/default";
  int tune_cycles = 0;
};

int parse_k(const std::string& s) {
  if (s == "all" || s == "ALL") return kAllSentences;
  int k = std::stoi(s);
  if (k < 1) throw ValidationError("sentence count must be >= 1 or 'all'");
  return k;
}

CliConfig load_config(const std::filesystem::path& path) {
  CliConfig cfg;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (doc.contains("data")) {
    const auto& d = doc["data"];
    cfg.data.catalog = d.value("catalog", std::string{});
    cfg.data.facts = d.value("facts", std::string{});
    cfg.data.documents = d.value("documents", std::string{});
    cfg.data.embeddings = d.value("embeddings", std::string{});
    cfg.data.aliases = d.value("aliases", std::string{});
    cfg.data.paraphrases = d.value("paraphrases", std::string{});
    cfg.data.frames = d.value("frames", std::string{});
  }
  if (doc.contains("pipeline")) {
    const auto& p = doc["pipeline"];
    if (p.contains("max_sentences")) {
      if (p["max_sentences"].is_string()) {
        cfg.pipeline.max_sentences = parse_k(p["max_sentences"].get<std::string>());
      } else {
        cfg.pipeline.max_sentences = p["max_sentences"].get<int>();
      }
    }
    if (p.contains("frame_mode")) {
      cfg.pipeline.frame_mode = frame_mode_from_string(p["frame_mode"].get<std::string>());
    }
    if (p.contains("frame_filter")) {
      cfg.pipeline.frame_filter =
          frame_filter_from_string(p["frame_filter"].get<std::string>());
    }
    if (p.contains("fractions")) {
      auto f = p["fractions"].get<std::vector<double>>();
      if (f.size() != 3) throw ValidationError("fractions must have 3 entries");
      cfg.pipeline.fractions = {f[0], f[1], f[2]};
    }
    if (p.contains("auto_min_overlap")) {
      cfg.pipeline.auto_min_overlap = p["auto_min_overlap"].get<int>();
    }
  }
  if (doc.contains("train")) {
    const auto& t = doc["train"];
    cfg.train.mlp.lr = t.value("lr", cfg.train.mlp.lr);
    cfg.train.mlp.momentum = t.value("momentum", cfg.train.mlp.momentum);
    cfg.train.mlp.decay = t.value("decay", cfg.train.mlp.decay);
    cfg.train.mlp.epochs = t.value("epochs", cfg.train.mlp.epochs);
    cfg.train.mlp.batch_size = t.value("batch_size", cfg.train.mlp.batch_size);
    cfg.train.mlp.l1_lambda = t.value("l1", cfg.train.mlp.l1_lambda);
    cfg.train.mlp.dropout = t.value("dropout", cfg.train.mlp.dropout);
    if (t.contains("loss_weights")) {
      auto w = t["loss_weights"].get<std::vector<double>>();
      if (w.size() != 2) throw ValidationError("loss_weights must have 2 entries");
      cfg.train.mlp.loss_weights = {w[0], w[1]};
    }
    cfg.train.hidden_layers = t.value("hidden_layers", cfg.train.hidden_layers);
    cfg.train.lr_penalty = t.value("penalty", cfg.train.lr_penalty);
    cfg.train.append_flags = t.value("append_flags", cfg.train.append_flags);
  }
  if (doc.contains("models")) {
    cfg.models.clear();
    for (const auto& m : doc["models"]) {
      cfg.models.push_back(model_kind_from_string(m.get<std::string>()));
    }
  }
  if (doc.contains("seeds")) {
    cfg.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
  }
  if (doc.contains("out")) cfg.out_dir = doc["out"].get<std::string>();
  cfg.tune_cycles = doc.value("tune_cycles", cfg.tune_cycles);
  return cfg;
}

// Shared flags; values set on the command line override the config file.
struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> catalog, facts, documents, embeddings, aliases, paraphrases,
      frames;
  std::optional<std::string> k, frame_mode, frame_filter;
  std::optional<double> lr, l1, dropout, penalty;
  std::optional<int> epochs, batch_size, hidden_layers;
  std::optional<std::string> out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config JSON");
    cmd->add_option("--seed", seed, "master seed (fans out to all substreams)");
    cmd->add_option("--catalog", catalog, "relation catalog JSON");
    cmd->add_option("--facts", facts, "facts JSONL");
    cmd->add_option("--documents", documents, "documents JSONL");
    cmd->add_option("--embeddings", embeddings, "embeddings text file");
    cmd->add_option("--aliases", aliases, "alias TSV");
    cmd->add_option("--paraphrases", paraphrases, "paraphrase TSV");
    cmd->add_option("--frames", frames, "frame inventory JSON for auto mapping");
    cmd->add_option("--k", k, "sentences per fact (1,2,... or 'all')");
    cmd->add_option("--frame-mode", frame_mode, "expert|auto|off");
    cmd->add_option("--frame-filter", frame_filter, "all_relevant|frames_only|no_frames");
    cmd->add_option("--lr", lr, "MLP learning rate");
    cmd->add_option("--l1", l1, "MLP Lasso strength");
    cmd->add_option("--dropout", dropout, "MLP dropout rate");
    cmd->add_option("--penalty", penalty, "LR baseline L1 penalty");
    cmd->add_option("--epochs", epochs, "training epochs");
    cmd->add_option("--batch-size", batch_size, "balanced batch size (even)");
    cmd->add_option("--hidden-layers", hidden_layers, "MLP depth");
    cmd->add_option("--out", out, "output directory");
  }

  CliConfig resolve() const {
    CliConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed) cfg.seeds = {*seed};
    if (catalog) cfg.data.catalog = *catalog;
    if (facts) cfg.data.facts = *facts;
    if (documents) cfg.data.documents = *documents;
    if (embeddings) cfg.data.embeddings = *embeddings;
    if (aliases) cfg.data.aliases = *aliases;
    if (paraphrases) cfg.data.paraphrases = *paraphrases;
    if (frames) cfg.data.frames = *frames;
    if (k) cfg.pipeline.max_sentences = parse_k(*k);
    if (frame_mode) cfg.pipeline.frame_mode = frame_mode_from_string(*frame_mode);
    if (frame_filter) cfg.pipeline.frame_filter = frame_filter_from_string(*frame_filter);
    if (lr) cfg.train.mlp.lr = *lr;
    if (l1) cfg.train.mlp.l1_lambda = *l1;
    if (dropout) cfg.train.mlp.dropout = *dropout;
    if (penalty) cfg.train.lr_penalty = *penalty;
    if (epochs) cfg.train.mlp.epochs = *epochs;
    if (batch_size) cfg.train.mlp.batch_size = *batch_size;
    if (hidden_layers) cfg.train.hidden_layers = *hidden_layers;
    if (out) cfg.out_dir = *out;
    return cfg;
  }
};

CorpusBundle load_data(const CliConfig& cfg) {
  if (cfg.data.catalog.empty() || cfg.data.facts.empty() || cfg.data.documents.empty() ||
      cfg.data.embeddings.empty()) {
    throw ValidationError(
        "missing data paths; set --catalog/--facts/--documents/--embeddings or a config");
  }
  return load_bundle(cfg.data);
}

void cmd_ingest(const CliConfig& cfg, const std::string& dump_flags,
                const std::string& dump_features) {
  CorpusBundle bundle = load_data(cfg);
  std::map<std::string, long> relation_counts;
  for (const auto& fact : bundle.facts) ++relation_counts[fact.relation];

  std::cout << "facts: " << bundle.facts.size() << "\n";
  std::cout << "documents: " << bundle.documents.size() << "\n";
  std::cout << "relations: " << bundle.catalog.num_real_relations() << " (+"
            << kCannotRepair << ")\n";
  std::cout << "embedding vocab: " << bundle.embeddings.vocab_size()
            << " dim: " << bundle.embeddings.dimension() << "\n";
  std::cout << "aliases: " << bundle.aliases.size()
            << ", paraphrases: " << bundle.paraphrases.size() << "\n";
  for (const auto& [rel, count] : relation_counts) {
    std::cout << "  " << rel << ": " << count << "\n";
  }

  if (!dump_flags.empty() || !dump_features.empty()) {
    RelationCatalog catalog = effective_catalog(bundle, cfg.pipeline);
    long usable = 0;
    std::ofstream flags_out;
    if (!dump_flags.empty()) {
      flags_out.open(dump_flags);
      if (!flags_out) throw IoError("cannot write " + dump_flags);
      flags_out << "fact_index,relevant_sentences,subject_match,subject_alias,object_match,"
                   "object_alias,object_paraphrase,predicate_alias,frame_trigger\n";
    }
    std::vector<CachedFeatures> cache;
    for (std::size_t i = 0; i < bundle.facts.size(); ++i) {
      const Fact& fact = bundle.facts[i];
      const Document* doc = bundle.documents.find(fact.doc_id);
      if (!doc) throw ValidationError("fact references unknown doc_id '" + fact.doc_id + "'");
      auto relevant = relevant_sentences(*doc, fact, bundle.aliases, bundle.paraphrases,
                                         catalog, cfg.pipeline.frame_mode);
      if (!relevant.empty()) ++usable;
      if (flags_out.is_open()) {
        long counts[kNumRelevanceFlags] = {0};
        for (const auto& s : relevant) {
          auto f = s.flags.as_array();
          for (int j = 0; j < kNumRelevanceFlags; ++j) counts[j] += f[j] ? 1 : 0;
        }
        flags_out << i << "," << relevant.size();
        for (int j = 0; j < kNumRelevanceFlags; ++j) flags_out << "," << counts[j];
        flags_out << "\n";
      }
      if (!dump_features.empty() && !relevant.empty()) {
        cache.push_back({std::to_string(i), build_features(fact, relevant, bundle.embeddings)});
      }
    }
    if (!dump_features.empty()) {
      write_feature_cache(cache, bundle.embeddings.dimension(), dump_features);
    }
    std::cout << "facts with >=1 relevant sentence: " << usable << "\n";
  }
}

void cmd_gen_synth(const SynthConfig& synth, const std::string& out_dir) {
  SyntheticCorpus corpus = gen_synthetic(synth);
  save_synthetic(corpus, out_dir);
  std::cout << "wrote synthetic corpus (" << corpus.facts.size() << " facts, "
            << corpus.documents.size() << " documents) to " << out_dir << "\n";
}

void cmd_sample_negatives(const CliConfig& cfg, const std::string& out_prefix) {
  CorpusBundle bundle = load_data(cfg);
  std::uint64_t seed = cfg.seeds.front();
  PreparedData data = prepare_data(bundle, cfg.pipeline, seed);
  save_facts(data.raw_negatives_train, out_prefix + ".train.jsonl");
  save_facts(data.raw_negatives_dev, out_prefix + ".dev.jsonl");
  save_facts(data.raw_negatives_test, out_prefix + ".test.jsonl");
  std::cout << "froze negatives: train=" << data.raw_negatives_train.size()
            << " dev=" << data.raw_negatives_dev.size()
            << " test=" << data.raw_negatives_test.size() << " (prefix " << out_prefix
            << ")\n";
}

void cmd_train(const CliConfig& cfg, const std::string& model_name,
               const std::string& model_out) {
  CorpusBundle bundle = load_data(cfg);
  ModelKind kind = model_kind_from_string(model_name);
  std::uint64_t seed = cfg.seeds.front();
  PreparedData data = prepare_data(bundle, cfg.pipeline, seed);
  TrainedModel model = train_model(kind, data.train, bundle, cfg.train, seed);
  std::filesystem::path out = model_out.empty()
                                  ? cfg.out_dir / (model_name + "_model.bin")
                                  : std::filesystem::path(model_out);
  if (!out.parent_path().empty()) std::filesystem::create_directories(out.parent_path());
  save_trained(model, out);
  if (kind == ModelKind::kMlp) {
    write_loss_trace(model.loss_trace, out.string() + ".loss.csv");
  }
  std::cout << "trained " << model_name << " on " << data.train.pos.size() << "+"
            << data.train.neg.size() << " instances; model written to " << out.string()
            << "\n";
}

void cmd_eval(const CliConfig& cfg, const std::string& model_file,
              const std::string& split_name, const std::string& report_out) {
  CorpusBundle bundle = load_data(cfg);
  TrainedModel model = load_trained(model_file);
  check_model_matches_catalog(model, bundle.catalog);
  std::uint64_t seed = cfg.seeds.front();
  PreparedData data = prepare_data(bundle, cfg.pipeline, seed);
  const PreparedSplit* split = nullptr;
  if (split_name == "train") {
    split = &data.train;
  } else if (split_name == "dev") {
    split = &data.dev;
  } else if (split_name == "test") {
    split = &data.test;
  } else {
    throw ValidationError("unknown split '" + split_name + "' (train|dev|test)");
  }
  SplitReport report = evaluate_split(model, *split, bundle, data.catalog);
  auto rows = report_rows(to_string(model.kind), report, seed);
  std::filesystem::path out = report_out.empty() ? cfg.out_dir / ("eval_" + split_name +
                                                                  ".csv")
                                                 : std::filesystem::path(report_out);
  write_metric_csv(rows, out);
  std::cout << "split=" << split_name << " pos=" << report.n_pos << " neg=" << report.n_neg
            << "\n";
  std::cout << "credibility: P=" << format_double(report.cred.precision)
            << " R=" << format_double(report.cred.recall)
            << " F1=" << format_double(report.cred.f1) << "\n";
  std::cout << "repair: macro_f1=" << format_double(report.repair.macro_f1)
            << " micro_f1=" << format_double(report.repair.micro_f1)
            << " mrr=" << format_double(report.repair.mrr);
  if (report.repair.cannot_repair_top1) {
    std::cout << " cannot_repair_top1=" << format_double(*report.repair.cannot_repair_top1);
  }
  std::cout << "\nreport written to " << out.string() << "\n";
}

void cmd_predict(const CliConfig& cfg, const std::string& model_file,
                 const std::string& facts_path, const std::string& out_path) {
  CorpusBundle bundle = load_data(cfg);
  TrainedModel model = load_trained(model_file);
  check_model_matches_catalog(model, bundle.catalog);
  std::vector<Fact> facts = load_facts(facts_path, bundle.catalog);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw IoError("cannot write " + out_path);
    out = &file;
  }
  RelationCatalog catalog = effective_catalog(bundle, cfg.pipeline);
  std::uint64_t seed = cfg.seeds.front();
  RngStream root(seed);
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const Fact& fact = facts[i];
    nlohmann::ordered_json j;
    j["subject"] = fact.subject;
    j["relation"] = fact.relation;
    j["object"] = fact.object;
    j["doc_id"] = fact.doc_id;
    const Document* doc = bundle.documents.find(fact.doc_id);
    if (!doc) throw ValidationError("fact references unknown doc_id '" + fact.doc_id + "'");
    auto sentences = select_sentences(*doc, fact, cfg.pipeline.max_sentences,
                                      root.substream("predict/" + std::to_string(i)),
                                      cfg.pipeline.frame_filter, bundle.aliases,
                                      bundle.paraphrases, catalog, cfg.pipeline.frame_mode);
    if (sentences.empty()) {
      j["skipped"] = "no_relevant_sentences";
      *out << j.dump() << "\n";
      continue;
    }
    PreparedInstance inst;
    inst.fact = fact;
    inst.features = build_features(fact, sentences, bundle.embeddings);
    inst.sentences = std::move(sentences);
    Scores scores = score_instance(model, inst, bundle);
    std::vector<int> ranking(scores.repair.size());
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(), [&](int a, int b) {
      if (scores.repair[a] != scores.repair[b]) return scores.repair[a] > scores.repair[b];
      return a < b;
    });
    bool credible = scores.credibility >= 0.5;
    j["credible"] = credible;
    j["credibility_score"] = scores.credibility;
    if (!credible) {
      int top = ranking.front();
      if (top == catalog.cannot_repair_index()) {
        j["unrepairable"] = true;
      } else {
        j["repair"] = catalog.relation(top).name;
      }
    }
    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (int idx : ranking) names.push_back(catalog.relation(idx).name);
    j["ranking"] = names;
    *out << j.dump() << "\n";
  }
}

void cmd_run(const CliConfig& cfg, int tune_cycles) {
  CorpusBundle bundle = load_data(cfg);
  ExperimentConfig exp;
  exp.data = cfg.data;
  exp.pipeline = cfg.pipeline;
  exp.train = cfg.train;
  exp.models = cfg.models;
  exp.seeds = cfg.seeds;
  exp.out_dir = cfg.out_dir;
  exp.tune_cycles = tune_cycles >= 0 ? tune_cycles : cfg.tune_cycles;
  run_experiment(exp, bundle);
  std::cout << "experiment results written to " << cfg.out_dir.string() << "\n";
}

void cmd_tune(const CliConfig& cfg, const std::string& model_name,
              const std::string& metric_name, int max_cycles) {
  CorpusBundle bundle = load_data(cfg);
  ModelKind kind = model_kind_from_string(model_name);
  TuneMetric metric = tune_metric_from_string(metric_name);
  std::uint64_t seed = cfg.seeds.front();
  TuneResult result = tune_model(bundle, cfg.pipeline, kind, cfg.train, seed, metric,
                                 max_cycles);
  std::filesystem::create_directories(cfg.out_dir);
  write_tune_log(result.log, cfg.out_dir / ("tune_" + model_name + ".csv"));
  std::cout << "best dev metric: " << format_double(result.best_metric) << "\n";
  for (const auto& [k2, v] : result.best) {
    std::cout << "  " << k2 << " = " << format_double(v) << "\n";
  }
  std::cout << "search log written to "
            << (cfg.out_dir / ("tune_" + model_name + ".csv")).string() << "\n";
}

std::vector<int> parse_ks(const std::string& spec) {
  std::vector<int> ks;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) ks.push_back(parse_k(item));
  }
  if (ks.empty()) throw ValidationError("empty k list");
  return ks;
}

void cmd_ablate(const CliConfig& cfg, const std::string& what, const std::string& ks_spec,
                int max_depth, const std::string& models_spec,
                const std::vector<std::uint64_t>& seeds) {
  CorpusBundle bundle = load_data(cfg);
  std::vector<std::uint64_t> use_seeds = seeds.empty() ? cfg.seeds : seeds;
  std::filesystem::create_directories(cfg.out_dir);
  std::vector<AblationRow> rows;
  std::filesystem::path out;
  if (what == "sentences") {
    std::vector<ModelKind> models;
    std::istringstream in(models_spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) models.push_back(model_kind_from_string(item));
    }
    if (models.empty()) models = {ModelKind::kMlp};
    rows = ablate_sentences(bundle, cfg.pipeline, parse_ks(ks_spec),
                            cfg.pipeline.frame_filter, models, cfg.train, use_seeds);
    out = cfg.out_dir / "ablate_sentences.csv";
  } else if (what == "depth") {
    std::vector<int> depths;
    for (int d = 1; d <= max_depth; ++d) depths.push_back(d);
    rows = ablate_depth(bundle, cfg.pipeline, depths, cfg.train, use_seeds);
    out = cfg.out_dir / "ablate_depth.csv";
  } else if (what == "mapping") {
    rows = ablate_mapping(bundle, cfg.pipeline, cfg.train, use_seeds);
    out = cfg.out_dir / "ablate_mapping.csv";
  } else {
    throw ValidationError("unknown ablation '" + what + "' (sentences|depth|mapping)");
  }
  write_ablation_csv(rows, out);
  std::cout << "ablation written to " << out.string() << " (" << rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fact credibility classification and relation repair"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* ingest = app.add_subcommand("ingest", "validate and index the corpus");
  common.attach(ingest);
  std::string dump_flags, dump_features;
  ingest->add_option("--dump-flags", dump_flags, "per-fact relevance flag counts CSV");
  ingest->add_option("--dump-features", dump_features, "binary feature cache output");

  auto* gen = app.add_subcommand("gen-synth", "generate a synthetic corpus");
  SynthConfig synth;
  std::string synth_out = "synth";
  gen->add_option("--relations", synth.num_relations, "number of relations");
  gen->add_option("--facts-per-relation", synth.facts_per_relation, "facts per relation");
  gen->add_option("--vocab", synth.vocab_size, "filler vocabulary size");
  gen->add_option("--signal", synth.signal_strength, "signal strength in [0,1]");
  gen->add_option("--seed", synth.seed, "generator seed");
  gen->add_option("--dim", synth.embedding_dim, "embedding dimension");
  gen->add_option("--out", synth_out, "output directory");

  auto* sample = app.add_subcommand("sample-negatives", "freeze faux facts per split");
  common.attach(sample);
  std::string neg_prefix = "negatives";
  sample->add_option("--out-prefix", neg_prefix, "output file prefix");

  auto* train_cmd = app.add_subcommand("train", "train one model and save it");
  common.attach(train_cmd);
  std::string train_model_name = "mlp";
  std::string model_out;
  train_cmd->add_option("--model", train_model_name,
                        "mlp|lr-count|lr-binary|lr-sum|lr-avg|lr-tfidf");
  train_cmd->add_option("--model-out", model_out, "model file path");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a saved model on a split");
  common.attach(eval_cmd);
  std::string eval_model_file, eval_split = "test", report_out;
  eval_cmd->add_option("--model-file", eval_model_file, "saved model")->required();
  eval_cmd->add_option("--split", eval_split, "train|dev|test");
  eval_cmd->add_option("--report-out", report_out, "report CSV path");

  auto* predict_cmd = app.add_subcommand("predict", "per-fact verdicts as JSONL");
  common.attach(predict_cmd);
  std::string predict_model_file, predict_facts, predict_out;
  predict_cmd->add_option("--model-file", predict_model_file, "saved model")->required();
  predict_cmd->add_option("--facts-in", predict_facts, "facts JSONL to score")->required();
  predict_cmd->add_option("--verdicts-out", predict_out, "output path (default stdout)");

  auto* run_cmd = app.add_subcommand("run", "train+evaluate all configured models/seeds");
  common.attach(run_cmd);
  int run_tune_cycles = -1;  // -1: defer to the config file
  run_cmd->add_option("--tune-cycles", run_tune_cycles,
                      "coordinate-descent cycles for dev selection (0 = off)");

  auto* tune_cmd = app.add_subcommand("tune", "coordinate-descent hyperparameter search");
  common.attach(tune_cmd);
  std::string tune_model_name = "mlp";
  std::string tune_metric = "cred-f1";
  int max_cycles = 3;
  tune_cmd->add_option("--model", tune_model_name, "model to tune");
  tune_cmd->add_option("--metric", tune_metric, "cred-f1|repair-mrr|repair-macro-f1");
  tune_cmd->add_option("--max-cycles", max_cycles, "max coordinate-descent cycles");

  auto* ablate_cmd = app.add_subcommand("ablate", "sentence/depth/mapping sweeps");
  common.attach(ablate_cmd);
  std::string ablate_what;
  std::string ks_spec = "1,2,3,5,7,10,all";
  std::string models_spec = "mlp";
  int max_depth = 4;
  std::vector<std::uint64_t> ablate_seeds;
  ablate_cmd->add_option("what", ablate_what, "sentences|depth|mapping")->required();
  ablate_cmd->add_option("--ks", ks_spec, "comma-separated sentence counts");
  ablate_cmd->add_option("--models", models_spec, "comma-separated model list");
  ablate_cmd->add_option("--max-depth", max_depth, "deepest network for the depth sweep");
  ablate_cmd->add_option("--seeds", ablate_seeds, "seeds to average over");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      cmd_gen_synth(synth, synth_out);
    } else if (*ingest) {
      cmd_ingest(common.resolve(), dump_flags, dump_features);
    } else if (*sample) {
      cmd_sample_negatives(common.resolve(), neg_prefix);
    } else if (*train_cmd) {
      cmd_train(common.resolve(), train_model_name, model_out);
    } else if (*eval_cmd) {
      cmd_eval(common.resolve(), eval_model_file, eval_split, report_out);
    } else if (*predict_cmd) {
      cmd_predict(common.resolve(), predict_model_file, predict_facts, predict_out);
    } else if (*run_cmd) {
      cmd_run(common.resolve(), run_tune_cycles);
    } else if (*tune_cmd) {
      cmd_tune(common.resolve(), tune_model_name, tune_metric, max_cycles);
    } else if (*ablate_cmd) {
      cmd_ablate(common.resolve(), ablate_what, ks_spec, max_depth, models_spec,
                 ablate_seeds);
    }
  } catch (const ParseError& e) {
    std::cerr << "error[data]: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error[data]: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error[runtime]: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error[runtime]: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
