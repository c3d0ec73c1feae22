#include "credrepair/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <tuple>

#include "credrepair/error.hpp"
#include "credrepair/sampler.hpp"
#include "credrepair/tuner.hpp"

namespace credrepair {

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "mlp") return ModelKind::kMlp;
  if (s == "lr-count") return ModelKind::kLrCount;
  if (s == "lr-binary") return ModelKind::kLrBinary;
  if (s == "lr-sum") return ModelKind::kLrSum;
  if (s == "lr-avg") return ModelKind::kLrAvg;
  if (s == "lr-tfidf") return ModelKind::kLrTfidf;
  throw ValidationError("unknown model '" + s +
                        "' (mlp|lr-count|lr-binary|lr-sum|lr-avg|lr-tfidf)");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMlp: return "mlp";
    case ModelKind::kLrCount: return "lr-count";
    case ModelKind::kLrBinary: return "lr-binary";
    case ModelKind::kLrSum: return "lr-sum";
    case ModelKind::kLrAvg: return "lr-avg";
    case ModelKind::kLrTfidf: return "lr-tfidf";
  }
  return "?";
}

const std::vector<ModelKind>& all_model_kinds() {
  static const std::vector<ModelKind> kinds = {
      ModelKind::kMlp,   ModelKind::kLrCount, ModelKind::kLrBinary,
      ModelKind::kLrSum, ModelKind::kLrAvg,   ModelKind::kLrTfidf};
  return kinds;
}

CorpusBundle load_bundle(const DataPaths& paths) {
  CorpusBundle bundle;
  bundle.catalog = load_catalog(paths.catalog);
  bundle.facts = load_facts(paths.facts, bundle.catalog);
  bundle.documents = load_documents(paths.documents);
  bundle.embeddings = load_embeddings(paths.embeddings);
  if (!paths.aliases.empty()) bundle.aliases = load_alias_db(paths.aliases);
  if (!paths.paraphrases.empty()) {
    bundle.paraphrases = load_paraphrase_table(paths.paraphrases);
  }
  if (!paths.frames.empty()) {
    bundle.frame_inventory = load_frame_inventory(paths.frames);
  }
  return bundle;
}

RelationCatalog effective_catalog(const CorpusBundle& bundle, const PipelineConfig& cfg) {
  if (cfg.frame_mode != FrameMode::kAuto) return bundle.catalog;
  for (const auto& rel : bundle.catalog.relations()) {
    if (!rel.auto_frames.empty()) return bundle.catalog;  // already mapped
  }
  const std::vector<FrameDef> inventory = bundle.frame_inventory.empty()
                                              ? expert_frame_inventory(bundle.catalog)
                                              : bundle.frame_inventory;
  return auto_frame_mapping(bundle.catalog, inventory, cfg.auto_min_overlap);
}

CorpusBundle from_synthetic(SyntheticCorpus corpus) {
  CorpusBundle bundle;
  bundle.catalog = std::move(corpus.catalog);
  bundle.facts = std::move(corpus.facts);
  bundle.documents = std::move(corpus.documents);
  bundle.embeddings = std::move(corpus.embeddings);
  return bundle;
}

namespace {

// Featurize one fact against its provenance document; empty result means
// the fact is unusable under this pipeline configuration.
std::vector<RelevantSentence> fact_sentences(const Fact& fact, const CorpusBundle& bundle,
                                             const RelationCatalog& catalog,
                                             const PipelineConfig& cfg, RngStream rng) {
  const Document* doc = bundle.documents.find(fact.doc_id);
  if (!doc) {
    throw ValidationError("fact references unknown doc_id '" + fact.doc_id + "'");
  }
  return select_sentences(*doc, fact, cfg.max_sentences, std::move(rng), cfg.frame_filter,
                          bundle.aliases, bundle.paraphrases, catalog, cfg.frame_mode);
}

// Corpus construction admits only facts with usable provenance, so faux
// facts are resampled (bounded) until they have a relevant sentence too;
// otherwise the negative sets shrink and the splits lose their 1:1 balance.
constexpr int kMaxNegativeDraws = 50;

PreparedSplit prepare_split(const std::vector<Fact>& positives, const char* split_name,
                            const CorpusBundle& bundle, const RelationCatalog& catalog,
                            const PipelineConfig& cfg, const NegativeSampler& sampler,
                            const RngStream& root, std::vector<Fact>* raw_negatives) {
  PreparedSplit split;
  const std::string prefix = std::string(split_name) + "/";
  for (std::size_t i = 0; i < positives.size(); ++i) {
    const Fact& fact = positives[i];
    auto sentences = fact_sentences(fact, bundle, catalog, cfg,
                                    root.substream("sent/pos/" + prefix + std::to_string(i)));
    if (!sentences.empty()) {
      PreparedInstance inst;
      inst.fact = fact;
      inst.features = build_features(fact, sentences, bundle.embeddings);
      inst.sentences = std::move(sentences);
      inst.cred_label = 1;
      inst.repair_label = *catalog.index_of(fact.relation);
      split.pos.push_back(std::move(inst));
    }

    RngStream neg_rng = root.substream("neg/" + prefix + std::to_string(i));
    for (int attempt = 0; attempt < kMaxNegativeDraws; ++attempt) {
      Fact neg = sampler.sample(fact, neg_rng);
      auto neg_sentences = fact_sentences(
          neg, bundle, catalog, cfg,
          root.substream("sent/neg/" + prefix + std::to_string(i) + "/" +
                         std::to_string(attempt)));
      if (neg_sentences.empty()) continue;
      if (raw_negatives) raw_negatives->push_back(neg);
      PreparedInstance inst;
      inst.fact = neg;
      inst.features = build_features(neg, neg_sentences, bundle.embeddings);
      inst.sentences = std::move(neg_sentences);
      inst.cred_label = 0;
      inst.repair_label = catalog.cannot_repair_index();
      split.neg.push_back(std::move(inst));
      break;
    }
  }
  return split;
}

}  // namespace

PreparedData prepare_data(const CorpusBundle& bundle, const PipelineConfig& cfg,
                          std::uint64_t seed) {
  RngStream root(seed);
  PreparedData data;
  data.catalog = effective_catalog(bundle, cfg);

  // Corpus construction keeps only facts with at least one relevant
  // sentence under the unfiltered criteria, then splits.
  std::vector<Fact> usable;
  for (const auto& fact : bundle.facts) {
    if (fact.gold_credible.has_value() && !*fact.gold_credible) {
      throw ValidationError(
          "pipeline input must be positive facts; faux facts are sampled internally");
    }
    const Document* doc = bundle.documents.find(fact.doc_id);
    if (!doc) {
      throw ValidationError("fact references unknown doc_id '" + fact.doc_id + "'");
    }
    if (!relevant_sentences(*doc, fact, bundle.aliases, bundle.paraphrases, data.catalog,
                            cfg.frame_mode)
             .empty()) {
      usable.push_back(fact);
    }
  }
  if (usable.empty()) {
    throw ValidationError("no fact has a relevant provenance sentence");
  }

  DatasetSplit split =
      split_dataset(usable, cfg.fractions, root.substream("split").next_u64());
  NegativeSampler sampler(usable, data.catalog);
  data.train = prepare_split(split.train, "train", bundle, data.catalog, cfg, sampler, root,
                             &data.raw_negatives_train);
  data.dev = prepare_split(split.dev, "dev", bundle, data.catalog, cfg, sampler, root,
                           &data.raw_negatives_dev);
  data.test = prepare_split(split.test, "test", bundle, data.catalog, cfg, sampler, root,
                            &data.raw_negatives_test);
  return data;
}

namespace {

std::vector<LabeledInstance> to_labeled(const std::vector<PreparedInstance>& instances) {
  std::vector<LabeledInstance> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    out.push_back({inst.features, inst.cred_label, inst.repair_label});
  }
  return out;
}

std::vector<TextInstance> to_text(const PreparedSplit& split) {
  std::vector<TextInstance> out;
  out.reserve(split.pos.size() + split.neg.size());
  for (const auto& inst : split.pos) {
    out.push_back({inst.sentences, inst.cred_label, inst.repair_label});
  }
  for (const auto& inst : split.neg) {
    out.push_back({inst.sentences, inst.cred_label, inst.repair_label});
  }
  return out;
}

Featurizer make_featurizer(const BaselineModel& model, const CorpusBundle& bundle) {
  Featurizer f;
  f.append_flags = model.append_flags;
  f.kind = model.kind;
  f.vocab = model.vocab;
  f.emb = &bundle.embeddings;
  return f;
}

FeaturizerKind featurizer_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLrCount: return FeaturizerKind::kBowCount;
    case ModelKind::kLrBinary: return FeaturizerKind::kBowBinary;
    case ModelKind::kLrSum: return FeaturizerKind::kW2vSum;
    case ModelKind::kLrAvg: return FeaturizerKind::kW2vAvg;
    case ModelKind::kLrTfidf: return FeaturizerKind::kTfidf;
    case ModelKind::kMlp: break;
  }
  throw ValidationError("model has no featurizer");
}

}  // namespace

TrainedModel train_model(ModelKind kind, const PreparedSplit& train_split,
                         const CorpusBundle& bundle, const TrainSettings& settings,
                         std::uint64_t seed) {
  if (train_split.pos.empty() || train_split.neg.empty()) {
    throw ValidationError("training split needs both positive and negative instances");
  }
  TrainedModel out;
  out.kind = kind;
  if (kind == ModelKind::kMlp) {
    ModelDims dims;
    dims.e = bundle.embeddings.dimension();
    dims.n = kNumRelevanceFlags;
    dims.r = bundle.catalog.num_classes();
    dims.depth = settings.hidden_layers;
    MlpModel model = init_xavier(dims, RngStream(seed).substream("init").next_u64());
    TrainConfig cfg = settings.mlp;
    cfg.seed = RngStream(seed).substream("train").next_u64();
    std::vector<LabeledInstance> pos = to_labeled(train_split.pos);
    std::vector<LabeledInstance> neg = to_labeled(train_split.neg);
    TrainResult result =
        train(std::move(model), make_batch_source(pos, neg, cfg.batch_size, cfg.seed), cfg);
    out.mlp = std::move(result.model);
    out.loss_trace = std::move(result.epoch_loss);
  } else {
    BaselineModel model;
    model.kind = featurizer_for(kind);
    model.append_flags = settings.append_flags;
    std::vector<TextInstance> instances = to_text(train_split);
    if (model.kind == FeaturizerKind::kBowCount || model.kind == FeaturizerKind::kBowBinary ||
        model.kind == FeaturizerKind::kTfidf) {
      std::vector<std::vector<RelevantSentence>> bags;
      bags.reserve(instances.size());
      for (const auto& inst : instances) bags.push_back(inst.sentences);
      model.vocab = build_vocabulary(bags);
    }
    Featurizer featurizer = make_featurizer(model, bundle);
    model.cred = lr_train(instances, featurizer, settings.lr_penalty, LrTask::kCredibility,
                          2);
    model.repair = lr_train(instances, featurizer, settings.lr_penalty, LrTask::kRepair,
                            bundle.catalog.num_classes());
    out.baseline = std::move(model);
  }
  return out;
}

Scores score_instance(const TrainedModel& model, const PreparedInstance& inst,
                      const CorpusBundle& bundle) {
  Scores scores;
  if (model.kind == ModelKind::kMlp) {
    RngStream unused(0);
    ForwardResult fwd = forward(model.mlp, inst.features.values, RunMode::kInfer, unused);
    scores.credibility = fwd.y_c;
    scores.repair = std::move(fwd.y_r);
  } else {
    Featurizer featurizer = make_featurizer(model.baseline, bundle);
    auto row = featurizer.row(inst.sentences);
    scores.credibility = lr_scores(model.baseline.cred, row)[0];
    scores.repair = lr_scores(model.baseline.repair, row);
  }
  return scores;
}

SplitReport evaluate_split(const TrainedModel& model, const PreparedSplit& split,
                           const CorpusBundle& bundle, const RelationCatalog& catalog) {
  SplitReport report;
  report.n_pos = static_cast<long>(split.pos.size());
  report.n_neg = static_cast<long>(split.neg.size());
  std::vector<bool> cred_preds;
  std::vector<bool> cred_golds;
  std::vector<int> repair_preds;
  std::vector<int> repair_golds;
  std::vector<std::vector<int>> rankings;
  auto add = [&](const PreparedInstance& inst) {
    Scores scores = score_instance(model, inst, bundle);
    cred_preds.push_back(scores.credibility >= 0.5);
    cred_golds.push_back(inst.cred_label == 1);
    std::vector<int> ranking(scores.repair.size());
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(), [&](int a, int b) {
      if (scores.repair[a] != scores.repair[b]) return scores.repair[a] > scores.repair[b];
      return a < b;
    });
    repair_preds.push_back(ranking.front());
    repair_golds.push_back(inst.repair_label);
    rankings.push_back(std::move(ranking));
  };
  for (const auto& inst : split.pos) add(inst);
  for (const auto& inst : split.neg) add(inst);
  if (cred_preds.empty()) throw ValidationError("evaluation split is empty");
  report.cred = binary_f1(cred_preds, cred_golds);
  report.repair = repair_report(repair_preds, repair_golds, rankings,
                                catalog.num_classes(), catalog.cannot_repair_index());
  return report;
}

RunOutput run_single(const CorpusBundle& bundle, const PipelineConfig& pipeline,
                     ModelKind kind, const TrainSettings& settings, std::uint64_t seed) {
  PreparedData data = prepare_data(bundle, pipeline, seed);
  RunOutput out;
  out.model = train_model(kind, data.train, bundle, settings, seed);
  out.dev = evaluate_split(out.model, data.dev, bundle, data.catalog);
  out.test = evaluate_split(out.model, data.test, bundle, data.catalog);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<MetricRow> report_rows(const std::string& model, const SplitReport& report,
                                   std::uint64_t seed) {
  const std::string s = std::to_string(seed);
  std::vector<MetricRow> rows;
  rows.push_back({model, "credibility", "precision", s, report.cred.precision});
  rows.push_back({model, "credibility", "recall", s, report.cred.recall});
  rows.push_back({model, "credibility", "f1", s, report.cred.f1});
  rows.push_back({model, "repair", "macro_f1", s, report.repair.macro_f1});
  rows.push_back({model, "repair", "micro_f1", s, report.repair.micro_f1});
  rows.push_back({model, "repair", "mrr", s, report.repair.mrr});
  if (report.repair.cannot_repair_top1) {
    rows.push_back(
        {model, "repair", "cannot_repair_top1", s, *report.repair.cannot_repair_top1});
  }
  return rows;
}

void append_aggregates(std::vector<MetricRow>& rows) {
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> groups;
  for (const auto& row : rows) {
    if (row.seed == "mean" || row.seed == "spread") continue;
    groups[{row.model, row.task, row.metric}].push_back(row.value);
  }
  for (const auto& [key, values] : groups) {
    const auto& [model, task, metric] = key;
    double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                  static_cast<double>(values.size());
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    rows.push_back({model, task, metric, "mean", mean});
    rows.push_back({model, task, metric, "spread", *hi - *lo});
  }
}

void write_metric_csv(const std::vector<MetricRow>& rows,
                      const std::filesystem::path& path) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "model,task,metric,value,seed\n";
  for (const auto& row : rows) {
    out << row.model << "," << row.task << "," << row.metric << ","
        << format_double(row.value) << "," << row.seed << "\n";
  }
}

void write_loss_trace(const std::vector<double>& epoch_loss,
                      const std::filesystem::path& path) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "epoch,mean_loss\n";
  for (std::size_t i = 0; i < epoch_loss.size(); ++i) {
    out << (i + 1) << "," << format_double(epoch_loss[i]) << "\n";
  }
}

std::vector<MetricRow> run_experiment(const ExperimentConfig& config,
                                      const CorpusBundle& bundle) {
  std::filesystem::create_directories(config.out_dir);
  std::vector<MetricRow> rows;
  std::ofstream summary(config.out_dir / "summary.txt");
  if (!summary) throw IoError("cannot write summary.txt");
  for (ModelKind kind : config.models) {
    TrainSettings settings = config.train;
    if (config.tune_cycles > 0) {
      // Per-model dev selection (credibility F1), then the final runs.
      TuneResult tuned = tune_model(bundle, config.pipeline, kind, settings,
                                    config.seeds.front(), TuneMetric::kCredF1,
                                    config.tune_cycles);
      settings = apply_config(settings, kind, tuned.best);
      write_tune_log(tuned.log, config.out_dir / ("tune_" + to_string(kind) + ".csv"));
    }
    for (std::uint64_t seed : config.seeds) {
      RunOutput out = run_single(bundle, config.pipeline, kind, settings, seed);
      auto model_rows = report_rows(to_string(kind), out.test, seed);
      rows.insert(rows.end(), model_rows.begin(), model_rows.end());
      summary << to_string(kind) << " seed=" << seed << " test: cred_f1="
              << format_double(out.test.cred.f1)
              << " macro_f1=" << format_double(out.test.repair.macro_f1)
              << " micro_f1=" << format_double(out.test.repair.micro_f1)
              << " mrr=" << format_double(out.test.repair.mrr)
              << " (pos=" << out.test.n_pos << " neg=" << out.test.n_neg << ")\n";
      if (kind == ModelKind::kMlp) {
        write_loss_trace(out.model.loss_trace,
                         config.out_dir /
                             ("loss_mlp_seed" + std::to_string(seed) + ".csv"));
      }
    }
  }
  append_aggregates(rows);
  write_metric_csv(rows, config.out_dir / "results.csv");
  return rows;
}

namespace {

constexpr char kBaselineMagic[8] = {'C', 'R', 'L', 'R', 'B', 'I', 'N', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw ParseError(path.string() + ": corrupt model file (truncated)");
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in, const std::filesystem::path& path) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) {
    throw ParseError(path.string() + ": corrupt model file (truncated)");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in, const std::filesystem::path& path) {
  std::uint32_t len = get_u32(in, path);
  std::string s(len, '\0');
  if (!in.read(s.data(), len)) {
    throw ParseError(path.string() + ": corrupt model file (truncated)");
  }
  return s;
}

void put_lr(std::ostream& out, const LrModel& model) {
  put_u32(out, model.task == LrTask::kCredibility ? 0 : 1);
  put_u32(out, static_cast<std::uint32_t>(model.feature_dim));
  put_f64(out, model.penalty);
  put_u32(out, static_cast<std::uint32_t>(model.per_class.size()));
  for (const auto& weights : model.per_class) {
    put_f64(out, weights.b);
    for (double w : weights.w) put_f64(out, w);
  }
}

LrModel get_lr(std::istream& in, const std::filesystem::path& path) {
  LrModel model;
  model.task = get_u32(in, path) == 0 ? LrTask::kCredibility : LrTask::kRepair;
  model.feature_dim = static_cast<int>(get_u32(in, path));
  model.penalty = get_f64(in, path);
  std::uint32_t classes = get_u32(in, path);
  for (std::uint32_t c = 0; c < classes; ++c) {
    LrWeights weights;
    weights.b = get_f64(in, path);
    weights.w.resize(model.feature_dim);
    for (auto& w : weights.w) w = get_f64(in, path);
    model.per_class.push_back(std::move(weights));
  }
  return model;
}

void save_baseline(const BaselineModel& model, ModelKind kind,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kBaselineMagic, sizeof(kBaselineMagic));
  put_u32(out, 1);  // version
  put_string(out, to_string(kind));
  put_u32(out, model.append_flags ? 1 : 0);
  put_u32(out, static_cast<std::uint32_t>(model.vocab.num_docs));
  put_u32(out, static_cast<std::uint32_t>(model.vocab.size()));
  for (int i = 0; i < model.vocab.size(); ++i) {
    put_string(out, model.vocab.tokens[i]);
    put_u32(out, static_cast<std::uint32_t>(model.vocab.df[i]));
  }
  put_lr(out, model.cred);
  put_lr(out, model.repair);
}

TrainedModel load_baseline(std::istream& in, const std::filesystem::path& path) {
  std::uint32_t version = get_u32(in, path);
  if (version != 1) {
    throw ParseError(path.string() + ": unsupported model version " +
                     std::to_string(version));
  }
  TrainedModel model;
  model.kind = model_kind_from_string(get_string(in, path));
  model.baseline.kind = featurizer_for(model.kind);
  model.baseline.append_flags = get_u32(in, path) != 0;
  model.baseline.vocab.num_docs = static_cast<int>(get_u32(in, path));
  std::uint32_t vocab_size = get_u32(in, path);
  for (std::uint32_t i = 0; i < vocab_size; ++i) {
    std::string token = get_string(in, path);
    int df = static_cast<int>(get_u32(in, path));
    model.baseline.vocab.index.emplace(token, static_cast<int>(i));
    model.baseline.vocab.tokens.push_back(std::move(token));
    model.baseline.vocab.df.push_back(df);
  }
  model.baseline.cred = get_lr(in, path);
  model.baseline.repair = get_lr(in, path);
  char extra;
  if (in.read(&extra, 1)) {
    throw ParseError(path.string() + ": corrupt model file (trailing data)");
  }
  return model;
}

}  // namespace

void save_trained(const TrainedModel& model, const std::filesystem::path& path) {
  if (model.kind == ModelKind::kMlp) {
    save_model(model.mlp, path);
  } else {
    save_baseline(model.baseline, model.kind, path);
  }
}

TrainedModel load_trained(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, 8)) throw ParseError(path.string() + ": truncated model file");
  if (std::memcmp(magic, kBaselineMagic, 8) == 0) {
    return load_baseline(in, path);
  }
  in.close();
  TrainedModel model;
  model.kind = ModelKind::kMlp;
  model.mlp = load_model(path);  // re-validates the magic
  return model;
}

void check_model_matches_catalog(const TrainedModel& model,
                                 const RelationCatalog& catalog) {
  int classes = model.kind == ModelKind::kMlp
                    ? model.mlp.r
                    : static_cast<int>(model.baseline.repair.per_class.size());
  if (classes != catalog.num_classes()) {
    throw ValidationError("model repair head covers " + std::to_string(classes) +
                          " classes but the catalog has " +
                          std::to_string(catalog.num_classes()));
  }
}

}  // namespace credrepair
