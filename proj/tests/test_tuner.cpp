#include <cmath>
#include <set>

#include <doctest.h>

#include "credrepair/rng.hpp"
#include "credrepair/synth.hpp"
#include "credrepair/tuner.hpp"
#include "test_util.hpp"

using namespace credrepair;

TEST_CASE("coordinate descent finds the argmax of a 1-D grid") {
  std::vector<GridParam> grids = {{"x", {0.1, 0.2, 0.3, 0.4, 0.5}}};
  auto objective = [](const std::map<std::string, double>& cfg) {
    double x = cfg.at("x");
    return -(x - 0.3) * (x - 0.3);  // unimodal, peak at 0.3
  };
  TuneResult result = coordinate_descent(grids, objective, {{"x", 0.1}});
  CHECK(result.best.at("x") == doctest::Approx(0.3));
}

TEST_CASE("a constant objective keeps the initial config after one cycle") {
  std::vector<GridParam> grids = {{"x", {1, 2, 3}}, {"y", {4, 5}}};
  int calls = 0;
  auto objective = [&](const std::map<std::string, double>&) {
    ++calls;
    return 0.25;
  };
  TuneResult result = coordinate_descent(grids, objective, {{"x", 2}, {"y", 5}});
  CHECK(result.best.at("x") == 2);
  CHECK(result.best.at("y") == 5);
  CHECK(result.best_metric == 0.25);
  // initial + one full cycle (two x values and one y value differ)
  CHECK(calls == 1 + 3);
  int max_cycle = 0;
  for (const auto& t : result.log) max_cycle = std::max(max_cycle, t.cycle);
  CHECK(max_cycle == 1);
}

TEST_CASE("coordinate descent finds the optimum of a separable 2-D grid") {
  std::vector<GridParam> grids = {{"a", {0, 1, 2, 3, 4}}, {"b", {0, 1, 2, 3}}};
  auto g = [](double a) { return -(a - 3) * (a - 3); };
  auto h = [](double b) { return -2 * (b - 1) * (b - 1); };
  auto objective = [&](const std::map<std::string, double>& cfg) {
    return g(cfg.at("a")) + h(cfg.at("b"));
  };
  TuneResult result = coordinate_descent(grids, objective, {{"a", 0}, {"b", 3}});

  // Exhaustive oracle over the full grid.
  double best = -1e300;
  double best_a = -1, best_b = -1;
  for (double a : grids[0].values) {
    for (double b : grids[1].values) {
      double v = g(a) + h(b);
      if (v > best) {
        best = v;
        best_a = a;
        best_b = b;
      }
    }
  }
  CHECK(result.best.at("a") == best_a);
  CHECK(result.best.at("b") == best_b);
  CHECK(result.best_metric == doctest::Approx(best));
}

TEST_CASE("coordinate descent never returns worse than the initial config") {
  RngStream rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GridParam> grids = {{"a", {0, 1, 2}}, {"b", {0, 1, 2}}};
    // random objective table
    double table[3][3];
    for (auto& row : table) {
      for (auto& v : row) v = rng.uniform(-1, 1);
    }
    auto objective = [&](const std::map<std::string, double>& cfg) {
      return table[int(cfg.at("a"))][int(cfg.at("b"))];
    };
    std::map<std::string, double> initial = {
        {"a", double(rng.uniform_index(3))}, {"b", double(rng.uniform_index(3))}};
    double initial_metric = objective(initial);
    TuneResult result = coordinate_descent(grids, objective, initial);
    CHECK(result.best_metric >= initial_metric);
    // and the log's accepted entries are monotonically improving
    double last = -1e300;
    for (const auto& t : result.log) {
      if (t.accepted) {
        CHECK(t.dev_metric >= last);
        last = t.dev_metric;
      }
    }
  }
}

TEST_CASE("failed trials surface the offending config") {
  std::vector<GridParam> grids = {{"x", {1, 2}}};
  auto objective = [](const std::map<std::string, double>& cfg) -> double {
    if (cfg.at("x") == 2) throw std::runtime_error("boom");
    return 0.0;
  };
  CHECK_THROWS_WITH_AS(coordinate_descent(grids, objective, {{"x", 1}}),
                       doctest::Contains("x=2"), std::runtime_error);
}

TEST_CASE("tune log is written as CSV") {
  std::vector<GridParam> grids = {{"x", {0.0, 1.0}}};
  auto objective = [](const std::map<std::string, double>& cfg) { return cfg.at("x"); };
  TuneResult result = coordinate_descent(grids, objective, {{"x", 0.0}});
  testutil::TempDir tmp;
  write_tune_log(result.log, tmp.file("log.csv"));
  std::string text = testutil::read_file(tmp.file("log.csv"));
  CHECK(text.find("cycle,param,value,dev_metric,accepted") == 0);
  CHECK(text.find("1,x,1,1,1") != std::string::npos);
}

namespace {

CorpusBundle tiny_bundle(std::uint64_t seed = 3) {
  SynthConfig cfg;
  cfg.num_relations = 3;
  cfg.facts_per_relation = 30;
  cfg.seed = seed;
  return from_synthetic(gen_synthetic(cfg));
}

TrainSettings quick_settings() {
  TrainSettings s;
  s.mlp.epochs = 2;
  s.mlp.batch_size = 16;
  return s;
}

long seeded_rows(const std::vector<AblationRow>& rows) {
  long n = 0;
  for (const auto& row : rows) {
    if (row.seed != "mean" && row.seed != "spread") ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("sentence ablation emits one row per (k, model, seed, metric)") {
  CorpusBundle bundle = tiny_bundle();
  PipelineConfig pipeline;
  auto rows = ablate_sentences(bundle, pipeline, {1, 2, kAllSentences},
                               FrameFilter::kAllRelevant, {ModelKind::kMlp},
                               quick_settings(), {1, 2});
  // 3 ks x 1 model x 2 seeds x 6 metrics
  CHECK(seeded_rows(rows) == 3 * 2 * 6);
  std::set<std::string> k_values;
  for (const auto& row : rows) k_values.insert(row.x_value);
  CHECK(k_values == std::set<std::string>{"1", "2", "all"});

  testutil::TempDir tmp;
  write_ablation_csv(rows, tmp.file("ablate.csv"));
  std::string text = testutil::read_file(tmp.file("ablate.csv"));
  CHECK(text.find("model,x_name,x_value,frame_filter,seed,task,metric,value") == 0);
}

TEST_CASE("k=ALL ablation equals the main experiment configuration") {
  CorpusBundle bundle = tiny_bundle();
  PipelineConfig pipeline;  // max_sentences = ALL
  TrainSettings settings = quick_settings();
  RunOutput direct = run_single(bundle, pipeline, ModelKind::kMlp, settings, 9);
  auto rows = ablate_sentences(bundle, pipeline, {kAllSentences},
                               FrameFilter::kAllRelevant, {ModelKind::kMlp}, settings,
                               {9});
  for (const auto& row : rows) {
    if (row.seed != "9" || row.metric != "f1" || row.task != "credibility") continue;
    CHECK(row.value == direct.test.cred.f1);  // identical pipeline, identical value
  }
}

TEST_CASE("depth ablation has one row per (depth, seed, metric)") {
  CorpusBundle bundle = tiny_bundle();
  PipelineConfig pipeline;
  auto rows = ablate_depth(bundle, pipeline, {1, 3}, quick_settings(), {1, 2, 3});
  CHECK(seeded_rows(rows) == 2 * 3 * 6);
  std::set<std::string> depths;
  for (const auto& row : rows) depths.insert(row.x_value);
  CHECK(depths == std::set<std::string>{"1", "3"});
}

TEST_CASE("mapping ablation covers expert/auto x all/frames_only") {
  CorpusBundle bundle = tiny_bundle();
  PipelineConfig pipeline;
  auto rows = ablate_mapping(bundle, pipeline, quick_settings(), {4});
  CHECK(seeded_rows(rows) == 2 * 2 * 6);
  std::set<std::pair<std::string, std::string>> combos;
  for (const auto& row : rows) combos.insert({row.x_value, row.frame_filter});
  CHECK(combos.size() == 4);
  CHECK(combos.count({"expert", "all_relevant"}) == 1);
  CHECK(combos.count({"auto", "frames_only"}) == 1);
}

TEST_CASE("auto mapping recovers the expert mapping on synthetic data") {
  // Trigger words double as description tokens, so lexical overlap against
  // the expert frame inventory reproduces the expert mapping exactly.
  CorpusBundle bundle = tiny_bundle();
  RelationCatalog mapped =
      auto_frame_mapping(bundle.catalog, expert_frame_inventory(bundle.catalog));
  for (int i = 0; i < mapped.num_real_relations(); ++i) {
    CHECK(mapped.relation(i).auto_frames == bundle.catalog.relation(i).expert_frames);
  }

  // frames_only keeps only frame-triggering sentences for positives.
  PipelineConfig pipeline;
  pipeline.frame_filter = FrameFilter::kFramesOnly;
  PreparedData data = prepare_data(bundle, pipeline, 2);
  REQUIRE(!data.train.pos.empty());
  for (const auto& inst : data.train.pos) {
    for (const auto& s : inst.sentences) CHECK(s.flags.frame_trigger);
  }
}

TEST_CASE("tune_model improves or retains the dev metric on synthetic data") {
  CorpusBundle bundle = tiny_bundle(8);
  PipelineConfig pipeline;
  TrainSettings settings = quick_settings();
  settings.mlp.lr = 1e-5;  // deliberately poor start so tuning has headroom
  TuneResult result = tune_model(bundle, pipeline, ModelKind::kMlp, settings, 3,
                                 TuneMetric::kCredF1, 1);
  CHECK(result.best_metric >= result.log.front().dev_metric);
  CHECK(result.log.front().param == "initial");
  // grid values visited: 4 lr values + 5 l1 + 4 dropout = 13 non-initial
  // trials at most in one cycle (minus any equal to the incumbent)
  CHECK(result.log.size() >= 10);
}
