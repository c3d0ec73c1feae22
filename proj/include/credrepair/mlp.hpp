#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "credrepair/rng.hpp"
#include "credrepair/sampler.hpp"

namespace credrepair {

enum class Activation : std::uint8_t { kTanh = 0, kRelu = 1 };

// Dense row-major matrix; all model arithmetic is 64-bit.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

struct Layer {
  Mat w;
  std::vector<double> b;
};

// Joint credibility + repair feedforward network. Hidden layers are square
// (input_dim x input_dim); the credibility head emits one logit, the
// repair head r logits covering every relation class including
// CANNOT_REPAIR.
struct MlpModel {
  std::vector<Layer> hidden;
  Layer cred;    // 1 x (e+n)
  Layer repair;  // r x (e+n)
  Activation activation = Activation::kTanh;
  double dropout_rate = 0.0;
  double l1_lambda = 0.0;
  int e = 0;
  int n = 0;
  int r = 0;

  int input_dim() const { return e + n; }
  int depth() const { return static_cast<int>(hidden.size()); }
};

struct ModelDims {
  int e = 0;
  int n = 0;
  int r = 0;
  int depth = 2;
};

struct LossWeights {
  double cred = 1.0;
  double repair = 1.0;
};

struct TrainConfig {
  double lr = 0.05;
  double momentum = 0.9;
  double decay = 1e-6;
  int epochs = 5;
  int batch_size = 64;
  double l1_lambda = 0.0;
  double dropout = 0.0;
  std::uint64_t seed = 0;
  LossWeights loss_weights;

  void validate() const;
};

struct ForwardCache {
  std::vector<double> input;
  std::vector<std::vector<double>> activations;  // g(z) per hidden layer
  std::vector<std::vector<double>> outputs;      // after dropout scaling
  std::vector<std::vector<double>> masks;        // 0 or 1/(1-p); empty in infer mode
  double y_c = 0.0;
  std::vector<double> y_r;
};

struct ForwardResult {
  double y_c = 0.0;
  std::vector<double> y_r;
};

enum class RunMode { kTrain, kInfer };

struct Gradients {
  std::vector<Layer> hidden;
  Layer cred;
  Layer repair;
};

struct Velocity {
  std::vector<Layer> hidden;
  Layer cred;
  Layer repair;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> epoch_loss;  // mean batch loss per epoch
};

struct Verdict {
  bool credible = false;
  double credibility_score = 0.0;
  std::optional<int> repair;  // absent when credible or unrepairable
  bool unrepairable = false;
  std::vector<int> ranking;  // all classes by descending repair score
};

// Weights ~ Uniform(-L, L) with L = sqrt(6 / (fan_in + fan_out)); biases
// zero. Depth <= 2 selects tanh, deeper networks ReLU.
MlpModel init_xavier(const ModelDims& dims, std::uint64_t seed);

// rng is only consumed in train mode (inverted dropout masks).
ForwardResult forward(const MlpModel& model, const std::vector<double>& x, RunMode mode,
                      RngStream& rng, ForwardCache* cache = nullptr);

// w_cred * BCE + w_repair * CE + l1 * sum|w| (weights only, not biases).
// Probabilities are clamped to [1e-12, 1 - 1e-12] before the logs.
double loss(double y_c, const std::vector<double>& y_r, const LabeledInstance& inst,
            const MlpModel& model, const LossWeights& weights = {});

Gradients backward(const MlpModel& model, const ForwardCache& cache,
                   const LabeledInstance& inst, const LossWeights& weights = {});

Gradients zero_gradients(const MlpModel& model);
Velocity zero_velocity(const MlpModel& model);

// lr_t = lr / (1 + decay * step_count); v <- momentum*v - lr_t*grad;
// param <- param + v.
void sgd_step(MlpModel& model, const Gradients& grads, Velocity& velocity,
              const TrainConfig& cfg, long step_count);

using BatchSource = std::function<std::vector<Batch>(int epoch)>;

TrainResult train(MlpModel model, const BatchSource& batches, const TrainConfig& cfg);

// Convenience source: reshuffled balanced batches per epoch. pos/neg are
// captured by reference and must outlive the returned source.
BatchSource make_batch_source(const std::vector<LabeledInstance>& pos,
                              const std::vector<LabeledInstance>& neg, int batch_size,
                              std::uint64_t seed);

Verdict predict(const MlpModel& model, const std::vector<double>& x,
                int cannot_repair_index);

// Bit-exact round trip; versioned binary format.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

bool models_equal(const MlpModel& a, const MlpModel& b);

// Exposed for the dropout expectation property test.
std::vector<double> apply_inverted_dropout(const std::vector<double>& values, double rate,
                                           RngStream& rng, std::vector<double>* mask_out);

}  // namespace credrepair
