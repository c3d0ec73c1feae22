#include "credrepair/mlp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "credrepair/error.hpp"

namespace credrepair {

namespace {

constexpr double kProbClamp = 1e-12;

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double ez = std::exp(z);
  return ez / (1.0 + ez);
}

// y = W x + b
std::vector<double> affine(const Layer& layer, const std::vector<double>& x) {
  std::vector<double> y(layer.w.rows);
  for (int r = 0; r < layer.w.rows; ++r) {
    const double* row = layer.w.a.data() + static_cast<std::size_t>(r) * layer.w.cols;
    double acc = layer.b[r];
    for (int c = 0; c < layer.w.cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

// grad_w += dz * x^T ; grad_b += dz ; returns W^T dz when requested
void accumulate_layer_grads(const Layer& layer, const std::vector<double>& dz,
                            const std::vector<double>& x, Layer& grad,
                            std::vector<double>* dx) {
  for (int r = 0; r < layer.w.rows; ++r) {
    double* grow = grad.w.a.data() + static_cast<std::size_t>(r) * layer.w.cols;
    for (int c = 0; c < layer.w.cols; ++c) grow[c] += dz[r] * x[c];
    grad.b[r] += dz[r];
  }
  if (dx) {
    dx->assign(layer.w.cols, 0.0);
    for (int r = 0; r < layer.w.rows; ++r) {
      const double* row = layer.w.a.data() + static_cast<std::size_t>(r) * layer.w.cols;
      for (int c = 0; c < layer.w.cols; ++c) (*dx)[c] += row[c] * dz[r];
    }
  }
}

void xavier_fill(Mat& w, int fan_in, int fan_out, RngStream& rng) {
  double limit = std::sqrt(6.0 / (fan_in + fan_out));
  for (auto& v : w.a) v = rng.uniform(-limit, limit);
}

double activate(double z, Activation act) {
  return act == Activation::kTanh ? std::tanh(z) : std::max(0.0, z);
}

// Derivative expressed through the activation value a = g(z).
double activate_grad(double a, Activation act) {
  return act == Activation::kTanh ? 1.0 - a * a : (a > 0.0 ? 1.0 : 0.0);
}

Layer zero_like(const Layer& layer) {
  Layer z;
  z.w = Mat(layer.w.rows, layer.w.cols);
  z.b.assign(layer.b.size(), 0.0);
  return z;
}

void add_l1_subgradient(const Mat& w, double lambda, Mat& grad) {
  for (std::size_t i = 0; i < w.a.size(); ++i) {
    double v = w.a[i];
    if (v > 0) {
      grad.a[i] += lambda;
    } else if (v < 0) {
      grad.a[i] -= lambda;
    }
    // sign(0) = 0
  }
}

double l1_norm(const Mat& w) {
  double sum = 0.0;
  for (double v : w.a) sum += std::abs(v);
  return sum;
}

void step_layer(Layer& param, const Layer& grad, Layer& vel, double momentum, double lr) {
  for (std::size_t i = 0; i < param.w.a.size(); ++i) {
    vel.w.a[i] = momentum * vel.w.a[i] - lr * grad.w.a[i];
    param.w.a[i] += vel.w.a[i];
  }
  for (std::size_t i = 0; i < param.b.size(); ++i) {
    vel.b[i] = momentum * vel.b[i] - lr * grad.b[i];
    param.b[i] += vel.b[i];
  }
}

void add_layer(Layer& acc, const Layer& g) {
  for (std::size_t i = 0; i < acc.w.a.size(); ++i) acc.w.a[i] += g.w.a[i];
  for (std::size_t i = 0; i < acc.b.size(); ++i) acc.b[i] += g.b[i];
}

void scale_layer(Layer& layer, double s) {
  for (auto& v : layer.w.a) v *= s;
  for (auto& v : layer.b) v *= s;
}

}  // namespace

void TrainConfig::validate() const {
  if (lr < 0) throw ValidationError("learning rate must be >= 0");
  if (momentum < 0 || momentum >= 1) throw ValidationError("momentum must be in [0, 1)");
  if (decay < 0) throw ValidationError("decay must be >= 0");
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (batch_size <= 0 || batch_size % 2 != 0) {
    throw ValidationError("batch_size must be a positive even number");
  }
  if (dropout < 0 || dropout >= 1) throw ValidationError("dropout must be in [0, 1)");
  if (l1_lambda < 0) throw ValidationError("l1_lambda must be >= 0");
}

MlpModel init_xavier(const ModelDims& dims, std::uint64_t seed) {
  if (dims.e < 0 || dims.n <= 0 || dims.r < 2 || dims.depth < 1 ||
      dims.e + dims.n <= 0) {
    throw ValidationError("invalid model dimensions");
  }
  MlpModel model;
  model.e = dims.e;
  model.n = dims.n;
  model.r = dims.r;
  model.activation = dims.depth <= 2 ? Activation::kTanh : Activation::kRelu;
  const int d = dims.e + dims.n;
  RngStream rng(seed);
  for (int i = 0; i < dims.depth; ++i) {
    Layer layer;
    layer.w = Mat(d, d);
    layer.b.assign(d, 0.0);
    xavier_fill(layer.w, d, d, rng);
    model.hidden.push_back(std::move(layer));
  }
  model.cred.w = Mat(1, d);
  model.cred.b.assign(1, 0.0);
  xavier_fill(model.cred.w, d, 1, rng);
  model.repair.w = Mat(dims.r, d);
  model.repair.b.assign(dims.r, 0.0);
  xavier_fill(model.repair.w, d, dims.r, rng);
  return model;
}

std::vector<double> apply_inverted_dropout(const std::vector<double>& values, double rate,
                                           RngStream& rng, std::vector<double>* mask_out) {
  std::vector<double> out(values.size());
  if (mask_out) mask_out->assign(values.size(), 0.0);
  const double scale = 1.0 / (1.0 - rate);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double m = rng.bernoulli(rate) ? 0.0 : scale;
    out[i] = values[i] * m;
    if (mask_out) (*mask_out)[i] = m;
  }
  return out;
}

ForwardResult forward(const MlpModel& model, const std::vector<double>& x, RunMode mode,
                      RngStream& rng, ForwardCache* cache) {
  if (static_cast<int>(x.size()) != model.input_dim()) {
    throw ValidationError("input has dimension " + std::to_string(x.size()) +
                          ", model expects " + std::to_string(model.input_dim()));
  }
  const bool dropping = mode == RunMode::kTrain && model.dropout_rate > 0.0;
  if (cache) {
    cache->input = x;
    cache->activations.clear();
    cache->outputs.clear();
    cache->masks.clear();
  }
  std::vector<double> h = x;
  for (const auto& layer : model.hidden) {
    std::vector<double> z = affine(layer, h);
    for (auto& v : z) v = activate(v, model.activation);
    std::vector<double> mask;
    std::vector<double> out =
        dropping ? apply_inverted_dropout(z, model.dropout_rate, rng, &mask) : z;
    if (cache) {
      cache->activations.push_back(z);
      cache->outputs.push_back(out);
      if (dropping) cache->masks.push_back(std::move(mask));
    }
    h = std::move(out);
  }
  ForwardResult result;
  result.y_c = sigmoid(affine(model.cred, h)[0]);
  std::vector<double> logits = affine(model.repair, h);
  double max_logit = *std::max_element(logits.begin(), logits.end());
  double denom = 0.0;
  for (auto& v : logits) {
    v = std::exp(v - max_logit);
    denom += v;
  }
  result.y_r.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) result.y_r[i] = logits[i] / denom;
  if (cache) {
    cache->y_c = result.y_c;
    cache->y_r = result.y_r;
  }
  return result;
}

double loss(double y_c, const std::vector<double>& y_r, const LabeledInstance& inst,
            const MlpModel& model, const LossWeights& weights) {
  double p = clamp_prob(y_c);
  double bce = inst.cred_label == 1 ? -std::log(p) : -std::log(1.0 - p);
  double ce = -std::log(clamp_prob(y_r.at(inst.repair_label)));
  double l1 = 0.0;
  if (model.l1_lambda > 0) {
    for (const auto& layer : model.hidden) l1 += l1_norm(layer.w);
    l1 += l1_norm(model.cred.w) + l1_norm(model.repair.w);
  }
  return weights.cred * bce + weights.repair * ce + model.l1_lambda * l1;
}

Gradients zero_gradients(const MlpModel& model) {
  Gradients g;
  for (const auto& layer : model.hidden) g.hidden.push_back(zero_like(layer));
  g.cred = zero_like(model.cred);
  g.repair = zero_like(model.repair);
  return g;
}

Velocity zero_velocity(const MlpModel& model) {
  Velocity v;
  for (const auto& layer : model.hidden) v.hidden.push_back(zero_like(layer));
  v.cred = zero_like(model.cred);
  v.repair = zero_like(model.repair);
  return v;
}

Gradients backward(const MlpModel& model, const ForwardCache& cache,
                   const LabeledInstance& inst, const LossWeights& weights) {
  if (cache.activations.size() != model.hidden.size() ||
      static_cast<int>(cache.y_r.size()) != model.r) {
    throw ValidationError("forward cache does not match model shape");
  }
  Gradients grads = zero_gradients(model);
  const std::vector<double>& h_last =
      model.hidden.empty() ? cache.input : cache.outputs.back();

  // Heads: d(BCE)/dz = y - t through the sigmoid, d(CE)/dz = y - onehot
  // through the softmax.
  double dz_c = weights.cred * (cache.y_c - static_cast<double>(inst.cred_label));
  std::vector<double> dz_r(model.r);
  for (int k = 0; k < model.r; ++k) {
    dz_r[k] = weights.repair * (cache.y_r[k] - (k == inst.repair_label ? 1.0 : 0.0));
  }
  std::vector<double> dh;
  accumulate_layer_grads(model.cred, {dz_c}, h_last, grads.cred, &dh);
  std::vector<double> dh_repair;
  accumulate_layer_grads(model.repair, dz_r, h_last, grads.repair, &dh_repair);
  for (std::size_t i = 0; i < dh.size(); ++i) dh[i] += dh_repair[i];

  const bool dropped = !cache.masks.empty();
  for (int i = model.depth() - 1; i >= 0; --i) {
    std::vector<double> dz(dh.size());
    for (std::size_t j = 0; j < dh.size(); ++j) {
      double upstream = dropped ? dh[j] * cache.masks[i][j] : dh[j];
      dz[j] = upstream * activate_grad(cache.activations[i][j], model.activation);
    }
    const std::vector<double>& below = i == 0 ? cache.input : cache.outputs[i - 1];
    accumulate_layer_grads(model.hidden[i], dz, below, grads.hidden[i],
                           i > 0 ? &dh : nullptr);
  }

  if (model.l1_lambda > 0) {
    for (int i = 0; i < model.depth(); ++i) {
      add_l1_subgradient(model.hidden[i].w, model.l1_lambda, grads.hidden[i].w);
    }
    add_l1_subgradient(model.cred.w, model.l1_lambda, grads.cred.w);
    add_l1_subgradient(model.repair.w, model.l1_lambda, grads.repair.w);
  }
  return grads;
}

void sgd_step(MlpModel& model, const Gradients& grads, Velocity& velocity,
              const TrainConfig& cfg, long step_count) {
  double lr_t = cfg.lr / (1.0 + cfg.decay * static_cast<double>(step_count));
  for (int i = 0; i < model.depth(); ++i) {
    step_layer(model.hidden[i], grads.hidden[i], velocity.hidden[i], cfg.momentum, lr_t);
  }
  step_layer(model.cred, grads.cred, velocity.cred, cfg.momentum, lr_t);
  step_layer(model.repair, grads.repair, velocity.repair, cfg.momentum, lr_t);
}

BatchSource make_batch_source(const std::vector<LabeledInstance>& pos,
                              const std::vector<LabeledInstance>& neg, int batch_size,
                              std::uint64_t seed) {
  RngStream base(seed);
  return [&pos, &neg, batch_size, base](int epoch) {
    return make_batches(pos, neg, batch_size,
                        base.substream("batch/" + std::to_string(epoch)));
  };
}

TrainResult train(MlpModel model, const BatchSource& batches, const TrainConfig& cfg) {
  cfg.validate();
  model.dropout_rate = cfg.dropout;
  model.l1_lambda = cfg.l1_lambda;
  Velocity velocity = zero_velocity(model);
  RngStream dropout_rng = RngStream(cfg.seed).substream("dropout");
  TrainResult result;
  long step_count = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<Batch> epoch_batches = batches(epoch);
    if (epoch_batches.empty()) throw ValidationError("batch source produced no batches");
    double epoch_loss = 0.0;
    for (const auto& batch : epoch_batches) {
      Gradients accum = zero_gradients(model);
      double batch_loss = 0.0;
      ForwardCache cache;
      for (const auto& inst : batch.instances) {
        forward(model, inst.features.values, RunMode::kTrain, dropout_rng, &cache);
        batch_loss += loss(cache.y_c, cache.y_r, inst, model, cfg.loss_weights);
        Gradients g = backward(model, cache, inst, cfg.loss_weights);
        for (int i = 0; i < model.depth(); ++i) add_layer(accum.hidden[i], g.hidden[i]);
        add_layer(accum.cred, g.cred);
        add_layer(accum.repair, g.repair);
      }
      // One step per batch on the mean gradient.
      const double inv = 1.0 / static_cast<double>(batch.size());
      for (auto& layer : accum.hidden) scale_layer(layer, inv);
      scale_layer(accum.cred, inv);
      scale_layer(accum.repair, inv);
      sgd_step(model, accum, velocity, cfg, step_count);
      ++step_count;
      epoch_loss += batch_loss * inv;
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(epoch_batches.size()));
  }
  result.model = std::move(model);
  return result;
}

Verdict predict(const MlpModel& model, const std::vector<double>& x,
                int cannot_repair_index) {
  RngStream unused(0);
  ForwardResult out = forward(model, x, RunMode::kInfer, unused);
  Verdict verdict;
  verdict.credibility_score = out.y_c;
  verdict.credible = out.y_c >= 0.5;
  verdict.ranking.resize(out.y_r.size());
  std::iota(verdict.ranking.begin(), verdict.ranking.end(), 0);
  std::stable_sort(verdict.ranking.begin(), verdict.ranking.end(), [&](int a, int b) {
    if (out.y_r[a] != out.y_r[b]) return out.y_r[a] > out.y_r[b];
    return a < b;  // ties broken by class index
  });
  if (!verdict.credible) {
    int top = verdict.ranking.front();
    if (top == cannot_repair_index) {
      verdict.unrepairable = true;
    } else {
      verdict.repair = top;
    }
  }
  return verdict;
}

namespace {

constexpr char kModelMagic[8] = {'C', 'R', 'M', 'L', 'P', 'B', 'I', 'N'};
constexpr std::uint32_t kModelVersion = 1;

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

void put_layer(std::ostream& out, const Layer& layer) {
  for (double v : layer.w.a) put_f64(out, v);
  for (double v : layer.b) put_f64(out, v);
}

Layer get_layer(std::istream& in, int rows, int cols, const std::filesystem::path& path) {
  Layer layer;
  layer.w = Mat(rows, cols);
  for (auto& v : layer.w.a) v = get_f64(in, path);
  layer.b.resize(rows);
  for (auto& v : layer.b) v = get_f64(in, path);
  return layer;
}

}  // namespace

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kModelMagic, sizeof(kModelMagic));
  put_u32(out, kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(model.e));
  put_u32(out, static_cast<std::uint32_t>(model.n));
  put_u32(out, static_cast<std::uint32_t>(model.r));
  put_u32(out, static_cast<std::uint32_t>(model.depth()));
  put_u32(out, static_cast<std::uint32_t>(model.activation));
  put_f64(out, model.dropout_rate);
  put_f64(out, model.l1_lambda);
  for (const auto& layer : model.hidden) put_layer(out, layer);
  put_layer(out, model.cred);
  put_layer(out, model.repair);
  if (!out) throw IoError("failed writing " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kModelMagic, 8) != 0) {
    throw ParseError(path.string() + ": not a model file");
  }
  std::uint32_t version = get_u32(in, path);
  if (version != kModelVersion) {
    throw ParseError(path.string() + ": unsupported model version " +
                     std::to_string(version));
  }
  MlpModel model;
  model.e = static_cast<int>(get_u32(in, path));
  model.n = static_cast<int>(get_u32(in, path));
  model.r = static_cast<int>(get_u32(in, path));
  int depth = static_cast<int>(get_u32(in, path));
  std::uint32_t act = get_u32(in, path);
  if (act > 1) throw ParseError(path.string() + ": unknown activation code");
  model.activation = static_cast<Activation>(act);
  model.dropout_rate = get_f64(in, path);
  model.l1_lambda = get_f64(in, path);
  if (model.e < 0 || model.n <= 0 || model.r < 2 || depth < 1 || depth > 64) {
    throw ParseError(path.string() + ": implausible model dimensions");
  }
  const int d = model.input_dim();
  for (int i = 0; i < depth; ++i) model.hidden.push_back(get_layer(in, d, d, path));
  model.cred = get_layer(in, 1, d, path);
  model.repair = get_layer(in, model.r, d, path);
  char extra;
  if (in.read(&extra, 1)) {
    throw ParseError(path.string() + ": corrupt model file (trailing data)");
  }
  return model;
}

bool models_equal(const MlpModel& a, const MlpModel& b) {
  auto layer_eq = [](const Layer& x, const Layer& y) {
    return x.w.rows == y.w.rows && x.w.cols == y.w.cols && x.w.a == y.w.a && x.b == y.b;
  };
  if (a.e != b.e || a.n != b.n || a.r != b.r || a.depth() != b.depth() ||
      a.activation != b.activation || a.dropout_rate != b.dropout_rate ||
      a.l1_lambda != b.l1_lambda) {
    return false;
  }
  for (int i = 0; i < a.depth(); ++i) {
    if (!layer_eq(a.hidden[i], b.hidden[i])) return false;
  }
  return layer_eq(a.cred, b.cred) && layer_eq(a.repair, b.repair);
}

}  // namespace credrepair
