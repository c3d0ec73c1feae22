#include "credrepair/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "credrepair/error.hpp"
#include "credrepair/text.hpp"

namespace credrepair {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double ez = std::exp(z);
  return ez / (1.0 + ez);
}

std::map<int, double> token_counts(const std::vector<RelevantSentence>& sentences,
                                   const Vocabulary& vocab) {
  std::map<int, double> counts;
  for (const auto& sentence : sentences) {
    for (const auto& token : tokenize(sentence.text)) {
      auto it = vocab.index.find(token);
      if (it != vocab.index.end()) counts[it->second] += 1.0;
    }
  }
  return counts;
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace

Vocabulary build_vocabulary(const std::vector<std::vector<RelevantSentence>>& bags) {
  Vocabulary vocab;
  vocab.num_docs = static_cast<int>(bags.size());
  for (const auto& bag : bags) {
    std::vector<int> seen_in_bag;
    for (const auto& sentence : bag) {
      for (const auto& token : tokenize(sentence.text)) {
        auto [it, inserted] = vocab.index.try_emplace(token, vocab.size());
        if (inserted) {
          vocab.tokens.push_back(token);
          vocab.df.push_back(0);
        }
        seen_in_bag.push_back(it->second);
      }
    }
    std::sort(seen_in_bag.begin(), seen_in_bag.end());
    seen_in_bag.erase(std::unique(seen_in_bag.begin(), seen_in_bag.end()),
                      seen_in_bag.end());
    for (int idx : seen_in_bag) ++vocab.df[idx];
  }
  return vocab;
}

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "#num_docs\t" << vocab.num_docs << "\n";
  for (int i = 0; i < vocab.size(); ++i) {
    out << vocab.tokens[i] << "\t" << i << "\t" << vocab.df[i] << "\n";
  }
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Vocabulary vocab;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (line.rfind("#num_docs\t", 0) == 0) {
        vocab.num_docs = std::stoi(line.substr(10));
        continue;
      }
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad #num_docs");
    }
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected token<TAB>index<TAB>df");
    }
    std::string token = line.substr(0, t1);
    int index = 0;
    int df = 0;
    try {
      index = std::stoi(line.substr(t1 + 1, t2 - t1 - 1));
      df = std::stoi(line.substr(t2 + 1));
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": non-numeric index or df");
    }
    if (index != vocab.size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": indices must be contiguous from 0");
    }
    vocab.index.emplace(token, index);
    vocab.tokens.push_back(token);
    vocab.df.push_back(df);
  }
  return vocab;
}

SparseVector bow_count(const std::vector<RelevantSentence>& sentences,
                       const Vocabulary& vocab) {
  SparseVector v;
  v.dimension = vocab.size();
  v.values = token_counts(sentences, vocab);
  return v;
}

SparseVector bow_binary(const std::vector<RelevantSentence>& sentences,
                        const Vocabulary& vocab) {
  SparseVector v = bow_count(sentences, vocab);
  for (auto& [_, value] : v.values) value = 1.0;
  return v;
}

SparseVector tfidf(const std::vector<RelevantSentence>& sentences,
                   const Vocabulary& vocab) {
  SparseVector v;
  v.dimension = vocab.size();
  double norm_sq = 0.0;
  for (const auto& [idx, tf] : token_counts(sentences, vocab)) {
    double idf =
        std::log((1.0 + vocab.num_docs) / (1.0 + vocab.df[idx])) + 1.0;
    double weight = tf * idf;
    v.values[idx] = weight;
    norm_sq += weight * weight;
  }
  if (norm_sq > 0.0) {
    double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [_, value] : v.values) value *= inv;
  }
  return v;
}

std::vector<double> w2v_sum(const std::vector<RelevantSentence>& sentences,
                            const EmbeddingTable& emb) {
  std::vector<double> sum(emb.dimension(), 0.0);
  for (const auto& sentence : sentences) {
    for (const auto& token : tokenize(sentence.text)) {
      auto vec = emb.lookup(token);
      for (int i = 0; i < emb.dimension(); ++i) sum[i] += vec[i];
    }
  }
  return sum;
}

std::vector<double> w2v_avg(const std::vector<RelevantSentence>& sentences,
                            const EmbeddingTable& emb) {
  std::vector<double> sum(emb.dimension(), 0.0);
  std::size_t count = 0;
  for (const auto& sentence : sentences) {
    for (const auto& token : tokenize(sentence.text)) {
      auto vec = emb.lookup(token);
      for (int i = 0; i < emb.dimension(); ++i) sum[i] += vec[i];
      ++count;
    }
  }
  if (count > 0) {
    for (auto& v : sum) v /= static_cast<double>(count);
  }
  return sum;
}

FeaturizerKind featurizer_from_string(const std::string& s) {
  if (s == "bow_count") return FeaturizerKind::kBowCount;
  if (s == "bow_binary") return FeaturizerKind::kBowBinary;
  if (s == "w2v_sum") return FeaturizerKind::kW2vSum;
  if (s == "w2v_avg") return FeaturizerKind::kW2vAvg;
  if (s == "tfidf") return FeaturizerKind::kTfidf;
  throw ValidationError("unknown featurizer '" + s + "'");
}

std::string to_string(FeaturizerKind kind) {
  switch (kind) {
    case FeaturizerKind::kBowCount: return "bow_count";
    case FeaturizerKind::kBowBinary: return "bow_binary";
    case FeaturizerKind::kW2vSum: return "w2v_sum";
    case FeaturizerKind::kW2vAvg: return "w2v_avg";
    case FeaturizerKind::kTfidf: return "tfidf";
  }
  return "?";
}

int Featurizer::dim() const {
  int base = 0;
  switch (kind) {
    case FeaturizerKind::kBowCount:
    case FeaturizerKind::kBowBinary:
    case FeaturizerKind::kTfidf:
      base = vocab.size();
      break;
    case FeaturizerKind::kW2vSum:
    case FeaturizerKind::kW2vAvg:
      base = emb ? emb->dimension() : 0;
      break;
  }
  return base + (append_flags ? kNumRelevanceFlags : 0);
}

std::vector<std::pair<int, double>> Featurizer::row(
    const std::vector<RelevantSentence>& sentences) const {
  std::vector<std::pair<int, double>> out;
  int base = 0;
  switch (kind) {
    case FeaturizerKind::kBowCount:
    case FeaturizerKind::kBowBinary:
    case FeaturizerKind::kTfidf: {
      SparseVector v = kind == FeaturizerKind::kBowCount ? bow_count(sentences, vocab)
                       : kind == FeaturizerKind::kBowBinary
                           ? bow_binary(sentences, vocab)
                           : tfidf(sentences, vocab);
      out.assign(v.values.begin(), v.values.end());
      base = vocab.size();
      break;
    }
    case FeaturizerKind::kW2vSum:
    case FeaturizerKind::kW2vAvg: {
      if (!emb) throw ValidationError("w2v featurizer needs an embedding table");
      std::vector<double> dense = kind == FeaturizerKind::kW2vSum
                                      ? w2v_sum(sentences, *emb)
                                      : w2v_avg(sentences, *emb);
      for (int i = 0; i < static_cast<int>(dense.size()); ++i) {
        if (dense[i] != 0.0) out.emplace_back(i, dense[i]);
      }
      base = emb->dimension();
      break;
    }
  }
  if (append_flags) {
    std::array<bool, kNumRelevanceFlags> flags{};
    for (const auto& s : sentences) {
      auto f = s.flags.as_array();
      for (int i = 0; i < kNumRelevanceFlags; ++i) flags[i] = flags[i] || f[i];
    }
    for (int i = 0; i < kNumRelevanceFlags; ++i) {
      if (flags[i]) out.emplace_back(base + i, 1.0);
    }
  }
  return out;
}

double lr_objective(const LrProblem& problem, const LrWeights& weights, double penalty) {
  const std::size_t m = problem.rows.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double margin = weights.b;
    for (const auto& [idx, val] : problem.rows[i]) margin += weights.w[idx] * val;
    // log(1 + exp(-z)) for y=1, log(1 + exp(z)) for y=0, stable form
    double z = problem.labels[i] == 1 ? margin : -margin;
    loss += z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
  }
  loss /= static_cast<double>(m);
  double l1 = 0.0;
  for (double w : weights.w) l1 += std::abs(w);
  return loss + penalty * l1;
}

LrWeights solve_l1_logistic(const LrProblem& problem, double penalty, SolveStats* stats) {
  if (problem.rows.empty()) throw ValidationError("empty training set");
  if (problem.rows.size() != problem.labels.size()) {
    throw ValidationError("rows/labels size mismatch");
  }
  const std::size_t m = problem.rows.size();
  const int dim = problem.dim;

  // Lipschitz bound for the mean logistic loss gradient (bias included as
  // an implicit all-ones column): trace bound on the Hessian.
  double sq = 0.0;
  for (const auto& row : problem.rows) {
    double s = 1.0;  // bias column
    for (const auto& [_, val] : row) s += val * val;
    sq += s;
  }
  double lipschitz = std::max(sq / (4.0 * static_cast<double>(m)), 1e-12);
  const double step = 1.0 / lipschitz;

  LrWeights weights;
  weights.w.assign(dim, 0.0);
  weights.b = 0.0;

  constexpr int kMaxPasses = 1000;
  constexpr double kRelTol = 1e-6;
  double prev_obj = lr_objective(problem, weights, penalty);
  if (stats) {
    stats->objective_per_pass.clear();
    stats->objective_per_pass.push_back(prev_obj);
  }
  std::vector<double> grad(dim);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double margin = weights.b;
      for (const auto& [idx, val] : problem.rows[i]) margin += weights.w[idx] * val;
      double residual = sigmoid(margin) - static_cast<double>(problem.labels[i]);
      for (const auto& [idx, val] : problem.rows[i]) grad[idx] += residual * val;
      grad_b += residual;
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int j = 0; j < dim; ++j) {
      weights.w[j] = soft_threshold(weights.w[j] - step * grad[j] * inv_m, step * penalty);
    }
    weights.b -= step * grad_b * inv_m;

    double obj = lr_objective(problem, weights, penalty);
    if (stats) {
      stats->objective_per_pass.push_back(obj);
      stats->passes = pass + 1;
    }
    if (std::abs(prev_obj - obj) / std::max(1.0, std::abs(prev_obj)) < kRelTol) break;
    prev_obj = obj;
  }
  return weights;
}

LrModel lr_train(const std::vector<TextInstance>& instances, const Featurizer& featurizer,
                 double penalty, LrTask task, int num_classes) {
  if (instances.empty()) throw ValidationError("lr_train needs a nonempty training set");
  if (penalty < 0) throw ValidationError("penalty must be >= 0");

  LrProblem problem;
  problem.dim = featurizer.dim();
  problem.rows.reserve(instances.size());
  for (const auto& inst : instances) problem.rows.push_back(featurizer.row(inst.sentences));

  LrModel model;
  model.task = task;
  model.feature_dim = problem.dim;
  model.penalty = penalty;

  if (task == LrTask::kCredibility) {
    problem.labels.reserve(instances.size());
    for (const auto& inst : instances) problem.labels.push_back(inst.cred_label);
    bool has_pos = std::find(problem.labels.begin(), problem.labels.end(), 1) !=
                   problem.labels.end();
    bool has_neg = std::find(problem.labels.begin(), problem.labels.end(), 0) !=
                   problem.labels.end();
    if (!has_pos || !has_neg) {
      throw ValidationError("credibility training set has a single class");
    }
    model.per_class.push_back(solve_l1_logistic(problem, penalty));
  } else {
    if (num_classes < 2) throw ValidationError("repair task needs >= 2 classes");
    std::set<int> distinct;
    for (const auto& inst : instances) distinct.insert(inst.repair_label);
    if (distinct.size() < 2) {
      throw ValidationError("repair training set has a single class");
    }
    // one-vs-rest
    for (int c = 0; c < num_classes; ++c) {
      problem.labels.clear();
      for (const auto& inst : instances) {
        problem.labels.push_back(inst.repair_label == c ? 1 : 0);
      }
      model.per_class.push_back(solve_l1_logistic(problem, penalty));
    }
  }
  return model;
}

std::vector<double> lr_scores(const LrModel& model,
                              const std::vector<std::pair<int, double>>& row) {
  std::vector<double> scores;
  scores.reserve(model.per_class.size());
  for (const auto& weights : model.per_class) {
    double margin = weights.b;
    for (const auto& [idx, val] : row) {
      if (idx < model.feature_dim) margin += weights.w[idx] * val;
    }
    scores.push_back(sigmoid(margin));
  }
  return scores;
}

}  // namespace credrepair
