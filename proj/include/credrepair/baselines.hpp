#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "credrepair/corpus.hpp"
#include "credrepair/relevance.hpp"

namespace credrepair {

// index -> value map; zeros are never stored.
struct SparseVector {
  std::map<int, double> values;
  int dimension = 0;
};

// Frozen token inventory built from the training split only. Tokens keep
// their order of first occurrence so indices are reproducible.
struct Vocabulary {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, int> index;
  std::vector<int> df;  // number of training bags containing the token
  int num_docs = 0;     // number of training bags

  int size() const { return static_cast<int>(tokens.size()); }
};

Vocabulary build_vocabulary(const std::vector<std::vector<RelevantSentence>>& bags);

// `token<TAB>index<TAB>df` with a `#num_docs<TAB>N` header line.
void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocabulary(const std::filesystem::path& path);

// Token frequencies restricted to the vocabulary.
SparseVector bow_count(const std::vector<RelevantSentence>& sentences,
                       const Vocabulary& vocab);
// Presence indicators: sign(bow_count) elementwise.
SparseVector bow_binary(const std::vector<RelevantSentence>& sentences,
                        const Vocabulary& vocab);
// tf * idf with idf = ln((1+N)/(1+df)) + 1, then L2-normalized.
SparseVector tfidf(const std::vector<RelevantSentence>& sentences,
                   const Vocabulary& vocab);

std::vector<double> w2v_sum(const std::vector<RelevantSentence>& sentences,
                            const EmbeddingTable& emb);
std::vector<double> w2v_avg(const std::vector<RelevantSentence>& sentences,
                            const EmbeddingTable& emb);

enum class FeaturizerKind { kBowCount, kBowBinary, kW2vSum, kW2vAvg, kTfidf };

FeaturizerKind featurizer_from_string(const std::string& s);
std::string to_string(FeaturizerKind kind);

// Sparse row representation shared by all featurizers (dense outputs use
// contiguous indices). Optionally appends the 7 relevance flags.
struct Featurizer {
  FeaturizerKind kind = FeaturizerKind::kBowBinary;
  Vocabulary vocab;                   // used by bow/tfidf kinds
  const EmbeddingTable* emb = nullptr;  // used by w2v kinds; not owned
  bool append_flags = false;

  int dim() const;
  std::vector<std::pair<int, double>> row(
      const std::vector<RelevantSentence>& sentences) const;
};

enum class LrTask { kCredibility, kRepair };

struct LrWeights {
  std::vector<double> w;
  double b = 0.0;
};

// L1-regularized logistic model. The repair task is one-vs-rest over the
// catalog classes, so per_class holds r weight vectors.
struct LrModel {
  LrTask task = LrTask::kCredibility;
  int feature_dim = 0;
  double penalty = 0.0;
  std::vector<LrWeights> per_class;
};

struct LrProblem {
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<int> labels;  // 0/1
  int dim = 0;
};

struct SolveStats {
  std::vector<double> objective_per_pass;
  int passes = 0;
};

// Objective: mean logistic loss + penalty * ||w||_1 (bias unregularized).
double lr_objective(const LrProblem& problem, const LrWeights& weights, double penalty);

// Proximal gradient descent with a fixed 1/L step; stops at 1e-6 relative
// objective change or 1000 passes. Monotone by construction.
LrWeights solve_l1_logistic(const LrProblem& problem, double penalty,
                            SolveStats* stats = nullptr);

struct TextInstance {
  std::vector<RelevantSentence> sentences;
  int cred_label = 0;
  int repair_label = 0;
};

LrModel lr_train(const std::vector<TextInstance>& instances, const Featurizer& featurizer,
                 double penalty, LrTask task, int num_classes);

// Per-class scores: sigma(margin) for each class (one entry for the
// credibility task).
std::vector<double> lr_scores(const LrModel& model,
                              const std::vector<std::pair<int, double>>& row);

}  // namespace credrepair
