#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "credrepair/corpus.hpp"
#include "credrepair/relevance.hpp"

namespace credrepair {

// Model input x_f: averaged sentence embedding followed by the 7 binary
// relevance flags, always length e + 7.
struct FeatureVector {
  std::vector<double> values;
  int e = 0;
  int n = kNumRelevanceFlags;

  int size() const { return e + n; }
};

// Embedding part: mean of the word vectors over the concatenated token
// stream of all sentences (out-of-vocabulary tokens contribute zero
// vectors and still count in the denominator). Flag part: componentwise OR
// over the sentences' flags.
FeatureVector build_features(const Fact& fact,
                             const std::vector<RelevantSentence>& sentences,
                             const EmbeddingTable& embeddings);

// Binary feature cache: versioned header carrying (e, n), then
// (fact id, e+n doubles) records.
struct CachedFeatures {
  std::string id;
  FeatureVector features;
};
void write_feature_cache(const std::vector<CachedFeatures>& entries, int e,
                         const std::filesystem::path& path);
std::vector<CachedFeatures> read_feature_cache(const std::filesystem::path& path);

}  // namespace credrepair
