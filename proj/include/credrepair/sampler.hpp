#pragma once

#include <cstdint>
#include <vector>

#include "credrepair/catalog.hpp"
#include "credrepair/corpus.hpp"
#include "credrepair/features.hpp"
#include "credrepair/rng.hpp"

namespace credrepair {

struct LabeledInstance {
  FeatureVector features;
  int cred_label = 0;    // 1 credible, 0 faux
  int repair_label = 0;  // class index; cannot-repair for faux instances
};

// Balanced minibatch: always the same number of positives and negatives.
struct Batch {
  std::vector<LabeledInstance> instances;
  int size() const { return static_cast<int>(instances.size()); }
};

// Faux fact: subject kept, relation redrawn uniformly from the catalog's
// real relations excluding the original, object redrawn uniformly from the
// pool's distinct objects excluding the original, provenance doc redrawn
// uniformly from the pool's distinct doc ids.
Fact sample_negative(const Fact& pos, const std::vector<Fact>& pool,
                     const RelationCatalog& catalog, RngStream& rng);

// Precomputed candidate lists so repeated draws over one pool stay cheap.
class NegativeSampler {
 public:
  NegativeSampler(const std::vector<Fact>& pool, const RelationCatalog& catalog);
  Fact sample(const Fact& pos, RngStream& rng) const;

 private:
  const RelationCatalog& catalog_;
  std::vector<std::string> objects_;  // distinct, sorted
  std::vector<std::string> doc_ids_;  // distinct, sorted
};

// Shuffles positives and negatives independently, then emits batches of
// batch_size/2 positives + batch_size/2 negatives without replacement. The
// trailing batch is truncated to an even split.
std::vector<Batch> make_batches(const std::vector<LabeledInstance>& pos,
                                const std::vector<LabeledInstance>& neg, int batch_size,
                                RngStream rng);

}  // namespace credrepair
