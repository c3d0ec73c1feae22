#include "credrepair/sampler.hpp"

#include <algorithm>
#include <unordered_set>

#include "credrepair/error.hpp"

namespace credrepair {

namespace {

std::vector<std::string> distinct_sorted(const std::vector<Fact>& pool,
                                         const std::string Fact::* field) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& f : pool) {
    if (seen.insert(f.*field).second) out.push_back(f.*field);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
const T& draw_excluding(const std::vector<T>& candidates, const T& excluded,
                        RngStream& rng, const char* what) {
  std::size_t excluded_count = std::count(candidates.begin(), candidates.end(), excluded);
  if (candidates.size() <= excluded_count) {
    throw ValidationError(std::string("no alternative ") + what + " to sample from");
  }
  while (true) {
    const T& pick = candidates[rng.uniform_index(candidates.size())];
    if (pick != excluded) return pick;
  }
}

Fact corrupt(const Fact& pos, const std::vector<std::string>& objects,
             const std::vector<std::string>& doc_ids, const RelationCatalog& catalog,
             RngStream& rng) {
  if (catalog.num_real_relations() < 2) {
    throw ValidationError("negative sampling needs at least 2 relations in the catalog");
  }
  Fact neg;
  neg.subject = pos.subject;  // subject is fixed
  int original = catalog.index_of(pos.relation).value_or(-1);
  while (true) {
    int pick = static_cast<int>(rng.uniform_index(catalog.num_real_relations()));
    if (pick != original) {
      neg.relation = catalog.relation(pick).name;
      break;
    }
  }
  neg.object = draw_excluding(objects, pos.object, rng, "object");
  neg.doc_id = doc_ids[rng.uniform_index(doc_ids.size())];
  neg.gold_credible = false;
  neg.gold_repair = kCannotRepair;
  neg.faux = true;
  return neg;
}

}  // namespace

NegativeSampler::NegativeSampler(const std::vector<Fact>& pool,
                                 const RelationCatalog& catalog)
    : catalog_(catalog),
      objects_(distinct_sorted(pool, &Fact::object)),
      doc_ids_(distinct_sorted(pool, &Fact::doc_id)) {
  if (pool.empty()) throw ValidationError("negative sampling pool is empty");
}

Fact NegativeSampler::sample(const Fact& pos, RngStream& rng) const {
  return corrupt(pos, objects_, doc_ids_, catalog_, rng);
}

Fact sample_negative(const Fact& pos, const std::vector<Fact>& pool,
                     const RelationCatalog& catalog, RngStream& rng) {
  if (pool.empty()) throw ValidationError("negative sampling pool is empty");
  return corrupt(pos, distinct_sorted(pool, &Fact::object),
                 distinct_sorted(pool, &Fact::doc_id), catalog, rng);
}

std::vector<Batch> make_batches(const std::vector<LabeledInstance>& pos,
                                const std::vector<LabeledInstance>& neg, int batch_size,
                                RngStream rng) {
  if (batch_size <= 0 || batch_size % 2 != 0) {
    throw ValidationError("batch_size must be a positive even number");
  }
  if (pos.empty() || neg.empty()) {
    throw ValidationError("make_batches needs nonempty positive and negative sets");
  }
  std::vector<std::size_t> pos_order(pos.size());
  std::vector<std::size_t> neg_order(neg.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos_order[i] = i;
  for (std::size_t i = 0; i < neg.size(); ++i) neg_order[i] = i;
  rng.shuffle(pos_order);
  rng.shuffle(neg_order);

  const std::size_t half = static_cast<std::size_t>(batch_size) / 2;
  std::vector<Batch> batches;
  std::size_t pi = 0;
  std::size_t ni = 0;
  while (pi < pos.size() && ni < neg.size()) {
    std::size_t take = std::min({half, pos.size() - pi, neg.size() - ni});
    Batch batch;
    batch.instances.reserve(2 * take);
    for (std::size_t i = 0; i < take; ++i) batch.instances.push_back(pos[pos_order[pi++]]);
    for (std::size_t i = 0; i < take; ++i) batch.instances.push_back(neg[neg_order[ni++]]);
    batches.push_back(std::move(batch));
  }
  return batches;
}

}  // namespace credrepair
