#pragma once

#include <cstdint>
#include <filesystem>

#include "credrepair/catalog.hpp"
#include "credrepair/corpus.hpp"

namespace credrepair {

// Synthetic corpus generator. Each relation owns disjoint trigger tokens
// registered as the lexical units of its expert frame (and listed in its
// description, so the bag-of-words mapping can rediscover the expert
// mapping). Every positive fact gets a document whose evidence sentences
// mention the subject, the object, and a trigger -- each with probability
// signal_strength, otherwise a random stand-in. Documents also carry
// decoy evidence about random entities and filler-only sentences, so at
// signal_strength 0 positives and faux negatives are indistinguishable.
struct SynthConfig {
  int num_relations = 5;
  int facts_per_relation = 200;
  int vocab_size = 100;  // filler word inventory
  double signal_strength = 1.0;
  std::uint64_t seed = 17;

  int embedding_dim = 16;
  int triggers_per_relation = 2;
  int subject_pool = 0;  // 0: derived from corpus size
  int object_pool = 0;
};

struct SyntheticCorpus {
  RelationCatalog catalog;
  std::vector<Fact> facts;
  DocumentStore documents;
  EmbeddingTable embeddings;
};

SyntheticCorpus gen_synthetic(const SynthConfig& cfg);

// Writes catalog.json, facts.jsonl, documents.jsonl, embeddings.txt.
void save_synthetic(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

}  // namespace credrepair
