#include "credrepair/synth.hpp"

#include <algorithm>

#include "credrepair/error.hpp"
#include "credrepair/rng.hpp"

namespace credrepair {

namespace {

std::string subject_word(int i) { return "subj" + std::to_string(i); }
std::string object_word(int i) { return "objt" + std::to_string(i); }
std::string filler_word(int i) { return "word" + std::to_string(i); }
std::string trigger_word(int rel, int t) {
  return "trigger" + std::to_string(rel) + "x" + std::to_string(t);
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

SyntheticCorpus gen_synthetic(const SynthConfig& cfg) {
  if (cfg.num_relations < 2 || cfg.facts_per_relation < 1 || cfg.vocab_size < 1 ||
      cfg.embedding_dim < 1 || cfg.triggers_per_relation < 1 ||
      cfg.signal_strength < 0.0 || cfg.signal_strength > 1.0) {
    throw ValidationError("invalid synthetic corpus configuration");
  }
  const int total = cfg.num_relations * cfg.facts_per_relation;
  const int n_subjects = cfg.subject_pool > 0 ? cfg.subject_pool : std::max(8, total / 40);
  const int n_objects = cfg.object_pool > 0 ? cfg.object_pool : std::max(6, total / 80);
  RngStream root(cfg.seed);

  SyntheticCorpus corpus;

  // Catalog: descriptions list the trigger tokens so lexical overlap with
  // the frame inventory reproduces the expert mapping.
  std::vector<RelationDef> relations;
  for (int r = 0; r < cfg.num_relations; ++r) {
    RelationDef rel;
    rel.name = "rel" + std::to_string(r);
    FrameDef frame;
    frame.frame_name = "frame_rel" + std::to_string(r);
    std::string description = "links a subject to an object via";
    for (int t = 0; t < cfg.triggers_per_relation; ++t) {
      frame.lexical_units.push_back(trigger_word(r, t));
      description += " " + trigger_word(r, t);
    }
    rel.description = description;
    rel.expert_frames.push_back(std::move(frame));
    relations.push_back(std::move(rel));
  }
  corpus.catalog = RelationCatalog(std::move(relations));

  auto random_subject = [&](RngStream& rng) {
    return subject_word(static_cast<int>(rng.uniform_index(n_subjects)));
  };
  auto random_object = [&](RngStream& rng) {
    return object_word(static_cast<int>(rng.uniform_index(n_objects)));
  };
  auto random_filler = [&](RngStream& rng) {
    return filler_word(static_cast<int>(rng.uniform_index(cfg.vocab_size)));
  };
  auto random_trigger_of = [&](int rel, RngStream& rng) {
    return trigger_word(rel, static_cast<int>(rng.uniform_index(cfg.triggers_per_relation)));
  };

  // Evidence template: "filler subject trigger object trigger". Trigger
  // slots fall back to fillers below full signal strength. The decoy
  // variant draws every slot at random, so at signal 0 genuine and decoy
  // evidence have the same distribution.
  auto trigger_or_filler = [&](int relation, RngStream& rng) {
    return rng.bernoulli(cfg.signal_strength) ? random_trigger_of(relation, rng)
                                              : random_filler(rng);
  };
  auto evidence_sentence = [&](const std::string& subject, const std::string& object,
                               int relation, RngStream& rng) {
    std::string s = rng.bernoulli(cfg.signal_strength) ? subject : random_subject(rng);
    std::string o = rng.bernoulli(cfg.signal_strength) ? object : random_object(rng);
    return join({random_filler(rng), s, trigger_or_filler(relation, rng), o,
                 trigger_or_filler(relation, rng)});
  };
  auto decoy_sentence = [&](RngStream& rng) {
    int rel = static_cast<int>(rng.uniform_index(cfg.num_relations));
    return join({random_filler(rng), random_subject(rng), trigger_or_filler(rel, rng),
                 random_object(rng), trigger_or_filler(rel, rng)});
  };
  auto filler_sentence = [&](RngStream& rng) {
    std::vector<std::string> tokens;
    for (int i = 0; i < 5; ++i) tokens.push_back(random_filler(rng));
    return join(tokens);
  };

  int fact_index = 0;
  for (int r = 0; r < cfg.num_relations; ++r) {
    for (int j = 0; j < cfg.facts_per_relation; ++j) {
      RngStream rng = root.substream("fact/" + std::to_string(fact_index));
      Fact fact;
      fact.subject = random_subject(rng);
      fact.relation = corpus.catalog.relation(r).name;
      fact.object = random_object(rng);
      fact.doc_id = "d" + std::to_string(fact_index);
      fact.gold_credible = true;

      Document doc;
      doc.doc_id = fact.doc_id;
      int n_evidence = 2 + static_cast<int>(rng.uniform_index(3));  // 2..4
      int n_decoy = 1 + static_cast<int>(rng.uniform_index(2));     // 1..2
      int n_filler = static_cast<int>(rng.uniform_index(3));        // 0..2
      for (int i = 0; i < n_evidence; ++i) {
        doc.sentences.push_back(evidence_sentence(fact.subject, fact.object, r, rng));
      }
      for (int i = 0; i < n_decoy; ++i) doc.sentences.push_back(decoy_sentence(rng));
      for (int i = 0; i < n_filler; ++i) doc.sentences.push_back(filler_sentence(rng));
      rng.shuffle(doc.sentences);

      corpus.documents.add(std::move(doc));
      corpus.facts.push_back(std::move(fact));
      ++fact_index;
    }
  }

  // Embeddings: one fixed random vector per word, keyed by the word
  // itself so regeneration is order-independent.
  std::vector<std::string> words;
  for (int i = 0; i < n_subjects; ++i) words.push_back(subject_word(i));
  for (int i = 0; i < n_objects; ++i) words.push_back(object_word(i));
  for (int r = 0; r < cfg.num_relations; ++r) {
    for (int t = 0; t < cfg.triggers_per_relation; ++t) {
      words.push_back(trigger_word(r, t));
    }
  }
  for (int i = 0; i < cfg.vocab_size; ++i) words.push_back(filler_word(i));
  std::sort(words.begin(), words.end());

  corpus.embeddings = EmbeddingTable(cfg.embedding_dim);
  for (const auto& word : words) {
    RngStream wrng = root.substream("emb/" + word);
    std::vector<double> vec(cfg.embedding_dim);
    for (auto& v : vec) v = wrng.uniform(-0.5, 0.5);
    corpus.embeddings.insert(word, std::move(vec));
  }
  return corpus;
}

void save_synthetic(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_catalog(corpus.catalog, dir / "catalog.json");
  save_facts(corpus.facts, dir / "facts.jsonl");
  save_documents(corpus.documents, dir / "documents.jsonl");
  save_embeddings(corpus.embeddings, dir / "embeddings.txt");
}

}  // namespace credrepair
