#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "credrepair/catalog.hpp"

namespace credrepair {

struct Fact {
  std::string subject;
  std::string relation;
  std::string object;
  std::string doc_id;
  std::optional<bool> gold_credible;
  std::optional<std::string> gold_repair;
  bool faux = false;

  bool operator==(const Fact&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<std::string> sentences;  // may be empty (short articles)
};

class DocumentStore {
 public:
  void add(Document doc);
  const Document* find(const std::string& doc_id) const;
  std::size_t size() const { return docs_.size(); }
  // Ids in insertion order; insertion order is file order, so iteration
  // stays deterministic.
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::unordered_map<std::string, Document> docs_;
  std::vector<std::string> ids_;
};

// word -> dense vector of fixed dimension; unknown words read as zeros.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension);

  int dimension() const { return dimension_; }
  // Keeps the first occurrence on duplicate insert; returns false then.
  bool insert(const std::string& word, std::vector<double> vec);
  std::span<const double> lookup(const std::string& word) const;
  bool contains(const std::string& word) const { return vectors_.count(word) > 0; }
  std::size_t vocab_size() const { return vectors_.size(); }
  const std::unordered_map<std::string, std::vector<double>>& vectors() const {
    return vectors_;
  }

 private:
  int dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<double> zeros_;
};

struct DatasetSplit {
  std::vector<Fact> train;
  std::vector<Fact> dev;
  std::vector<Fact> test;
  std::uint64_t seed = 0;
};

// Newline-delimited JSON records; every relation (and gold_repair) must
// exist in the catalog.
std::vector<Fact> load_facts(const std::filesystem::path& path,
                             const RelationCatalog& catalog);
void save_facts(const std::vector<Fact>& facts, const std::filesystem::path& path);

// Newline-delimited JSON records {doc_id, sentences[]}.
DocumentStore load_documents(const std::filesystem::path& path);
void save_documents(const DocumentStore& docs, const std::filesystem::path& path);

// word2vec text format: `vocab_count dimension` header, then one
// `word v1 ... v_e` row per word. Duplicates keep the first occurrence.
EmbeddingTable load_embeddings(const std::filesystem::path& path);
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);

// Dev/test sizes are the rounded fractions of the total; the remainder
// goes to train.
std::array<std::size_t, 3> split_sizes(std::size_t n, const std::array<double, 3>& fractions);

// Seeded shuffle then partition by split_sizes.
DatasetSplit split_dataset(const std::vector<Fact>& facts,
                           const std::array<double, 3>& fractions,
                           std::uint64_t seed);

}  // namespace credrepair
