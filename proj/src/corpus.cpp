#include "credrepair/corpus.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "credrepair/error.hpp"
#include "credrepair/rng.hpp"

namespace credrepair {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_record(const std::string& line, const std::filesystem::path& path, int lineno) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

}  // namespace

void DocumentStore::add(Document doc) {
  std::string id = doc.doc_id;
  if (!docs_.emplace(id, std::move(doc)).second) {
    throw ValidationError("duplicate doc_id '" + id + "'");
  }
  ids_.push_back(std::move(id));
}

const Document* DocumentStore::find(const std::string& doc_id) const {
  auto it = docs_.find(doc_id);
  return it == docs_.end() ? nullptr : &it->second;
}

EmbeddingTable::EmbeddingTable(int dimension) : dimension_(dimension) {
  if (dimension <= 0) throw ValidationError("embedding dimension must be positive");
  zeros_.assign(dimension, 0.0);
}

bool EmbeddingTable::insert(const std::string& word, std::vector<double> vec) {
  if (static_cast<int>(vec.size()) != dimension_) {
    throw ValidationError("embedding for '" + word + "' has length " +
                          std::to_string(vec.size()) + ", expected " +
                          std::to_string(dimension_));
  }
  return vectors_.emplace(word, std::move(vec)).second;
}

std::span<const double> EmbeddingTable::lookup(const std::string& word) const {
  auto it = vectors_.find(word);
  if (it == vectors_.end()) return zeros_;
  return it->second;
}

std::vector<Fact> load_facts(const std::filesystem::path& path,
                             const RelationCatalog& catalog) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Fact> facts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_record(line, path, lineno);
    Fact fact;
    try {
      fact.subject = j.at("subject").get<std::string>();
      fact.relation = j.at("relation").get<std::string>();
      fact.object = j.at("object").get<std::string>();
      fact.doc_id = j.at("doc_id").get<std::string>();
      if (j.contains("gold_credible")) fact.gold_credible = j["gold_credible"].get<bool>();
      if (j.contains("gold_repair")) fact.gold_repair = j["gold_repair"].get<std::string>();
      fact.faux = j.value("faux", false);
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    std::string where = path.string() + ":" + std::to_string(lineno);
    if (fact.subject.empty() || fact.object.empty()) {
      throw ValidationError(where + ": subject and object must be nonempty");
    }
    if (!catalog.index_of(fact.relation)) {
      throw ValidationError(where + ": unknown relation '" + fact.relation + "'");
    }
    if (fact.gold_repair && !catalog.index_of(*fact.gold_repair)) {
      throw ValidationError(where + ": unknown gold_repair relation '" + *fact.gold_repair +
                            "'");
    }
    facts.push_back(std::move(fact));
  }
  return facts;
}

void save_facts(const std::vector<Fact>& facts, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& f : facts) {
    ordered_json j;
    j["subject"] = f.subject;
    j["relation"] = f.relation;
    j["object"] = f.object;
    j["doc_id"] = f.doc_id;
    if (f.gold_credible) j["gold_credible"] = *f.gold_credible;
    if (f.gold_repair) j["gold_repair"] = *f.gold_repair;
    if (f.faux) j["faux"] = true;
    out << j.dump() << "\n";
  }
}

DocumentStore load_documents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  DocumentStore store;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_record(line, path, lineno);
    Document doc;
    try {
      doc.doc_id = j.at("doc_id").get<std::string>();
      doc.sentences = j.value("sentences", std::vector<std::string>{});
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    store.add(std::move(doc));
  }
  return store;
}

void save_documents(const DocumentStore& docs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& id : docs.ids()) {
    const Document* doc = docs.find(id);
    ordered_json j;
    j["doc_id"] = doc->doc_id;
    j["sentences"] = doc->sentences;
    out << j.dump() << "\n";
  }
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  std::istringstream header(line);
  long long declared_count = -1;
  int dimension = 0;
  if (!(header >> declared_count >> dimension) || declared_count < 0 || dimension <= 0) {
    throw ParseError(path.string() + ":1: expected header 'vocab_count dimension'");
  }
  EmbeddingTable table(dimension);
  bool warned_duplicate = false;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    std::vector<double> vec;
    vec.reserve(dimension);
    std::string field;
    while (row >> field) {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) +
                         ": non-numeric component '" + field + "'");
      }
      vec.push_back(value);
    }
    if (static_cast<int>(vec.size()) != dimension) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": row has " +
                       std::to_string(vec.size()) + " values, expected " +
                       std::to_string(dimension));
    }
    if (!table.insert(word, std::move(vec)) && !warned_duplicate) {
      std::cerr << "warning: duplicate word '" << word << "' in " << path.string()
                << ", keeping first occurrence\n";
      warned_duplicate = true;
    }
  }
  if (declared_count != static_cast<long long>(table.vocab_size())) {
    std::cerr << "warning: " << path.string() << " declares " << declared_count
              << " words but " << table.vocab_size() << " were loaded\n";
  }
  return table;
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  std::vector<std::string> words;
  words.reserve(table.vocab_size());
  for (const auto& [word, _] : table.vectors()) words.push_back(word);
  std::sort(words.begin(), words.end());
  out << words.size() << " " << table.dimension() << "\n";
  char buf[64];
  for (const auto& word : words) {
    out << word;
    for (double v : table.lookup(word)) {
      int len = std::snprintf(buf, sizeof(buf), " %.17g", v);
      out.write(buf, len);
    }
    out << "\n";
  }
}

std::array<std::size_t, 3> split_sizes(std::size_t n,
                                       const std::array<double, 3>& fractions) {
  double sum = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(sum - 1.0) > 1e-9 || fractions[0] < 0 || fractions[1] < 0 ||
      fractions[2] < 0) {
    throw ValidationError("split fractions must be nonnegative and sum to 1");
  }
  auto rounded = [n](double f) {
    return static_cast<std::size_t>(std::llround(f * static_cast<double>(n)));
  };
  std::size_t n_dev = rounded(fractions[1]);
  std::size_t n_test = rounded(fractions[2]);
  if (n_dev + n_test > n) throw ValidationError("dev+test fractions exceed dataset size");
  return {n - n_dev - n_test, n_dev, n_test};  // remainder to train
}

DatasetSplit split_dataset(const std::vector<Fact>& facts,
                           const std::array<double, 3>& fractions,
                           std::uint64_t seed) {
  const std::size_t n = facts.size();
  auto [n_train, n_dev, n_test] = split_sizes(n, fractions);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  RngStream rng(seed);
  rng.shuffle(order);

  DatasetSplit split;
  split.seed = seed;
  split.train.reserve(n_train);
  split.dev.reserve(n_dev);
  split.test.reserve(n_test);
  for (std::size_t i = 0; i < n; ++i) {
    const Fact& f = facts[order[i]];
    if (i < n_train) {
      split.train.push_back(f);
    } else if (i < n_train + n_dev) {
      split.dev.push_back(f);
    } else {
      split.test.push_back(f);
    }
  }
  return split;
}

}  // namespace credrepair
