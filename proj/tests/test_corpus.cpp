#include <map>
#include <sstream>

#include <doctest.h>

#include "credrepair/corpus.hpp"
#include "credrepair/error.hpp"
#include "test_util.hpp"

using namespace credrepair;

namespace {

RelationCatalog small_catalog() {
  std::vector<RelationDef> rels(2);
  rels[0].name = "place of birth";
  rels[1].name = "spouse";
  return RelationCatalog(std::move(rels));
}

std::vector<Fact> numbered_facts(int n) {
  std::vector<Fact> facts;
  for (int i = 0; i < n; ++i) {
    Fact f;
    f.subject = "s" + std::to_string(i);
    f.relation = i % 2 == 0 ? "place of birth" : "spouse";
    f.object = "o" + std::to_string(i);
    f.doc_id = "d" + std::to_string(i);
    facts.push_back(f);
  }
  return facts;
}

}  // namespace

TEST_CASE("load_facts parses records and validates relations") {
  testutil::TempDir tmp;
  testutil::write_file(
      tmp.file("facts.jsonl"),
      R"({"subject":"obama","relation":"place of birth","object":"honolulu","doc_id":"d1"}
{"subject":"obama","relation":"spouse","object":"michelle","doc_id":"d2","gold_credible":true}
)");
  auto facts = load_facts(tmp.file("facts.jsonl"), small_catalog());
  REQUIRE(facts.size() == 2);
  CHECK(facts[0].subject == "obama");
  CHECK(facts[0].relation == "place of birth");
  CHECK(facts[0].object == "honolulu");
  CHECK(facts[0].doc_id == "d1");
  CHECK_FALSE(facts[0].gold_credible.has_value());
  CHECK(facts[1].gold_credible == true);

  testutil::write_file(
      tmp.file("bad.jsonl"),
      R"({"subject":"a","relation":"sibling","object":"b","doc_id":"d"}
)");
  CHECK_THROWS_WITH_AS(load_facts(tmp.file("bad.jsonl"), small_catalog()),
                       doctest::Contains("sibling"), ValidationError);
}

TEST_CASE("facts round-trip through save/load") {
  testutil::TempDir tmp;
  std::vector<Fact> facts = numbered_facts(7);
  facts[2].gold_credible = false;
  facts[2].gold_repair = kCannotRepair;
  facts[2].faux = true;
  save_facts(facts, tmp.file("facts.jsonl"));
  auto loaded = load_facts(tmp.file("facts.jsonl"), small_catalog());
  CHECK(loaded == facts);
}

TEST_CASE("load_documents rejects duplicate ids") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("docs.jsonl"),
                       R"({"doc_id":"d1","sentences":["a b c","d e"]}
{"doc_id":"d2","sentences":[]}
)");
  DocumentStore store = load_documents(tmp.file("docs.jsonl"));
  CHECK(store.size() == 2);
  REQUIRE(store.find("d1") != nullptr);
  CHECK(store.find("d1")->sentences.size() == 2);
  CHECK(store.find("d2")->sentences.empty());
  CHECK(store.find("nope") == nullptr);

  testutil::write_file(tmp.file("dup.jsonl"),
                       R"({"doc_id":"d1","sentences":[]}
{"doc_id":"d1","sentences":[]}
)");
  CHECK_THROWS_AS(load_documents(tmp.file("dup.jsonl")), ValidationError);
}

TEST_CASE("load_embeddings parses the word2vec text format") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("emb.txt"), "2 3\na 1.0 2.0 3.0\nb 0.5 -0.25 0\n");
  EmbeddingTable table = load_embeddings(tmp.file("emb.txt"));
  CHECK(table.dimension() == 3);
  CHECK(table.vocab_size() == 2);
  auto a = table.lookup("a");
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 1.0);
  CHECK(a[2] == 3.0);

  // OOV lookup is the zero vector of length e.
  auto missing = table.lookup("zzz_unknown");
  REQUIRE(missing.size() == 3);
  CHECK(missing[0] == 0.0);
  CHECK(missing[1] == 0.0);
  CHECK(missing[2] == 0.0);
}

TEST_CASE("load_embeddings rejects malformed rows with row numbers") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("short.txt"), "2 3\na 1.0 2.0 3.0\nb 0.5 1.5\n");
  CHECK_THROWS_WITH_AS(load_embeddings(tmp.file("short.txt")), doctest::Contains(":3"),
                       ParseError);
  testutil::write_file(tmp.file("nonnum.txt"), "1 2\na 1.0 oops\n");
  CHECK_THROWS_AS(load_embeddings(tmp.file("nonnum.txt")), ParseError);
  testutil::write_file(tmp.file("nohdr.txt"), "word 1.0 2.0\n");
  CHECK_THROWS_AS(load_embeddings(tmp.file("nohdr.txt")), ParseError);
}

TEST_CASE("duplicate embedding words keep the first occurrence") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("dup.txt"), "2 2\na 1.0 1.0\na 9.0 9.0\n");
  EmbeddingTable table = load_embeddings(tmp.file("dup.txt"));
  CHECK(table.vocab_size() == 1);
  CHECK(table.lookup("a")[0] == 1.0);
}

TEST_CASE("embeddings round-trip exactly through save/load") {
  EmbeddingTable table(3);
  table.insert("alpha", {0.1, -0.2, 1.0 / 3.0});
  table.insert("beta", {1e-17, 123456.789, -0.0});
  testutil::TempDir tmp;
  save_embeddings(table, tmp.file("emb.txt"));
  EmbeddingTable loaded = load_embeddings(tmp.file("emb.txt"));
  REQUIRE(loaded.vocab_size() == 2);
  for (const auto& word : {"alpha", "beta"}) {
    auto a = table.lookup(word);
    auto b = loaded.lookup(word);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("split_dataset partitions facts exactly") {
  auto facts = numbered_facts(10);
  DatasetSplit split = split_dataset(facts, {0.8, 0.1, 0.1}, 7);
  CHECK(split.train.size() == 8);
  CHECK(split.dev.size() == 1);
  CHECK(split.test.size() == 1);

  // Partition: multiset equality with the input.
  std::map<std::string, int> seen;
  for (const auto& f : split.train) ++seen[f.subject];
  for (const auto& f : split.dev) ++seen[f.subject];
  for (const auto& f : split.test) ++seen[f.subject];
  CHECK(seen.size() == 10);
  for (const auto& [_, count] : seen) CHECK(count == 1);

  // Determinism: same seed, identical member lists.
  DatasetSplit again = split_dataset(facts, {0.8, 0.1, 0.1}, 7);
  CHECK(split.train == again.train);
  CHECK(split.dev == again.dev);
  CHECK(split.test == again.test);

  DatasetSplit other = split_dataset(facts, {0.8, 0.1, 0.1}, 8);
  CHECK(split.train != other.train);
}

TEST_CASE("split_dataset mirrors the corpus ratios at 1:1000 scale") {
  auto facts = numbered_facts(663);
  const double total = 663164.0;
  DatasetSplit split =
      split_dataset(facts, {463164.0 / total, 100000.0 / total, 100000.0 / total}, 3);
  CHECK(split.train.size() == 463);
  CHECK(split.dev.size() == 100);
  CHECK(split.test.size() == 100);

  // The full-scale sizes come out exactly.
  auto sizes =
      split_sizes(663164, {463164.0 / total, 100000.0 / total, 100000.0 / total});
  CHECK(sizes[0] == 463164);
  CHECK(sizes[1] == 100000);
  CHECK(sizes[2] == 100000);
}

TEST_CASE("split_dataset validates fractions") {
  auto facts = numbered_facts(4);
  CHECK_THROWS_AS(split_dataset(facts, {0.5, 0.1, 0.1}, 1), ValidationError);
  CHECK_THROWS_AS(split_dataset(facts, {1.2, -0.1, -0.1}, 1), ValidationError);
}
