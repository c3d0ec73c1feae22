#include <algorithm>
#include <set>
#include <unordered_set>

#include <doctest.h>

#include "credrepair/catalog.hpp"
#include "credrepair/error.hpp"
#include "credrepair/rng.hpp"
#include "credrepair/text.hpp"
#include "test_util.hpp"

using namespace credrepair;

namespace {

const char* kThreeRelationCatalog = R"({
  "relations": [
    {"name": "place of birth",
     "aliases": ["born in", "birthplace"],
     "description": "most specific known birth location of a person",
     "expert_frames": [{"frame_name": "Being_born", "lexical_units": ["born", "birth"]}]},
    {"name": "spouse",
     "aliases": ["married to", "wife", "husband"],
     "description": "the subject has the object as their spouse",
     "expert_frames": [{"frame_name": "Personal_relationship", "lexical_units": ["married", "wed"]}]},
    {"name": "educated at",
     "aliases": ["studied at", "alma mater"],
     "description": "educational institution attended by subject",
     "expert_frames": [{"frame_name": "Education_teaching", "lexical_units": ["studied", "graduated"]}]}
  ]
})";

}  // namespace

TEST_CASE("load_catalog appends the reserved class and keeps order") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("catalog.json"), kThreeRelationCatalog);
  RelationCatalog catalog = load_catalog(tmp.file("catalog.json"));
  CHECK(catalog.num_classes() == 4);  // 3 + CANNOT_REPAIR
  CHECK(catalog.num_real_relations() == 3);
  CHECK(catalog.relations().back().name == kCannotRepair);
  CHECK(catalog.cannot_repair_index() == 3);
  CHECK(catalog.index_of("place of birth") == 0);
  CHECK(catalog.index_of("spouse") == 1);
  // Canonical name counts as an alias.
  const auto& aliases = catalog.relation(1).aliases;
  CHECK(std::find(aliases.begin(), aliases.end(), "spouse") != aliases.end());
  CHECK(std::find(aliases.begin(), aliases.end(), "married to") != aliases.end());
}

TEST_CASE("duplicate relation names are rejected by name") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("dup.json"), R"({"relations": [
    {"name": "spouse", "aliases": []},
    {"name": "spouse", "aliases": ["married"]}
  ]})");
  CHECK_THROWS_WITH_AS(load_catalog(tmp.file("dup.json")),
                       doctest::Contains("spouse"), ValidationError);
}

TEST_CASE("malformed catalog reports parse context") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("bad.json"), "{\"relations\": [ {\"name\": ");
  CHECK_THROWS_AS(load_catalog(tmp.file("bad.json")), ParseError);
  testutil::write_file(tmp.file("empty_units.json"),
                       R"({"relations": [{"name": "x", "expert_frames":
                       [{"frame_name": "F", "lexical_units": []}]}]})");
  CHECK_THROWS_AS(load_catalog(tmp.file("empty_units.json")), ValidationError);
}

TEST_CASE("catalog round-trips through save/load") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("catalog.json"), kThreeRelationCatalog);
  RelationCatalog first = load_catalog(tmp.file("catalog.json"));
  save_catalog(first, tmp.file("saved.json"));
  RelationCatalog second = load_catalog(tmp.file("saved.json"));
  REQUIRE(first.num_classes() == second.num_classes());
  for (int i = 0; i < first.num_classes(); ++i) {
    CHECK(first.relation(i) == second.relation(i));
  }
  // And a second save emits identical bytes.
  save_catalog(second, tmp.file("saved2.json"));
  CHECK(testutil::read_file(tmp.file("saved.json")) ==
        testutil::read_file(tmp.file("saved2.json")));
}

TEST_CASE("alias and paraphrase TSV loading") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("aliases.tsv"),
                       "Barack Obama\tobama\nBarack Obama\tbarack\nhonolulu\tHonolulu Hawaii\n");
  AliasDb db = load_alias_db(tmp.file("aliases.tsv"));
  auto obama = db.lookup("barack obama");
  CHECK(obama.count("barack obama"));  // identity
  CHECK(obama.count("obama"));
  CHECK(obama.count("barack"));
  // Unknown entities map to themselves.
  CHECK(db.lookup("Unknown Person") == std::set<std::string>{"unknown person"});

  testutil::write_file(tmp.file("para.tsv"), "honolulu\tcapital of hawaii\n");
  ParaphraseTable para = load_paraphrase_table(tmp.file("para.tsv"));
  CHECK(para.lookup("Honolulu").count("capital of hawaii"));
  CHECK(para.lookup("paris").empty());

  testutil::write_file(tmp.file("bad.tsv"), "no tab here\n");
  CHECK_THROWS_AS(load_alias_db(tmp.file("bad.tsv")), ParseError);
}

namespace {

RelationCatalog fixture_catalog_5() {
  std::vector<RelationDef> rels;
  const char* names[5] = {"place of birth", "spouse", "employer", "country", "author"};
  const char* descs[5] = {"location where a person was born",
                          "person married to the subject",
                          "organization the person works for",
                          "sovereign state of this item",
                          "writer of the creative work"};
  for (int i = 0; i < 5; ++i) {
    RelationDef r;
    r.name = names[i];
    r.description = descs[i];
    rels.push_back(r);
  }
  return RelationCatalog(std::move(rels));
}

std::vector<FrameDef> fixture_frames_10() {
  return {
      {"Being_born", {"born", "birth"}},
      {"Personal_relationship", {"married", "spouse"}},
      {"Being_employed", {"works", "employer", "job"}},
      {"Political_locales", {"state", "country"}},
      {"Text_creation", {"writer", "wrote", "authored"}},
      {"Travel", {"trip", "journey"}},
      {"Education", {"studied", "school"}},
      {"Creating", {"created", "work"}},
      {"Residence", {"lives", "resides"}},
      {"Location", {"location", "place"}},
  };
}

// Brute-force oracle: pairwise set intersection over stopword-filtered
// token bags, independent of the implementation's mapping loop.
std::set<std::string> oracle_mapping(const RelationDef& rel,
                                     const std::vector<FrameDef>& frames) {
  std::set<std::string> bag;
  for (const auto& t : tokenize(rel.description)) {
    if (!is_stopword(t)) bag.insert(t);
  }
  for (const auto& a : rel.aliases) {
    for (const auto& t : tokenize(a)) {
      if (!is_stopword(t)) bag.insert(t);
    }
  }
  std::set<std::string> mapped;
  for (const auto& frame : frames) {
    std::set<std::string> units;
    for (const auto& u : frame.lexical_units) {
      for (const auto& t : tokenize(u)) units.insert(t);
    }
    std::set<std::string> inter;
    std::set_intersection(bag.begin(), bag.end(), units.begin(), units.end(),
                          std::inserter(inter, inter.begin()));
    if (!inter.empty()) mapped.insert(frame.frame_name);
  }
  return mapped;
}

std::set<std::string> names_of(const std::vector<FrameDef>& frames) {
  std::set<std::string> names;
  for (const auto& f : frames) names.insert(f.frame_name);
  return names;
}

}  // namespace

TEST_CASE("auto_frame_mapping equals the brute-force intersection oracle") {
  RelationCatalog catalog = fixture_catalog_5();
  std::vector<FrameDef> frames = fixture_frames_10();
  RelationCatalog mapped = auto_frame_mapping(catalog, frames);
  for (int i = 0; i < mapped.num_real_relations(); ++i) {
    CHECK(names_of(mapped.relation(i).auto_frames) ==
          oracle_mapping(catalog.relation(i), frames));
  }
  // "place of birth": "born" overlaps Being_born, "place"/"location" overlap Location
  CHECK(names_of(mapped.relation(0).auto_frames) ==
        std::set<std::string>{"Being_born", "Location"});
  CHECK(mapped.relation(mapped.cannot_repair_index()).auto_frames.empty());
}

TEST_CASE("auto_frame_mapping with disjoint tokens maps nothing") {
  std::vector<RelationDef> rels(1);
  rels[0].name = "opaque relation";
  rels[0].description = "zzqx qqzz";
  RelationCatalog catalog(std::move(rels));
  RelationCatalog mapped = auto_frame_mapping(catalog, fixture_frames_10());
  CHECK(mapped.relation(0).auto_frames.empty());
}

TEST_CASE("auto_frame_mapping threshold and single-token overlap") {
  std::vector<RelationDef> rels(1);
  rels[0].name = "birth relation";
  rels[0].description = "born birth place";
  RelationCatalog catalog(std::move(rels));
  std::vector<FrameDef> frames = {{"F", {"born", "bear"}}};
  RelationCatalog mapped = auto_frame_mapping(catalog, frames);
  REQUIRE(mapped.relation(0).auto_frames.size() == 1);
  CHECK(mapped.relation(0).auto_frames[0].frame_name == "F");
  // Raising the threshold above the overlap clears the mapping.
  RelationCatalog strict = auto_frame_mapping(catalog, frames, 3);
  CHECK(strict.relation(0).auto_frames.empty());
}

TEST_CASE("auto_frame_mapping is idempotent and order independent") {
  RelationCatalog catalog = fixture_catalog_5();
  std::vector<FrameDef> frames = fixture_frames_10();
  RelationCatalog once = auto_frame_mapping(catalog, frames);
  RelationCatalog twice = auto_frame_mapping(once, frames);
  for (int i = 0; i < once.num_classes(); ++i) {
    CHECK(once.relation(i).auto_frames == twice.relation(i).auto_frames);
  }
  // Shuffled inventory yields the same mapped set.
  RngStream rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<FrameDef> shuffled = frames;
    rng.shuffle(shuffled);
    RelationCatalog remapped = auto_frame_mapping(catalog, shuffled);
    for (int i = 0; i < once.num_classes(); ++i) {
      CHECK(names_of(remapped.relation(i).auto_frames) ==
            names_of(once.relation(i).auto_frames));
    }
  }
}

TEST_CASE("frame inventory files load and normalize") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.file("frames.json"), R"({"frames": [
    {"frame_name": "Being_born", "lexical_units": ["Born", "born", "birth"]},
    {"frame_name": "Travel", "lexical_units": ["trip"]}
  ]})");
  auto frames = load_frame_inventory(tmp.file("frames.json"));
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].lexical_units == std::vector<std::string>{"born", "birth"});  // deduped
  testutil::write_file(tmp.file("bad.json"), R"({"nope": []})");
  CHECK_THROWS_AS(load_frame_inventory(tmp.file("bad.json")), ParseError);
}

TEST_CASE("expert_frame_inventory deduplicates by frame name") {
  std::vector<RelationDef> rels(2);
  rels[0].name = "a";
  rels[0].expert_frames = {{"F1", {"x"}}, {"F2", {"y"}}};
  rels[1].name = "b";
  rels[1].expert_frames = {{"F2", {"y"}}, {"F3", {"z"}}};
  RelationCatalog catalog(std::move(rels));
  auto inventory = expert_frame_inventory(catalog);
  CHECK(names_of(inventory) == std::set<std::string>{"F1", "F2", "F3"});
}
