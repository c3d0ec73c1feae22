#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "credrepair/error.hpp"
#include "credrepair/features.hpp"
#include "test_util.hpp"

using namespace credrepair;

namespace {

Fact any_fact() {
  Fact f;
  f.subject = "a";
  f.relation = "r";
  f.object = "b";
  f.doc_id = "d";
  return f;
}

RelevantSentence with_flags(const std::string& text, RelevanceFlags flags) {
  return {text, flags};
}

}  // namespace

TEST_CASE("all-OOV sentences give a zero embedding part") {
  EmbeddingTable emb(4);
  emb.insert("known", {1, 2, 3, 4});
  RelevanceFlags f;
  f.subject_match = true;
  auto fv = build_features(any_fact(), {with_flags("zz yy xx", f)}, emb);
  REQUIRE(fv.size() == 4 + kNumRelevanceFlags);
  for (int i = 0; i < 4; ++i) CHECK(fv.values[i] == 0.0);
  CHECK(fv.values[4] == 1.0);  // subject_match
}

TEST_CASE("flag part is the componentwise OR in fixed order") {
  EmbeddingTable emb(2);
  RelevanceFlags f1;
  f1.subject_match = true;
  RelevanceFlags f2;
  f2.object_match = true;
  auto fv = build_features(any_fact(), {with_flags("x", f1), with_flags("y", f2)}, emb);
  std::vector<double> expected = {1, 0, 1, 0, 0, 0, 0};
  for (int i = 0; i < kNumRelevanceFlags; ++i) CHECK(fv.values[2 + i] == expected[i]);
}

TEST_CASE("embedding part is the mean over the concatenated token stream") {
  EmbeddingTable emb(2);
  emb.insert("one", {1, 0});
  emb.insert("two", {0, 1});
  RelevanceFlags f;
  f.subject_match = true;
  auto fv = build_features(any_fact(), {with_flags("one two", f)}, emb);
  CHECK(fv.values[0] == doctest::Approx(0.5));
  CHECK(fv.values[1] == doctest::Approx(0.5));

  // OOV tokens stay in the denominator.
  auto fv2 = build_features(any_fact(), {with_flags("one two zzz zzz", f)}, emb);
  CHECK(fv2.values[0] == doctest::Approx(0.25));
  CHECK(fv2.values[1] == doctest::Approx(0.25));

  // Flat pooling: one sentence with all tokens equals two sentences
  // holding the same tokens.
  auto fv3 =
      build_features(any_fact(), {with_flags("one", f), with_flags("two", f)}, emb);
  CHECK(fv3.values[0] == doctest::Approx(0.5));
  CHECK(fv3.values[1] == doctest::Approx(0.5));
}

TEST_CASE("empty sentence list is rejected") {
  EmbeddingTable emb(2);
  CHECK_THROWS_AS(build_features(any_fact(), {}, emb), ValidationError);
}

TEST_CASE("feature vector is invariant under sentence permutation") {
  EmbeddingTable emb(3);
  emb.insert("a", {1, 2, 3});
  emb.insert("b", {-1, 0, 1});
  emb.insert("c", {0.5, 0.5, 0.5});
  RelevanceFlags f1;
  f1.subject_match = true;
  RelevanceFlags f2;
  f2.frame_trigger = true;
  RelevanceFlags f3;
  f3.object_paraphrase = true;
  std::vector<RelevantSentence> sentences = {with_flags("a b", f1), with_flags("c", f2),
                                             with_flags("a c b", f3)};
  auto base = build_features(any_fact(), sentences, emb);
  std::sort(sentences.begin(), sentences.end(),
            [](const auto& x, const auto& y) { return x.text > y.text; });
  auto permuted = build_features(any_fact(), sentences, emb);
  CHECK(base.values == permuted.values);
}

TEST_CASE("embedding part never exceeds the vocabulary's max magnitude") {
  EmbeddingTable emb(2);
  emb.insert("a", {0.9, -0.3});
  emb.insert("b", {-0.7, 0.8});
  double vocab_max = 0.9;
  RelevanceFlags flags;
  flags.subject_match = true;
  auto fv = build_features(
      any_fact(), {with_flags("a b a zz", flags), with_flags("b b", flags)}, emb);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(fv.values[i]) <= vocab_max);
}

TEST_CASE("feature cache round-trips") {
  EmbeddingTable emb(2);
  emb.insert("one", {1, 0});
  RelevanceFlags f;
  f.predicate_alias = true;
  std::vector<CachedFeatures> entries;
  entries.push_back({"0", build_features(any_fact(), {with_flags("one", f)}, emb)});
  entries.push_back({"fact-17", build_features(any_fact(), {with_flags("zz", f)}, emb)});

  testutil::TempDir tmp;
  write_feature_cache(entries, 2, tmp.file("cache.bin"));
  auto loaded = read_feature_cache(tmp.file("cache.bin"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "0");
  CHECK(loaded[1].id == "fact-17");
  CHECK(loaded[0].features.values == entries[0].features.values);
  CHECK(loaded[1].features.values == entries[1].features.values);
  CHECK(loaded[0].features.e == 2);

  // Truncation is detected.
  auto bytes = testutil::read_file(tmp.file("cache.bin"));
  testutil::write_file(tmp.file("trunc.bin"), bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(read_feature_cache(tmp.file("trunc.bin")), ParseError);
}
