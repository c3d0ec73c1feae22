#include <map>
#include <set>

#include <doctest.h>

#include "credrepair/error.hpp"
#include "credrepair/sampler.hpp"

using namespace credrepair;

namespace {

RelationCatalog catalog_n(int n) {
  std::vector<RelationDef> rels(n);
  for (int i = 0; i < n; ++i) rels[i].name = "r" + std::to_string(i);
  return RelationCatalog(std::move(rels));
}

std::vector<Fact> pool_n(int n) {
  std::vector<Fact> pool;
  for (int i = 0; i < n; ++i) {
    Fact f;
    f.subject = "s" + std::to_string(i);
    f.relation = "r0";
    f.object = "o" + std::to_string(i % 17);
    f.doc_id = "d" + std::to_string(i % 13);
    pool.push_back(f);
  }
  return pool;
}

LabeledInstance instance(int cred, int repair) {
  LabeledInstance inst;
  inst.features.e = 1;
  inst.features.values.assign(1 + kNumRelevanceFlags, 0.0);
  inst.cred_label = cred;
  inst.repair_label = repair;
  return inst;
}

// 0.99 quantile of chi-square; test passes at p > 0.01 when the statistic
// stays below this.
double chi2_crit_99(int dof) {
  switch (dof) {
    case 4: return 13.2767;
    case 16: return 31.9999;
    default: REQUIRE(false);
  }
  return 0;
}

}  // namespace

TEST_CASE("negative keeps the subject and flips relation/object") {
  RelationCatalog catalog = catalog_n(2);
  auto pool = pool_n(20);
  RngStream rng(5);
  for (int i = 0; i < 100; ++i) {
    Fact neg = sample_negative(pool[3], pool, catalog, rng);
    CHECK(neg.subject == pool[3].subject);
    CHECK(neg.relation == "r1");  // only one alternative with 2 relations
    CHECK(neg.object != pool[3].object);
    CHECK(neg.gold_credible == false);
    CHECK(neg.gold_repair == kCannotRepair);
    CHECK(neg.faux);
  }
}

TEST_CASE("negative sampling draws relations uniformly (chi-square)") {
  RelationCatalog catalog = catalog_n(6);  // 5 alternatives for a r0 positive
  auto pool = pool_n(50);
  NegativeSampler sampler(pool, catalog);
  RngStream rng(123);
  std::map<std::string, long> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    Fact neg = sampler.sample(pool[0], rng);
    ++counts[neg.relation];
    CHECK(neg.subject == pool[0].subject);
  }
  REQUIRE(counts.size() == 5);
  CHECK(counts.count("r0") == 0);
  double expected = draws / 5.0;
  double chi2 = 0.0;
  for (const auto& [_, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < chi2_crit_99(4));
}

TEST_CASE("negative sampling draws objects uniformly (chi-square)") {
  RelationCatalog catalog = catalog_n(3);
  auto pool = pool_n(170);  // objects o0..o16
  NegativeSampler sampler(pool, catalog);
  RngStream rng(77);
  std::map<std::string, long> counts;
  const int draws = 17000;
  for (int i = 0; i < draws; ++i) ++counts[sampler.sample(pool[0], rng).object];
  REQUIRE(counts.size() == 16);  // original o0 excluded
  double expected = draws / 16.0;
  double chi2 = 0.0;
  for (const auto& [_, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // dof 15; 0.99 quantile ~ 30.58; use the 16-dof bound as a slack check
  CHECK(chi2 < chi2_crit_99(16));
}

TEST_CASE("negative never equals its source on (relation, object)") {
  RelationCatalog catalog = catalog_n(4);
  auto pool = pool_n(30);
  RngStream rng(9);
  for (int i = 0; i < 500; ++i) {
    const Fact& pos = pool[i % pool.size()];
    Fact neg = sample_negative(pos, pool, catalog, rng);
    CHECK((neg.relation != pos.relation || neg.object != pos.object));
    CHECK(neg.relation != pos.relation);
    CHECK(neg.object != pos.object);
  }
}

TEST_CASE("degenerate sampling inputs are rejected") {
  auto pool = pool_n(5);
  RngStream rng(1);
  CHECK_THROWS_AS(sample_negative(pool[0], pool, catalog_n(1), rng), ValidationError);

  // All pool objects equal the original: no alternative object.
  std::vector<Fact> same;
  for (int i = 0; i < 4; ++i) {
    Fact f;
    f.subject = "s";
    f.relation = "r0";
    f.object = "same";
    f.doc_id = "d" + std::to_string(i);
    same.push_back(f);
  }
  CHECK_THROWS_AS(sample_negative(same[0], same, catalog_n(3), rng), ValidationError);
  CHECK_THROWS_AS(sample_negative(pool[0], {}, catalog_n(3), rng), ValidationError);
}

TEST_CASE("make_batches yields balanced batches") {
  std::vector<LabeledInstance> pos(64, instance(1, 0));
  std::vector<LabeledInstance> neg(64, instance(0, 2));
  auto batches = make_batches(pos, neg, 64, RngStream(4));
  REQUIRE(batches.size() == 2);
  for (const auto& batch : batches) {
    CHECK(batch.size() == 64);
    int p = 0;
    for (const auto& inst : batch.instances) p += inst.cred_label;
    CHECK(p == 32);
  }
}

TEST_CASE("odd batch sizes are rejected") {
  std::vector<LabeledInstance> pos(4, instance(1, 0));
  std::vector<LabeledInstance> neg(4, instance(0, 1));
  CHECK_THROWS_AS(make_batches(pos, neg, 63, RngStream(1)), ValidationError);
  CHECK_THROWS_AS(make_batches(pos, {}, 4, RngStream(1)), ValidationError);
}

TEST_CASE("every positive appears exactly once per epoch") {
  std::vector<LabeledInstance> pos;
  std::vector<LabeledInstance> neg;
  for (int i = 0; i < 50; ++i) pos.push_back(instance(1, i));
  for (int i = 0; i < 50; ++i) neg.push_back(instance(0, 100 + i));
  auto batches = make_batches(pos, neg, 16, RngStream(2));
  std::map<int, int> seen;
  int total = 0;
  for (const auto& batch : batches) {
    int bp = 0;
    int bn = 0;
    for (const auto& inst : batch.instances) {
      ++seen[inst.repair_label];
      ++total;
      (inst.cred_label == 1 ? bp : bn) += 1;
    }
    CHECK(bp == bn);  // balanced, including the trailing batch
  }
  CHECK(total == 100);
  CHECK(seen.size() == 100);
  for (const auto& [_, count] : seen) CHECK(count == 1);
}

TEST_CASE("trailing batch is truncated to an even split") {
  std::vector<LabeledInstance> pos(10, instance(1, 0));
  std::vector<LabeledInstance> neg(7, instance(0, 1));
  auto batches = make_batches(pos, neg, 32, RngStream(3));
  REQUIRE(batches.size() == 1);
  CHECK(batches[0].size() == 14);  // 7 + 7
}

TEST_CASE("batch composition is reproducible for a fixed seed") {
  std::vector<LabeledInstance> pos;
  std::vector<LabeledInstance> neg;
  for (int i = 0; i < 20; ++i) pos.push_back(instance(1, i));
  for (int i = 0; i < 20; ++i) neg.push_back(instance(0, 100 + i));
  auto a = make_batches(pos, neg, 8, RngStream(11));
  auto b = make_batches(pos, neg, 8, RngStream(11));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].size() == b[i].size());
    for (int j = 0; j < a[i].size(); ++j) {
      CHECK(a[i].instances[j].repair_label == b[i].instances[j].repair_label);
    }
  }
}
