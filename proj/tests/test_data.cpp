#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "crossrec/cross_domain.hpp"
#include "crossrec/errors.hpp"
#include "crossrec/normalize.hpp"
#include "crossrec/split.hpp"

using namespace crossrec;
namespace fs = std::filesystem;

namespace {

using Records = std::vector<std::pair<std::string, std::string>>;

fs::path write_temp(const std::string& name, const std::string& contents) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << contents;
  return path;
}

InteractionSet random_set(const std::string& domain, Index n_users, Index n_items,
                          double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Records recs;
  for (Index u = 0; u < n_users; ++u) {
    bool any = false;
    for (Index i = 0; i < n_items; ++i)
      if (unit(rng) < density) {
        recs.emplace_back("u" + std::to_string(u), "i" + std::to_string(i));
        any = true;
      }
    if (!any) recs.emplace_back("u" + std::to_string(u), "i" + std::to_string(u % n_items));
  }
  return make_interaction_set(domain, std::move(recs));
}

}  // namespace

TEST_CASE("load_interactions parses and prunes") {
  SUBCASE("four records, two users, three items, no pruning") {
    const auto path = write_temp("cr_load1.tsv", "u1\ta\nu1\tb\nu2\tb\nu2\tc\n");
    const auto set = load_interactions(path, {});
    CHECK(set.n_users() == 2);
    CHECK(set.n_items() == 3);
    CHECK(set.n_interactions() == 4);
  }

  SUBCASE("duplicate pair collapses") {
    const auto path = write_temp("cr_load2.tsv", "u1\ta\nu1\ta\nu2\ta\n");
    const auto set = load_interactions(path, {});
    CHECK(set.n_interactions() == 2);
  }

  SUBCASE("five-user log, min_user_deg=2 removes the weak user and its orphaned item") {
    // Hand-executed pruning: u5 has one interaction with i9, and i9 has no
    // other user; dropping u5 leaves i9 unreferenced.
    const auto path = write_temp("cr_load3.tsv",
                                 "u1\ti1\nu1\ti2\n"
                                 "u2\ti1\nu2\ti3\n"
                                 "u3\ti2\nu3\ti3\n"
                                 "u4\ti1\nu4\ti2\nu4\ti3\n"
                                 "u5\ti9\n");
    LoadOptions opts;
    opts.min_user_deg = 2;
    const auto set = load_interactions(path, opts);
    CHECK(set.n_users() == 4);
    CHECK(set.n_items() == 3);
    CHECK(set.n_interactions() == 9);
    CHECK(!set.user_index("u5").has_value());
    CHECK(!set.item_index("i9").has_value());
  }

  SUBCASE("value column binarizes at > 0") {
    const auto path = write_temp("cr_load4.csv", "u1,a,5\nu1,b,0\nu2,a,1\nu2,b,2\n");
    LoadOptions opts;
    opts.format = FileFormat::Csv;
    const auto set = load_interactions(path, opts);
    CHECK(set.n_interactions() == 3);  // the zero-valued record is no interaction
  }

  SUBCASE("header line skipped when flagged") {
    const auto path = write_temp("cr_load5.tsv", "user\titem\tvalue\nu1\ta\t1\nu2\ta\t1\n");
    LoadOptions opts;
    opts.has_header = true;
    CHECK(load_interactions(path, opts).n_interactions() == 2);
    // Without the flag the header's value column fails to parse.
    CHECK_THROWS_AS(load_interactions(path, {}), DataError);
  }

  SUBCASE("malformed record reports its line number") {
    const auto path = write_temp("cr_load6.tsv", "u1\ta\nbroken-line\n");
    CHECK_THROWS_WITH_AS(load_interactions(path, {}), doctest::Contains(":2"), DataError);
  }

  SUBCASE("unreadable file") {
    CHECK_THROWS_AS(load_interactions("/nonexistent/x.tsv", {}), DataError);
  }

  SUBCASE("empty after pruning") {
    const auto path = write_temp("cr_load7.tsv", "u1\ta\n");
    LoadOptions opts;
    opts.min_user_deg = 5;
    CHECK_THROWS_AS(load_interactions(path, opts), DataError);
  }
}

TEST_CASE("detect_overlap") {
  auto set_of = [](const std::string& domain, const Records& recs) {
    return make_interaction_set(domain, recs);
  };
  const auto src = set_of("s", {{"a", "x"}, {"b", "x"}, {"c", "y"}});
  const auto tgt = set_of("t", {{"b", "p"}, {"c", "p"}, {"d", "q"}});

  SUBCASE("intersection in sorted order") {
    const auto overlap = detect_overlap(src, tgt);
    REQUIRE(overlap.size() == 2);
    CHECK(overlap.overlap_keys == std::vector<std::string>{"b", "c"});
    CHECK(src.users[static_cast<std::size_t>(overlap.source_rows[0])] == "b");
    CHECK(tgt.users[static_cast<std::size_t>(overlap.target_rows[1])] == "c");
  }

  SUBCASE("disjoint sets give an empty overlap, not an error") {
    const auto other = set_of("t", {{"x1", "p"}, {"x2", "p"}});
    CHECK(detect_overlap(src, other).empty());
  }

  SUBCASE("identical user sets have ratio 1") {
    const auto a = random_set("a", 17, 9, 0.4, 11);
    Records recs;
    for (const auto& [u, i] : a.interactions)
      recs.emplace_back(a.users[static_cast<std::size_t>(u)], "z" + std::to_string(i));
    const auto b = make_interaction_set("b", recs);
    CHECK(detect_overlap(a, b).size() == a.n_users());
  }

  SUBCASE("symmetric in content") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto a = random_set("a", 12, 8, 0.3, seed);
      const auto b = random_set("b", 15, 8, 0.3, seed + 100);
      CHECK(detect_overlap(a, b).overlap_keys == detect_overlap(b, a).overlap_keys);
    }
  }
}

TEST_CASE("normalize") {
  SUBCASE("2x2 worked example") {
    // Degrees: user (2, 1), item (1, 2).
    const auto set = make_interaction_set("t", {{"u1", "a"}, {"u1", "b"}, {"u2", "b"}});
    const SpMat r = normalize(set);
    const DenseMatrix d = DenseMatrix(r);
    CHECK(d(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(d(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d(1, 0) == 0.0);
    CHECK(d(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }

  SUBCASE("1x1 matrix") {
    const auto set = make_interaction_set("t", {{"u", "i"}});
    CHECK(DenseMatrix(normalize(set))(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("weights match integer degree recomputation on random sets") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto set = random_set("t", 20, 15, 0.2, seed);
      const SpMat binary = set.binary_matrix();
      const SpMat r = normalize(set);
      std::vector<Index> udeg(20, 0), ideg(15, 0);
      for (const auto& [u, i] : set.interactions) {
        ++udeg[static_cast<std::size_t>(u)];
        ++ideg[static_cast<std::size_t>(i)];
      }
      for (Index row = 0; row < r.outerSize(); ++row)
        for (SpMat::InnerIterator it(r, row); it; ++it) {
          const double expected = 1.0 / std::sqrt(static_cast<double>(udeg[it.row()]) *
                                                  static_cast<double>(ideg[it.col()]));
          CHECK(std::abs(it.value() - expected) <= 1e-12);
        }
      CHECK(r.nonZeros() == binary.nonZeros());
    }
  }

  SUBCASE("permuting users permutes rows identically") {
    const auto set = random_set("t", 8, 6, 0.4, 3);
    // Renaming u0 -> zz pushes it to the last row slot.
    Records renamed;
    for (const auto& [u, i] : set.interactions) {
      const auto& key = set.users[static_cast<std::size_t>(u)];
      renamed.emplace_back(key == "u0" ? "zz" : key, set.items[static_cast<std::size_t>(i)]);
    }
    const auto permuted = make_interaction_set("t", renamed);
    const DenseMatrix a = DenseMatrix(normalize(set));
    const DenseMatrix b = DenseMatrix(normalize(permuted));
    const Index moved = *permuted.user_index("zz");
    CHECK((a.row(*set.user_index("u0")) - b.row(moved)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("zero-degree column is an error") {
    SpMat m(2, 2);
    m.insert(0, 0) = 1.0;
    m.insert(1, 0) = 1.0;
    m.makeCompressed();
    CHECK_THROWS_AS(normalize(m), DataError);
  }
}

TEST_CASE("slice_rows keeps full-matrix normalization") {
  const auto src = random_set("s", 10, 7, 0.35, 42);
  const SpMat r = normalize(src);
  const std::vector<Index> rows{1, 4, 7};
  const SpMat sliced = slice_rows(r, rows);
  REQUIRE(sliced.rows() == 3);
  const DenseMatrix d = DenseMatrix(r), ds = DenseMatrix(sliced);
  for (std::size_t k = 0; k < rows.size(); ++k)
    CHECK((ds.row(static_cast<Index>(k)) - d.row(rows[k])).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("split: intra holdout") {
  SplitSpec spec;
  spec.scenario = Scenario::Intra;
  spec.seed = 7;

  SUBCASE("five interactions give 4 train + 1 test") {
    Records recs;
    for (int i = 0; i < 5; ++i) recs.emplace_back("u1", "i" + std::to_string(i));
    recs.emplace_back("u2", "i0");
    recs.emplace_back("u2", "i1");
    const auto tgt = make_interaction_set("t", recs);
    const auto src = make_interaction_set("s", {{"u1", "x"}, {"u2", "x"}});
    const auto result = split(tgt, src, spec);
    Index u1_test = 0;
    for (const auto& p : result.test)
      if (p.user == "u1") ++u1_test;
    CHECK(u1_test == 1);
  }

  SUBCASE("partition: train, validation, test are disjoint and cover the input") {
    const auto tgt = random_set("t", 25, 18, 0.3, 5);
    const auto src = random_set("s", 20, 12, 0.3, 6);
    const auto result = split(tgt, src, spec);

    std::set<KeyPair> all;
    for (const auto& [u, i] : tgt.interactions)
      all.insert({tgt.users[static_cast<std::size_t>(u)],
                  tgt.items[static_cast<std::size_t>(i)]});

    std::set<KeyPair> seen;
    auto absorb = [&](const std::vector<KeyPair>& pairs) {
      for (const auto& p : pairs) {
        CHECK(seen.insert(p).second);  // pairwise disjoint
        CHECK(all.count(p) == 1);
      }
    };
    const auto& train = result.train_target;
    std::vector<KeyPair> train_pairs;
    for (const auto& [u, i] : train.interactions)
      train_pairs.push_back({train.users[static_cast<std::size_t>(u)],
                             train.items[static_cast<std::size_t>(i)]});
    absorb(train_pairs);
    absorb(result.validation);
    absorb(result.test);
    CHECK(seen.size() == all.size());
  }

  SUBCASE("same seed twice is byte-identical") {
    const auto tgt = random_set("t", 25, 18, 0.3, 5);
    const auto src = random_set("s", 20, 12, 0.3, 6);
    const auto p1 = fs::temp_directory_path() / "cr_split_a.json";
    const auto p2 = fs::temp_directory_path() / "cr_split_b.json";
    save_split_manifest(p1, split(tgt, src, spec));
    save_split_manifest(p2, split(tgt, src, spec));
    std::ifstream f1(p1), f2(p2);
    const std::string s1((std::istreambuf_iterator<char>(f1)), {});
    const std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    CHECK(!s1.empty());
  }

  SUBCASE("manifest round-trips") {
    const auto tgt = random_set("t", 12, 9, 0.35, 8);
    const auto src = random_set("s", 10, 9, 0.35, 9);
    const auto result = split(tgt, src, spec);
    const auto path = fs::temp_directory_path() / "cr_split_rt.json";
    save_split_manifest(path, result);
    const auto loaded = load_split_manifest(path);
    CHECK(loaded.test == result.test);
    CHECK(loaded.validation == result.validation);
    CHECK(loaded.train_target.interactions == result.train_target.interactions);
    CHECK(loaded.spec.seed == result.spec.seed);
  }
}

TEST_CASE("split: inter holdout") {
  SplitSpec spec;
  spec.scenario = Scenario::Inter;
  spec.seed = 13;

  // Ten overlapping users plus extras on both sides.
  Records src_recs, tgt_recs;
  for (int u = 0; u < 10; ++u) {
    src_recs.emplace_back("ou" + std::to_string(u), "s" + std::to_string(u % 4));
    tgt_recs.emplace_back("ou" + std::to_string(u), "t" + std::to_string(u % 5));
    tgt_recs.emplace_back("ou" + std::to_string(u), "t" + std::to_string((u + 1) % 5));
  }
  for (int u = 0; u < 4; ++u) {
    src_recs.emplace_back("su" + std::to_string(u), "s" + std::to_string(u % 4));
    tgt_recs.emplace_back("tu" + std::to_string(u), "t" + std::to_string(u % 5));
  }
  const auto src = make_interaction_set("s", src_recs);
  const auto tgt = make_interaction_set("t", tgt_recs);

  SUBCASE("half of the overlap becomes cold-start test users") {
    const auto result = split(tgt, src, spec);
    std::set<std::string> test_users;
    for (const auto& p : result.test) test_users.insert(p.user);
    CHECK(test_users.size() == 5);
    // Test users keep no target-domain training interactions.
    for (const auto& key : test_users) {
      CHECK(!result.train_target.user_index(key).has_value());
      CHECK(result.train_source.user_index(key).has_value());  // source rows stay
    }
  }

  SUBCASE("empty overlap is an error for inter") {
    const auto disjoint = make_interaction_set("s", {{"q1", "s0"}, {"q2", "s0"}});
    CHECK_THROWS_AS(split(tgt, disjoint, spec), DataError);
  }
}

TEST_CASE("cross-domain data and overlap slices") {
  const auto src = random_set("s", 14, 10, 0.3, 21);
  Records tgt_recs;
  // Make half the users shared with the source by key.
  const auto tgt_base = random_set("t", 14, 11, 0.3, 22);
  for (const auto& [u, i] : tgt_base.interactions) {
    const auto& key = tgt_base.users[static_cast<std::size_t>(u)];
    tgt_recs.emplace_back(u % 2 == 0 ? key : key + "_only",
                          tgt_base.items[static_cast<std::size_t>(i)]);
  }
  const auto data = CrossDomainData::build(src, make_interaction_set("t", tgt_recs));

  REQUIRE(!data.overlap.empty());
  CHECK(data.r_os->rows() == data.overlap.size());
  CHECK(data.r_ot->rows() == data.overlap.size());
  // R_OS rows are exactly the overlap users' rows of R_S.
  const DenseMatrix rs = DenseMatrix(*data.r_s), ros = DenseMatrix(*data.r_os);
  for (Index k = 0; k < data.overlap.size(); ++k)
    CHECK((ros.row(k) - rs.row(data.overlap.source_rows[static_cast<std::size_t>(k)]))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("subsample_overlap") {
  // 100 overlapping users, each with a private source item plus a shared one.
  Records src_recs, tgt_recs;
  for (int u = 0; u < 100; ++u) {
    const std::string key = "ou" + std::to_string(u);
    src_recs.emplace_back(key, "spriv" + std::to_string(u));
    src_recs.emplace_back(key, "shub");
    tgt_recs.emplace_back(key, "t" + std::to_string(u % 7));
    tgt_recs.emplace_back(key, "t" + std::to_string((u + 3) % 7));
  }
  const auto data =
      CrossDomainData::build(make_interaction_set("s", src_recs),
                             make_interaction_set("t", tgt_recs));
  REQUIRE(data.overlap.size() == 100);

  SUBCASE("keep 1.0 leaves the data unchanged") {
    const auto result = subsample_overlap(data, 1.0, 99);
    CHECK(result.n_overlap_after == 100);
    CHECK(result.achieved_ratio == 1.0);
    CHECK((DenseMatrix(*result.data.r_s) - DenseMatrix(*data.r_s)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("keep 0.0 empties the overlap") {
    const auto result = subsample_overlap(data, 0.0, 99);
    CHECK(result.n_overlap_after == 0);
    CHECK(result.data.r_os->rows() == 0);
    // Target side untouched.
    CHECK((DenseMatrix(*result.data.r_t) - DenseMatrix(*data.r_t)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("keep 0.2 of 100 retains exactly 20") {
    const auto result = subsample_overlap(data, 0.2, 99);
    CHECK(result.n_overlap_after == 20);
    CHECK(result.achieved_ratio == doctest::Approx(0.2));
  }

  SUBCASE("same seed: retained sets are nested across ratios") {
    std::set<std::string> prev;
    for (double ratio : {0.1, 0.3, 0.5, 0.8, 1.0}) {
      const auto result = subsample_overlap(data, ratio, 1234);
      std::set<std::string> kept(result.data.overlap.overlap_keys.begin(),
                                 result.data.overlap.overlap_keys.end());
      for (const auto& key : prev) CHECK(kept.count(key) == 1);
      prev = std::move(kept);
    }
  }
}
