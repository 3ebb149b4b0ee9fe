#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "doctest.h"
#include "qcqp/generator.hpp"
#include "qcqp/graphs.hpp"
#include "qcqp/linalg.hpp"
#include "qcqp/relax.hpp"

using namespace qcqp;
using gen::Family;
using gen::FamilySpec;
using gen::gen_matrix;
using gen::GenConfig;

namespace {

bool bit_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

bool bit_equal(const QcqpInstance& a, const QcqpInstance& b) {
  if (a.n != b.n || a.m != b.m || a.bounds_exist != b.bounds_exist ||
      a.family_tags != b.family_tags || a.c != b.c)
    return false;
  for (int k = 0; k <= a.m; ++k)
    if (!bit_equal(a.A[k], b.A[k]) ||
        std::memcmp(a.b[k].data(), b.b[k].data(), sizeof(double) * a.n) != 0)
      return false;
  return std::memcmp(a.l.data(), b.l.data(), sizeof(double) * a.n) == 0 &&
         std::memcmp(a.u.data(), b.u.data(), sizeof(double) * a.n) == 0;
}

}  // namespace

TEST_SUITE("generator") {

TEST_CASE("diagonal families") {
  RngStream rng(1, 0);

  SUBCASE("ordered ones puts the minus block first") {
    Matrix m = gen_matrix({Family::DiagOrderedOnes, 2}, 4, rng);
    Matrix want = Vector{{-1.0, -1.0, 1.0, 1.0}}.asDiagonal();
    CHECK(bit_equal(m, want));
  }

  SUBCASE("random ones: diagonal of +-1 with requested negative count") {
    for (int trial = 0; trial < 50; ++trial) {
      int n = 6, np = trial % (n + 1);
      Matrix m = gen_matrix({Family::DiagRandomOnes, np}, n, rng);
      int neg = 0;
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(m(i, i)) == 1.0);
        neg += m(i, i) < 0;
      }
      CHECK(neg == np);
      CHECK(m.cwiseAbs().sum() == doctest::Approx(n));  // off-diagonal all zero
    }
  }

  SUBCASE("random values: integers 1..10 in magnitude") {
    for (int trial = 0; trial < 50; ++trial) {
      int n = 7, np = trial % (n + 1);
      Matrix m = gen_matrix({Family::DiagRandomRandnums, np}, n, rng);
      int neg = 0;
      for (int i = 0; i < n; ++i) {
        double v = std::abs(m(i, i));
        CHECK(v == std::floor(v));
        CHECK(v >= 1.0);
        CHECK(v <= 10.0);
        neg += m(i, i) < 0;
      }
      CHECK(neg == np);
    }
  }

  SUBCASE("unspecified negative count covers the whole range 0..n") {
    std::set<int> seen;
    for (int trial = 0; trial < 300; ++trial) {
      Matrix m = gen_matrix({Family::DiagRandomOnes, std::nullopt}, 4, rng);
      int neg = 0;
      for (int i = 0; i < 4; ++i) neg += m(i, i) < 0;
      seen.insert(neg);
    }
    CHECK(seen == std::set<int>{0, 1, 2, 3, 4});
  }

  SUBCASE("negative count outside 0..n is rejected") {
    CHECK_THROWS_AS(gen_matrix({Family::DiagOrderedOnes, 5}, 4, rng),
                    gen::InvalidFamilySpecError);
    CHECK_THROWS_AS(gen_matrix({Family::EigOnes, -1}, 4, rng),
                    gen::InvalidFamilySpecError);
  }
}

TEST_CASE("dense random families") {
  RngStream rng(2, 0);

  SUBCASE("random symmetric: entries in [-5,5], bit symmetric") {
    for (int t = 0; t < 20; ++t) {
      Matrix m = gen_matrix({Family::RandomSymmetric, std::nullopt}, 6, rng);
      CHECK(bit_equal(m, Matrix(m.transpose())));
      CHECK(m.cwiseAbs().maxCoeff() <= 5.0);
    }
  }

  SUBCASE("spd: strictly positive spectrum") {
    for (int t = 0; t < 20; ++t) {
      Matrix m = gen_matrix({Family::Spd, std::nullopt}, 5, rng);
      auto eig = linalg::eig_sym(m);
      CHECK(eig.eigenvalues[4] > 0.0);
    }
  }

  SUBCASE("eig_ones: spectrum is +-1 with requested negatives") {
    Matrix m = gen_matrix({Family::EigOnes, 3}, 5, rng);
    auto eig = linalg::eig_sym(m);
    Vector want{{1.0, 1.0, -1.0, -1.0, -1.0}};
    for (int i = 0; i < 5; ++i)
      CHECK(eig.eigenvalues[i] == doctest::Approx(want[i]).epsilon(1e-8));
  }

  SUBCASE("eig_random: negatives pinned to -1, positives integers in 1..10") {
    for (int t = 0; t < 20; ++t) {
      int np = t % 6;
      Matrix m = gen_matrix({Family::EigRandom, np}, 5, rng);
      auto eig = linalg::eig_sym(m);
      int neg = 0;
      for (int i = 0; i < 5; ++i) {
        double v = eig.eigenvalues[i];
        if (v < 0) {
          CHECK(v == doctest::Approx(-1.0).epsilon(1e-8));
          ++neg;
        } else {
          CHECK(std::abs(v - std::round(v)) < 1e-7);
          CHECK(v > 0.5);
          CHECK(v < 10.5);
        }
      }
      CHECK(neg == np);
    }
  }

  SUBCASE("rank one pair") {
    Matrix cvx = gen_matrix({Family::RankOneConvex, std::nullopt}, 5, rng);
    Matrix ccv = gen_matrix({Family::RankOneConcave, std::nullopt}, 5, rng);
    CHECK(linalg::numeric_rank(cvx) == 1);
    CHECK(linalg::numeric_rank(ccv) == 1);
    CHECK(linalg::eig_sym(cvx).eigenvalues[0] > 0.0);
    CHECK(linalg::count_negative_eigenvalues(linalg::eig_sym(cvx).eigenvalues) == 0);
    CHECK(linalg::eig_sym(ccv).eigenvalues[4] < 0.0);
    CHECK(linalg::count_negative_eigenvalues(linalg::eig_sym(ccv).eigenvalues) == 1);
  }

  SUBCASE("hollow: zero diagonal, off-diagonal within [-2,2]") {
    Matrix m = gen_matrix({Family::Hollow, std::nullopt}, 6, rng);
    CHECK(m.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.cwiseAbs().maxCoeff() <= 2.0);
    CHECK(graphs::pattern_flags(m).hollow);
  }
}

TEST_CASE("graph constructions have their defining property") {
  RngStream rng(3, 0);
  for (int n : {4, 5, 8, 12}) {
    for (int t = 0; t < 60; ++t) {
      auto tree = gen::random_tree(n, rng);
      CHECK(graphs::is_tree(tree));

      auto bip = gen::random_bipartite(n, rng);
      CHECK(graphs::is_bipartite(bip));
      CHECK(bip.edges.size() >= 2);

      auto planar = gen::random_planar(n, rng);
      CHECK(graphs::is_planar(planar));

      auto chordal = gen::random_chordal(n, rng);
      CHECK(graphs::is_chordal(chordal));
    }
  }
  CHECK_THROWS_AS(gen::random_tree(3, rng), gen::InvalidFamilySpecError);
  CHECK_THROWS_AS(gen_matrix({Family::Bipartite, std::nullopt}, 3, rng),
                  gen::InvalidFamilySpecError);
}

TEST_CASE("graph family matrices keep deletion-stable flags") {
  RngStream rng(4, 0);
  int tree_exact = 0;
  for (int t = 0; t < 120; ++t) {
    Matrix bip = gen_matrix({Family::Bipartite, std::nullopt}, 8, rng);
    auto fb = graphs::pattern_flags(bip);
    CHECK(fb.bipartite);  // edge deletion cannot break bipartiteness
    CHECK(fb.hollow);
    CHECK(bip.cwiseAbs().maxCoeff() <= 10.0);

    Matrix pl = gen_matrix({Family::Planar, std::nullopt}, 8, rng);
    CHECK(graphs::pattern_flags(pl).planar);  // nor planarity

    Matrix tr = gen_matrix({Family::Tree, std::nullopt}, 8, rng);
    auto g = graphs::SupportGraph::from_matrix(tr);
    CHECK(g.edges.size() <= 7);
    if (g.edges.size() == 7) {
      CHECK(graphs::is_tree(g));
      ++tree_exact;
    }
  }
  // a zero weight deletes an edge with prob 1/21 per edge; most trees survive
  CHECK(tree_exact > 60);
}

TEST_CASE("batch regimes follow the quarter and half thresholds") {
  GenConfig cfg{5, 1, 8, 42};
  auto batch = gen::gen_instance_batch(cfg);
  REQUIRE(batch.size() == 8);

  for (int idx = 0; idx < 8; ++idx) {
    const auto& inst = batch[idx];
    REQUIRE(validate_instance(inst).passed());
    CHECK(inst.family_tags.size() == 2);
    for (int k = 0; k <= 1; ++k) {
      CHECK(inst.c[k] >= -10.0);
      CHECK(inst.c[k] <= -1.0);
      CHECK(inst.c[k] == std::floor(inst.c[k]));
      CHECK(inst.b[k].cwiseAbs().maxCoeff() <= 5.0);
    }
  }

  for (int idx : {0, 1}) {  // same family everywhere, unit box
    CHECK(batch[idx].bounds_exist);
    CHECK(batch[idx].family_tags[0] == batch[idx].family_tags[1]);
    CHECK(batch[idx].l.cwiseAbs().maxCoeff() == 0.0);
    CHECK((batch[idx].u.array() == 1.0).all());
    CHECK(batch[idx].is_feasible(Vector::Zero(5)));
  }
  for (int idx : {2, 3}) {  // SPD last constraint, derived box
    const auto& inst = batch[idx];
    CHECK_FALSE(inst.bounds_exist);
    CHECK(inst.family_tags[1] == "spd");
    auto eig = linalg::eig_sym(inst.A[1]);
    CHECK(eig.eigenvalues[4] > 0.0);
    for (int i = 0; i < 5; ++i) {
      CHECK(std::isfinite(inst.l[i]));
      CHECK(inst.l[i] < inst.u[i]);
    }
    // stored box must match a fresh derivation from the same data
    auto bounds = relax::derive_artificial_bounds(inst.A[1], inst.b[1], inst.c[1]);
    CHECK((bounds.l - inst.l).cwiseAbs().maxCoeff() == 0.0);
    CHECK((bounds.u - inst.u).cwiseAbs().maxCoeff() == 0.0);
  }
  for (int idx : {4, 5, 6, 7}) {  // independent families, unit box
    CHECK(batch[idx].bounds_exist);
    CHECK(batch[idx].l.cwiseAbs().maxCoeff() == 0.0);
    CHECK((batch[idx].u.array() == 1.0).all());
    CHECK(batch[idx].is_feasible(Vector::Zero(5)));
  }
}

TEST_CASE("regime-1 provenance shows up in the pattern flags") {
  GenConfig cfg{6, 2, 400, 77};
  int structural_seen = 0;
  for (int idx = 0; idx < 100; ++idx) {  // first quarter of the batch
    auto inst = gen::gen_single_instance(cfg, idx);
    const auto& tag = inst.family_tags[0];
    for (int k = 0; k <= inst.m; ++k) CHECK(inst.family_tags[k] == tag);
    for (int k = 0; k <= inst.m; ++k) {
      auto flags = graphs::pattern_flags(inst.A[k]);
      if (tag == "diag_ordered_ones" || tag == "diag_random_ones" ||
          tag == "diag_random_randnums") {
        CHECK(flags.diagonal);
        ++structural_seen;
      } else if (tag == "hollow" || tag == "bipartite" || tag == "tree" ||
                 tag == "chordal") {
        CHECK(flags.hollow);
        if (tag == "bipartite") CHECK(flags.bipartite);
        ++structural_seen;
      } else if (tag == "planar") {
        CHECK(flags.planar);
        ++structural_seen;
      }
    }
  }
  CHECK(structural_seen > 50);
}

TEST_CASE("determinism and parallel equivalence") {
  GenConfig cfg{4, 2, 12, 20240815};
  auto a = gen::gen_instance_batch(cfg);
  auto b = gen::gen_instance_batch(cfg);
  auto c = gen::gen_instance_batch(cfg, 4);
  REQUIRE(a.size() == 12);
  for (int i = 0; i < 12; ++i) {
    CHECK(bit_equal(a[i], b[i]));
    CHECK(bit_equal(a[i], c[i]));
    CHECK(bit_equal(a[i], gen::gen_single_instance(cfg, i)));
  }
  // a different seed changes the data
  GenConfig other = cfg;
  other.master_seed = 1;
  CHECK_FALSE(bit_equal(a[0], gen::gen_single_instance(other, 0)));
}

TEST_CASE("small n drops graph families from the random pool") {
  GenConfig cfg{3, 1, 40, 9};
  auto batch = gen::gen_instance_batch(cfg);
  for (const auto& inst : batch)
    for (const auto& tag : inst.family_tags) {
      auto fam = gen::family_from_name(tag);
      REQUIRE(fam.has_value());
      CHECK_FALSE(gen::is_graph_family(*fam));
    }
}

TEST_CASE("family names round trip") {
  for (int i = 0; i < gen::kFamilyCount; ++i) {
    auto f = Family(i);
    auto back = gen::family_from_name(gen::family_name(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK_FALSE(gen::family_from_name("no_such_family").has_value());
  CHECK(gen::is_graph_family(Family::Tree));
  CHECK_FALSE(gen::is_graph_family(Family::Hollow));
}

TEST_CASE("config validation") {
  RngStream dummy(0, 0);
  CHECK_THROWS_AS(gen::gen_single_instance({0, 1, 8, 0}, 0), gen::InvalidFamilySpecError);
  CHECK_THROWS_AS(gen::gen_single_instance({5, 0, 8, 0}, 0), gen::InvalidFamilySpecError);
  CHECK_THROWS_AS(gen::gen_single_instance({5, 1, 3, 0}, 0), gen::InvalidFamilySpecError);
  CHECK_THROWS_AS(gen::gen_single_instance({5, 1, 8, 0}, 8), gen::InvalidFamilySpecError);
}

}  // TEST_SUITE
