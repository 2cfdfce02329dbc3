#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcm/canonical4.hpp"
#include "pcm/eigenvalue.hpp"
#include "pcm/experiments.hpp"
#include "pcm/io.hpp"

using namespace pcm;

namespace {

Matrix upper4(double a, double b, double c, double d, double e, double f) {
  Matrix m(4, 4);
  m << 1, a, b, c, 1 / a, 1, d, e, 1 / b, 1 / d, 1, f, 1 / c, 1 / e, 1 / f, 1;
  return m;
}

}  // namespace

TEST_CASE("reduce_to_canonical") {
  SUBCASE("worked instance") {
    const auto f = reduce_to_canonical(upper4(2, 4, 8, 1, 2, 1));
    CHECK(*f.y == doctest::Approx(2.0));
    CHECK(*f.x == doctest::Approx(4.0));
    CHECK(*f.z == doctest::Approx(2.0));
    CHECK(f.scaling == std::array<double, 4>{0.5, 1.0, 1.0, 1.0});
  }
  SUBCASE("already canonical") {
    const auto f = reduce_to_canonical(Matrix::Ones(4, 4));
    CHECK(*f.x == 1.0);
    CHECK(*f.y == 1.0);
    CHECK(*f.z == 1.0);
  }
  SUBCASE("similarity preserves lambda_max") {
    InstanceRng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
      double v[6];
      for (double& x : v) x = rng.log_uniform(kScaleMin, kScaleMax);
      const Matrix a = upper4(v[0], v[1], v[2], v[3], v[4], v[5]);
      const auto f = reduce_to_canonical(a);
      const Matrix c = canonical_matrix(*f.x, *f.y, *f.z);
      // Applying the scaling reproduces the canonical matrix exactly.
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          REQUIRE(f.scaling[i] * a(i, j) / f.scaling[j] == doctest::Approx(c(i, j)).epsilon(1e-13));
      REQUIRE(std::abs(lambda_max(a) - lambda_max(c)) < 1e-10);
    }
  }
}

TEST_CASE("char_poly_coeffs") {
  SUBCASE("consistent point") {
    const auto c = char_poly_coeffs(1, 1, 1);
    CHECK(c.p == 0.0);
    CHECK(c.q == 0.0);
  }
  SUBCASE("(2,1,1) against the determinant expansion") {
    // Exact expansion: lambda^4 - 4 lambda^3 + 0 lambda^2 - lambda + 0.
    const auto c = char_poly_coeffs(2, 1, 1);
    CHECK(c.p == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(c.q) < 1e-14);
    const auto lev = oracle::char_poly(canonical_matrix(2, 1, 1));
    CHECK(lev[3] == doctest::Approx(-4.0));
    CHECK(std::abs(lev[2]) < 1e-13);
    CHECK(lev[1] == doctest::Approx(c.p).epsilon(1e-13));
    CHECK(lev[0] == doctest::Approx(c.q).epsilon(1e-13).scale(1.0));
  }
  SUBCASE("(4,2,8): p = -61/8, q = 7/8 and the roots agree with power iteration") {
    const auto c = char_poly_coeffs(4, 2, 8);
    CHECK(c.p == doctest::Approx(-61.0 / 8.0).epsilon(1e-14));
    CHECK(c.q == doctest::Approx(7.0 / 8.0).epsilon(1e-14));
    const double root = oracle::largest_quartic_root(-4.0, 0.0, c.p, c.q);
    CHECK(root == doctest::Approx(4.386000936329383).epsilon(1e-13));
    CHECK(std::abs(lambda_max(canonical_matrix(4, 2, 8)) - root) < 1e-10);
  }
  SUBCASE("random points: LeVerrier coefficients match, no lambda^2 term") {
    InstanceRng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      const double x = rng.log_uniform(kScaleMin, kScaleMax), y = rng.log_uniform(kScaleMin, kScaleMax),
                   z = rng.log_uniform(kScaleMin, kScaleMax);
      const auto c = char_poly_coeffs(x, y, z);
      const auto lev = oracle::char_poly(canonical_matrix(x, y, z));
      REQUIRE(std::abs(lev[2]) < 1e-9);
      REQUIRE(lev[1] == doctest::Approx(c.p).epsilon(1e-10).scale(1.0));
      REQUIRE(lev[0] == doctest::Approx(c.q).epsilon(1e-10).scale(1.0));
      const double lm = lambda_max(canonical_matrix(x, y, z));
      REQUIRE(std::abs(c.evaluate(lm)) < 1e-8);
    }
  }
}

TEST_CASE("closed_form_completion") {
  const auto c1 = closed_form_completion(CanonicalCase::OneMissing, std::nullopt, 2.0, 8.0);
  CHECK(c1[0] == doctest::Approx(4.0));
  const auto c2 = closed_form_completion(CanonicalCase::TwoSameRow, std::nullopt, std::nullopt, 8.0);
  CHECK(c2[0] == doctest::Approx(4.0));
  CHECK(c2[1] == doctest::Approx(2.0));
  const auto c3 = closed_form_completion(CanonicalCase::TwoDifferentRows, 16.0, std::nullopt, std::nullopt);
  CHECK(c3[1] == doctest::Approx(4.0));
  CHECK(c3[2] == doctest::Approx(4.0));
  CHECK(closed_form_completion(CanonicalCase::AllMissing, std::nullopt, std::nullopt, std::nullopt) ==
        std::array<double, 3>{1.0, 1.0, 1.0});

  CHECK_THROWS_AS(closed_form_completion(CanonicalCase::OneMissing, 2.0, 2.0, 8.0), PatternMismatch);
  CHECK_THROWS_AS(closed_form_completion(CanonicalCase::TwoSameRow, std::nullopt, 2.0, 8.0), PatternMismatch);
  CHECK_THROWS_AS(closed_form_completion(CanonicalCase::TwoDifferentRows, std::nullopt, std::nullopt, 1.0),
                  PatternMismatch);
  CHECK_THROWS_AS(closed_form_completion(CanonicalCase::AllMissing, 1.0, std::nullopt, std::nullopt), PatternMismatch);
  CHECK_THROWS_AS(closed_form_completion(CanonicalCase::Complete, 1.0, 1.0, 1.0), PatternMismatch);
}

TEST_CASE("canonicalize relabels arbitrary missing patterns") {
  SUBCASE("the 4-cycle becomes the two-different-rows case") {
    const auto m = parse_matrix("1,2,*,1/3\n1/2,1,4,*\n*,1/4,1,5\n3,*,1/5,1", Format::Csv);
    const auto f = canonicalize(m);
    REQUIRE(f);
    CHECK(canonical_case(*f) == CanonicalCase::TwoDifferentRows);
  }
  SUBCASE("a star has no canonical form") {
    const auto m = IncompletePCM::from_upper(4, {2.0, 3.0, 4.0, std::nullopt, std::nullopt, std::nullopt});
    CHECK_FALSE(canonicalize(m).has_value());
    CHECK_THROWS_AS(closed_form_fill(m), PatternMismatch);
  }
  SUBCASE("closed form through the relabelling matches the LLSM fill") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto m = random_connected_incomplete(4, 1 + static_cast<int>(seed % 3), seed);
      const auto f = canonicalize(m);
      if (!f) continue;  // star
      const Matrix closed = closed_form_fill(m);
      const Matrix llsm = llsm_completion(m).matrix;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) REQUIRE(closed(i, j) == doctest::Approx(llsm(i, j)).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(canonicalize(lemma2_matrix()), WrongOrder);
}

TEST_CASE("verify_theorem1") {
  SUBCASE("4-cycle example") {
    const auto m = parse_matrix("1,2,*,1/3\n1/2,1,4,*\n*,1/4,1,5\n3,*,1/5,1", Format::Csv);
    const auto cmp = verify_theorem1(m, 1e-6);
    CHECK(cmp.coincide);
    CHECK(cmp.max_divergence < 1e-6);
  }
  SUBCASE("two missing in the same row, z = 8") {
    auto m = IncompletePCM::from_upper(4, {1.0, std::nullopt, std::nullopt, 1.0, 8.0, 1.0});
    const auto cmp = verify_theorem1(m);
    CHECK(cmp.coincide);
    CHECK(cmp.ev.matrix(0, 3) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(cmp.ev.matrix(0, 2) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cmp.llsm.matrix(0, 3) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(cmp.llsm.matrix(0, 2) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("isolated vertex") {
    auto m = IncompletePCM::from_upper(4, {std::nullopt, std::nullopt, std::nullopt, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(verify_theorem1(m), DisconnectedGraph);
  }
  SUBCASE("wrong order") { CHECK_THROWS_AS(verify_theorem1(lemma2_matrix()), WrongOrder); }
}

TEST_CASE("two missing in different rows: z = sqrt(x), not x^(3/4)") {
  // Dense-solver oracle: lambda_max is stationary in z at sqrt(x) only.
  for (double x : {16.0, 1.0 / 7.0, 5.0}) {
    const double y = std::sqrt(x);
    auto dz = [&](double z) {
      const double h = 1e-5;
      return (oracle::perron_root(canonical_matrix(x, y, z * std::exp(h))) -
              oracle::perron_root(canonical_matrix(x, y, z * std::exp(-h)))) / (2 * h);
    };
    CHECK(std::abs(dz(std::sqrt(x))) < 1e-8);
    CHECK(std::abs(dz(std::pow(x, 0.75))) > 1e-3);
    CHECK(oracle::perron_root(canonical_matrix(x, y, std::sqrt(x))) <
          oracle::perron_root(canonical_matrix(x, y, std::pow(x, 0.75))));
  }
  const auto m = IncompletePCM::from_upper(4, {1.0, std::nullopt, 16.0, 1.0, std::nullopt, 1.0});
  CHECK(llsm_completion(m).matrix(1, 3) == doctest::Approx(4.0).epsilon(1e-12));
}
