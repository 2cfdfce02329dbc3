#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcm/canonical4.hpp"
#include "pcm/experiments.hpp"
#include "pcm/graph.hpp"
#include "pcm/io.hpp"
#include "pcm/llsm.hpp"

using namespace pcm;

TEST_CASE("llsm weights of a consistent matrix are its generating vector") {
  const auto m = parse_matrix("1,1/2,1/4\n2,1,1/2\n4,2,1", Format::Csv);
  const auto w = llsm_weights(m);
  CHECK(w[0] == doctest::Approx(1.0 / 7.0));
  CHECK(w[1] == doctest::Approx(2.0 / 7.0));
  CHECK(w[2] == doctest::Approx(4.0 / 7.0));
  CHECK(w.values.sum() == doctest::Approx(1.0));
}

TEST_CASE("llsm on the 5x5 example") {
  const auto m = lemma2_matrix();
  const auto w = llsm_weights(m);
  CHECK(std::abs(w.ratio(0, 4) - 0.1705) < 5e-5);
  const auto r = llsm_completion(m);
  CHECK(std::abs(r.matrix(0, 4) - 0.1705) < 5e-5);
  CHECK(r.matrix(4, 0) * r.matrix(0, 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.filled == std::vector<Position>{{0, 4}});
  CHECK(r.method == Method::Llsm);
}

TEST_CASE("llsm closed forms on the canonical 4x4") {
  SUBCASE("x missing: x = sqrt(yz)") {
    auto m = IncompletePCM::from_grid({{1.0, 1.0, 2.0, std::nullopt},
                                       {1.0, 1.0, 1.0, 8.0},
                                       {0.5, 1.0, 1.0, 1.0},
                                       {std::nullopt, 1.0 / 8, 1.0, 1.0}});
    CHECK(llsm_weights(m).ratio(0, 3) == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("x, y missing: x = z^(2/3), y = z^(1/3)") {
    auto m = IncompletePCM::from_grid({{1.0, 1.0, std::nullopt, std::nullopt},
                                       {1.0, 1.0, 1.0, 8.0},
                                       {std::nullopt, 1.0, 1.0, 1.0},
                                       {std::nullopt, 1.0 / 8, 1.0, 1.0}});
    const auto r = llsm_completion(m);
    CHECK(r.matrix(0, 3) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.matrix(0, 2) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("spanning tree completion is consistent") {
  const auto m = parse_matrix("1,2,*\n1/2,1,3\n*,1/3,1", Format::Csv);
  const auto r = llsm_completion(m);
  CHECK(r.matrix(0, 2) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(r.gci < 1e-24);
  CHECK(r.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.ci == doctest::Approx(0.0));
}

TEST_CASE("gci against the brute-force residual sum") {
  SUBCASE("3x3 all twos: (ln 2)^2 / 3") {
    const auto m = parse_matrix("1,2,2\n1/2,1,2\n1/2,1/2,1", Format::Csv);
    const auto w = llsm_weights(m);
    const double expected = std::log(2.0) * std::log(2.0) / 3.0;  // 0.16015100463940...
    CHECK(gci(m.dense(), w) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(gci(m.dense(), w) == doctest::Approx(oracle::gci_sum(m.dense(), w.values)).epsilon(1e-13));
  }
  SUBCASE("random complete matrices") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const int n = 3 + static_cast<int>(seed % 6);
      const Matrix a = random_connected_incomplete(n, 0, seed).dense();
      const Vector w = oracle::row_geomean(a);
      CHECK(gci(a, w) == doctest::Approx(oracle::gci_sum(a, w)).epsilon(1e-12));
      CHECK(gci(a) == doctest::Approx(oracle::gci_sum(a, w)).epsilon(1e-12));
    }
  }
  SUBCASE("order 2 is zero, consistent is zero") {
    CHECK(gci(parse_matrix("1,3\n1/3,1", Format::Csv).dense(), Vector::Constant(2, 0.5)) == 0.0);
    Vector w(4);
    w << 0.1, 0.2, 0.3, 0.4;
    Matrix a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = w(i) / w(j);
    CHECK(gci(a, w) < 1e-28);
  }
}

TEST_CASE("the LLSM fill of the 5x5 example minimises GCI over the filled entry") {
  const auto r = llsm_completion(lemma2_matrix());
  const double best = gci(r.matrix);
  CHECK(best == doctest::Approx(r.gci).epsilon(1e-12));
  for (int k = -20; k <= 20; ++k) {
    if (k == 0) continue;
    Matrix b = r.matrix;
    b(0, 4) *= std::exp(0.01 * k);
    b(4, 0) = 1.0 / b(0, 4);
    CHECK(gci(b) > best);
  }
}

TEST_CASE("laplacian system residual and gauge invariance") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const auto m = random_connected_incomplete(n, static_cast<int>(seed % (max_missing_connected(n) + 1)), seed);
    const auto sol = solve_llsm_system(m);
    CHECK(sol.residual < 1e-10);
    CHECK(sol.log_weights(0) == 0.0);

    const auto r = llsm_completion(m);
    const Vector scaled = 37.5 * r.weights.values;
    CHECK(gci(r.matrix, scaled) == doctest::Approx(r.gci).epsilon(1e-10));
    for (const auto& [i, j] : r.filled) CHECK(scaled(i) / scaled(j) == doctest::Approx(r.matrix(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("llsm weights are optimal for the known-entry objective") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const auto m = random_connected_incomplete(n, static_cast<int>(seed % (max_missing_connected(n) + 1)), seed);
    const auto w = llsm_weights(m);
    const double base = llsm_objective(m, w.values);
    for (int i = 0; i < n; ++i)
      for (double eps : {-0.05, -0.01, 0.01, 0.05}) {
        Vector p = w.values;
        p(i) *= std::exp(eps);
        CHECK(llsm_objective(m, p) >= base);
      }
  }
}

TEST_CASE("llsm rejects a disconnected graph") {
  CHECK_THROWS_AS(llsm_weights(parse_matrix("1,*,*\n*,1,2\n*,1/2,1", Format::Csv)), DisconnectedGraph);
  CHECK_THROWS_AS(llsm_completion(parse_matrix("1,*\n*,1", Format::Csv)), DisconnectedGraph);
}
