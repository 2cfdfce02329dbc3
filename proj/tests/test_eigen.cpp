#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcm/canonical4.hpp"
#include "pcm/eigenvalue.hpp"
#include "pcm/experiments.hpp"
#include "pcm/graph.hpp"
#include "pcm/io.hpp"

using namespace pcm;

TEST_CASE("dominant eigenpair of simple matrices") {
  SUBCASE("all ones 4x4") {
    const auto e = dominant_eigenpair(canonical_matrix(1, 1, 1));
    CHECK(e.lambda_max == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(e.residual <= 1e-12);
    for (int i = 0; i < 4; ++i) CHECK(e.vector(i) == doctest::Approx(0.25));
  }
  SUBCASE("consistent matrices") {
    for (int n = 2; n <= 9; ++n) {
      Vector w(n);
      for (int i = 0; i < n; ++i) w(i) = 1.0 + 0.7 * i * i;
      Matrix a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = w(i) / w(j);
      const auto e = dominant_eigenpair(a);
      CHECK(e.lambda_max == doctest::Approx(n).epsilon(1e-13));
      for (int i = 0; i < n; ++i) CHECK(e.vector(i) == doctest::Approx(w(i) / w.sum()).epsilon(1e-12));
    }
  }
  SUBCASE("canonical (2,1,1) against the quartic root") {
    // det(lambda I - A) = lambda^4 - 4 lambda^3 - lambda; largest root 4.0606470275541...
    const double root = oracle::largest_quartic_root(-4.0, 0.0, -1.0, 0.0);
    CHECK(root == doctest::Approx(4.060647027554142).epsilon(1e-14));
    CHECK(dominant_eigenpair(canonical_matrix(2, 1, 1)).lambda_max == doctest::Approx(root).epsilon(1e-13));
  }
}

TEST_CASE("power iteration agrees with a dense eigensolver") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);
    const Matrix a = random_connected_incomplete(n, 0, seed).dense();
    const auto e = dominant_eigenpair(a);
    CHECK(e.residual <= 1e-12);
    CHECK(e.lambda_max >= n - 1e-12);
    CHECK(e.lambda_max == doctest::Approx(oracle::perron_root(a)).epsilon(1e-11));
    CHECK((e.vector.array() > 0).all());
    CHECK(e.vector.sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("dominant_eigenpair rejects non-positive input") {
  Matrix a = Matrix::Ones(3, 3);
  a(0, 1) = 0.0;
  CHECK_THROWS_AS(dominant_eigenpair(a), Error);
}

TEST_CASE("saaty ci") {
  CHECK(saaty_ci(3.0, 3) == 0.0);
  CHECK(saaty_ci(4.2, 4) == doctest::Approx(0.2 / 3.0));
}

TEST_CASE("exact derivative matches central differences") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    const CompletionProblem problem(random_connected_incomplete(n, 1 + static_cast<int>(seed % 3), seed));
    LambdaMaxObjective objective(problem);
    std::vector<double> t(problem.missing_positions.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = 0.3 * std::sin(static_cast<double>(seed + k));
    const Vector g = objective.gradient(t);
    for (std::size_t k = 0; k < t.size(); ++k) {
      auto tp = t, tm = t;
      tp[k] += 1e-5;
      tm[k] -= 1e-5;
      const double fd = (lambda_max(problem.matrix_at(tp)) - lambda_max(problem.matrix_at(tm))) / 2e-5;
      CHECK(g(static_cast<Eigen::Index>(k)) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("ev completion of the 5x5 example") {
  const auto e = ev_completion_traced(lemma2_matrix());
  CHECK(std::abs(e.result.matrix(0, 4) - 0.1798) < 5e-5);
  CHECK(e.result.method == Method::Eigenvalue);
  CHECK(e.trace.final_gradient_norm < 1e-9);
  CHECK(e.result.ci == doctest::Approx((e.result.lambda_max - 5.0) / 4.0).epsilon(1e-15));
  // The LLSM fill has a strictly larger lambda_max.
  CHECK(e.result.lambda_max < llsm_completion(lemma2_matrix()).lambda_max);
}

TEST_CASE("ev completion on canonical 4x4 cases") {
  SUBCASE("x missing: x = sqrt(yz) = 4") {
    auto m = IncompletePCM::from_grid({{1.0, 1.0, 2.0, std::nullopt},
                                       {1.0, 1.0, 1.0, 8.0},
                                       {0.5, 1.0, 1.0, 1.0},
                                       {std::nullopt, 1.0 / 8, 1.0, 1.0}});
    EvOptions cold;
    cold.initial_log_fill = std::vector<double>{0.0};
    CHECK(ev_completion(m, cold).matrix(0, 3) == doctest::Approx(4.0).epsilon(1e-10));
  }
  SUBCASE("all three missing: consistent, lambda_max = 4") {
    auto m = IncompletePCM::from_upper(4, {1.0, std::nullopt, std::nullopt, 1.0, std::nullopt, 1.0});
    EvOptions cold;
    cold.initial_log_fill = std::vector<double>{0.7, -1.1, 2.0};
    const auto r = ev_completion(m, cold);
    CHECK(r.matrix(0, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.matrix(0, 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.matrix(1, 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.lambda_max - 4.0) < 1e-10);
  }
}

TEST_CASE("optimizer invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const int missing = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_missing_connected(n)));
    const auto m = random_connected_incomplete(n, missing, seed);
    EvOptions cold;
    cold.initial_log_fill = std::vector<double>(static_cast<std::size_t>(missing), 0.0);
    const auto e = ev_completion_traced(m, cold);
    const auto& h = e.trace.objective_history;
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1]);
    CHECK(e.result.lambda_max >= n - 1e-12);
    CHECK(e.trace.final_gradient_norm < 1e-8);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(e.result.matrix(i, j) * e.result.matrix(j, i) == doctest::Approx(1.0).epsilon(1e-14));
        if (m.known(i, j)) CHECK(e.result.matrix(i, j) == *m.at(i, j));
      }
  }
}

TEST_CASE("ev completion error paths") {
  CHECK_THROWS_AS(ev_completion(parse_matrix("1,*,*\n*,1,2\n*,1/2,1", Format::Csv)), DisconnectedGraph);
  EvOptions bad;
  bad.initial_log_fill = std::vector<double>{0.0, 0.0};
  CHECK_THROWS_AS(ev_completion(lemma2_matrix(), bad), Error);
  EvOptions tight;
  tight.max_sweeps = 1;
  tight.initial_log_fill = std::vector<double>{3.0};
  CHECK_THROWS_AS(ev_completion(lemma2_matrix(), tight), NoConvergence);
}

TEST_CASE("complete input passes through unchanged") {
  const Matrix a = random_connected_incomplete(5, 0, 3).dense();
  const auto r = ev_completion(random_connected_incomplete(5, 0, 3));
  CHECK(r.matrix == a);
  CHECK(r.filled.empty());
}
