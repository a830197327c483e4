#include <doctest.h>

#include <cmath>
#include <vector>

#include "ojaregret/eig.hpp"
#include "ojaregret/errors.hpp"
#include "ojaregret/linalg.hpp"
#include "ojaregret/oja.hpp"

using namespace ojaregret;

TEST_CASE("required_iterations reproduces the closed form") {
  // ln(9n/delta) = 3 at n = 1, delta = 9/e^3; with epsilon = 1 this is 9.
  CHECK(required_iterations(1.0, 9.0 / std::exp(3.0), 1) == 9);
  // Values cross-checked against an independent high-precision evaluation:
  // ceil(300 ln 900) = ceil(2040.7184...) and ceil(75 ln 4500) =
  // ceil(630.8874...).
  CHECK(required_iterations(0.1, 0.1, 10) == 2041);
  CHECK(required_iterations(0.2, 0.1, 50) == 631);

  CHECK_THROWS_AS(required_iterations(0.0, 0.1, 10), ValidationError);
  CHECK_THROWS_AS(required_iterations(1.5, 0.1, 10), ValidationError);
  CHECK_THROWS_AS(required_iterations(0.1, 0.0, 10), ValidationError);
  CHECK_THROWS_AS(required_iterations(0.1, 1.0, 10), ValidationError);
  CHECK_THROWS_AS(required_iterations(0.1, 0.1, 0), ValidationError);
}

TEST_CASE("solve_leading_eigenvalue: identity matrix has zero gap") {
  Rng rng(100);
  EigRunConfig cfg{0.5, 0.2, 6, std::nullopt};
  const auto r = solve_leading_eigenvalue(SymmetricMatrix::identity(6), cfg, rng);
  CHECK(r.lambda1_oracle == doctest::Approx(1.0));
  CHECK(r.gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.best_round == 0);  // ties broken toward the earliest round
}

TEST_CASE("solve_leading_eigenvalue: gapped diagonal succeeds in most trials") {
  std::vector<double> d(10, 0.0);
  d[0] = 1.0;
  for (std::size_t i = 1; i < 10; ++i) d[i] = 0.7 - 0.05 * (i - 1.0);
  const SymmetricMatrix a = SymmetricMatrix::diagonal(d);
  EigRunConfig cfg{0.1, 0.1, 10, std::nullopt};
  Rng base(200);
  std::size_t hits = 0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    Rng rng = base.fork(trial);
    const auto r = solve_leading_eigenvalue(a, cfg, rng);
    CHECK(r.best_value <= r.lambda1_oracle + 1e-9);
    if (r.gap <= 0.1) ++hits;
  }
  CHECK(hits >= 90);
}

TEST_CASE("solve_leading_eigenvalue: rank-one projector") {
  Rng rng(300);
  const UnitVector v = random_unit_vector(30, rng);
  const SymmetricMatrix a = SymmetricMatrix::outer(v.coords());
  EigRunConfig cfg{0.2, 0.1, 30, std::nullopt};
  const auto r = solve_leading_eigenvalue(a, cfg, rng);
  CHECK(r.lambda1_oracle == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.best_value >= 1.0 - 0.2);
  CHECK(r.best_value <= 1.0 + 1e-9);
}

TEST_CASE("solve_leading_eigenvalue rejects unnormalized input") {
  Rng rng(400);
  EigRunConfig cfg{0.5, 0.1, 2, std::nullopt};
  CHECK_THROWS_AS(
      solve_leading_eigenvalue(SymmetricMatrix::diagonal({2.0, 0.0}), cfg, rng),
      ValidationError);
}

TEST_CASE("solve_leading_eigenvalue rejects an oversized step override") {
  Rng rng(450);
  EigRunConfig cfg{0.5, 0.1, 4, 0.75};
  try {
    solve_leading_eigenvalue(SymmetricMatrix::identity(4), cfg, rng);
    CHECK(false);
  } catch (const HorizonError& e) {
    CHECK(e.minimal_rounds() >= 1);
  }
}

TEST_CASE("monotone running best and the regret-to-best conversion") {
  Rng rng(500);
  const auto a = normalize_spectral(random_symmetric(12, rng));
  EigRunConfig cfg{0.3, 0.1, 12, std::nullopt};
  const auto r = solve_leading_eigenvalue(a, cfg, rng);
  double running = -2.0, average = 0.0;
  for (double v : r.rayleigh_values) {
    running = std::max(running, v);
    average += v;
  }
  average /= static_cast<double>(r.rayleigh_values.size());
  CHECK(running == doctest::Approx(r.best_value));
  CHECK(r.best_value >= average - 1e-12);
}

TEST_CASE("power method baseline converges on a simple diagonal") {
  Rng rng(600);
  const auto r =
      power_method_baseline(SymmetricMatrix::diagonal({1.0, 0.0}), 200, rng);
  CHECK(r.best_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.gap <= 1e-9);
}

TEST_CASE("power iteration on the shifted-scaled matrix is the online update") {
  // Iterating x <- normalize(x + (mu A) x) reproduces the learner's
  // direction sequence with step mu exactly.
  Rng rng(700);
  const auto a = normalize_spectral(random_symmetric(7, rng));
  const double mu = 0.23;
  const UnitVector init = random_unit_vector(7, rng);
  const std::size_t rounds = 60;

  const auto power = power_method_trajectory(a.scaled(mu), rounds, init);
  const auto oja = run_oja(std::vector<SymmetricMatrix>(rounds, a),
                           OjaConfig(mu, rounds), init);
  REQUIRE(power.size() == oja.size());
  for (std::size_t t = 0; t < power.size(); ++t) {
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(std::abs(power[t][i] - oja[t].direction[i]) <= 1e-10);
    }
  }
}

TEST_CASE("power method baseline reaches lambda_1 under a spectral gap") {
  Rng rng(800);
  // Known spectrum with gap 0.15, conjugated by a random basis.
  std::vector<double> lam(50);
  lam[0] = 1.0;
  for (std::size_t i = 1; i < 50; ++i) lam[i] = 0.85 - 0.01 * (i - 1.0);
  const auto basis = random_orthonormal_basis(50, rng);
  const CommutingFamily family(basis, {lam});
  const auto a = materialize(family, 0);
  const auto r = power_method_baseline(a, 10000, rng);
  CHECK(std::abs(r.best_value - r.lambda1_oracle) <= 1e-6);
}

TEST_CASE("overlap sampler: trivial dimension and the two pinned regimes") {
  Rng rng(900);
  CHECK(overlap_sampler(1, 0.3, 50, rng) == 1.0);
  CHECK(overlap_sampler(20, 0.3, 10000, rng) >= 0.7 - 0.03);
  CHECK(overlap_sampler(100, 0.05, 10000, rng) >= 0.95 - 0.03);
  CHECK_THROWS_AS(overlap_sampler(5, 0.1, 0, rng), ValidationError);
}
