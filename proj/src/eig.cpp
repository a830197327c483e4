#include "ojaregret/eig.hpp"

#include <cmath>
#include <string>

#include "ojaregret/errors.hpp"
#include "ojaregret/oja.hpp"

namespace ojaregret {

std::size_t required_iterations(double epsilon, double delta, std::size_t n) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ValidationError("required_iterations: epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("required_iterations: delta must lie in (0, 1)");
  }
  if (n == 0) throw ValidationError("required_iterations: n must be >= 1");
  const double t =
      3.0 / (epsilon * epsilon) * std::log(9.0 * static_cast<double>(n) / delta);
  return static_cast<std::size_t>(std::ceil(t));
}

double eig_step_size(std::size_t rounds, double delta, std::size_t n) {
  return std::sqrt(std::log(9.0 * static_cast<double>(n) / delta) /
                   (3.0 * static_cast<double>(rounds)));
}

EigResult solve_leading_eigenvalue(const SymmetricMatrix& a,
                                   const EigRunConfig& cfg, Rng& rng) {
  if (a.dim() != cfg.n) {
    throw DimensionError("solve_leading_eigenvalue: matrix/config dimension");
  }
  const auto eig = eigendecompose(a);
  const double nrm = std::max(std::abs(eig.eigenvalues.front()),
                              std::abs(eig.eigenvalues.back()));
  if (nrm > 1.0 + 1e-9) {
    throw ValidationError(
        "solve_leading_eigenvalue: spectral norm above 1; normalize first");
  }

  const std::size_t rounds = required_iterations(cfg.epsilon, cfg.delta, cfg.n);
  double mu = cfg.mu_override.value_or(eig_step_size(rounds, cfg.delta, cfg.n));
  if (mu > 0.5) {
    const std::size_t minimal = static_cast<std::size_t>(std::ceil(
        4.0 / 3.0 * std::log(9.0 * static_cast<double>(cfg.n) / cfg.delta)));
    throw HorizonError("horizon too small: derived mu above 1/2; need at least " +
                           std::to_string(minimal) + " rounds",
                       minimal);
  }

  const OjaConfig oja_cfg(mu, rounds);
  const UnitVector init = random_unit_vector(cfg.n, rng);

  EigResult result;
  result.iterations = rounds;
  result.mu = mu;
  result.lambda1_oracle = eig.eigenvalues.front();
  result.rayleigh_values.reserve(rounds);

  OjaState state = initial_oja_state(init);
  for (std::size_t t = 0; t < rounds; ++t) {
    const double value = quad_form(a, state.direction.coords());
    result.rayleigh_values.push_back(value);
    if (t == 0 || value > result.best_value) {
      result.best_value = value;
      result.best_round = t;
    }
    if (t + 1 < rounds) state = oja_step(state, a, oja_cfg);
  }
  result.gap = result.lambda1_oracle - result.best_value;
  return result;
}

std::vector<UnitVector> power_method_trajectory(const SymmetricMatrix& a,
                                                std::size_t iterations,
                                                const UnitVector& init) {
  std::vector<UnitVector> iterates;
  iterates.reserve(iterations + 1);
  iterates.push_back(init);
  for (std::size_t t = 0; t < iterations; ++t) {
    const auto& x = iterates.back().coords();
    auto y = matvec(a, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += x[i];
    iterates.push_back(UnitVector::normalized(std::move(y)));
  }
  return iterates;
}

EigResult power_method_baseline(const SymmetricMatrix& a,
                                std::size_t iterations, Rng& rng) {
  if (iterations == 0) {
    throw ValidationError("power_method_baseline: iterations must be >= 1");
  }
  const auto eig = eigendecompose(a);
  const UnitVector init = random_unit_vector(a.dim(), rng);
  const auto iterates = power_method_trajectory(a, iterations - 1, init);

  EigResult result;
  result.iterations = iterations;
  result.mu = 1.0;  // effective step of the shifted iteration
  result.lambda1_oracle = eig.eigenvalues.front();
  result.rayleigh_values.reserve(iterations);
  for (std::size_t t = 0; t < iterates.size(); ++t) {
    const double value = quad_form(a, iterates[t].coords());
    result.rayleigh_values.push_back(value);
    if (t == 0 || value > result.best_value) {
      result.best_value = value;
      result.best_round = t;
    }
  }
  result.gap = result.lambda1_oracle - result.best_value;
  return result;
}

double overlap_sampler(std::size_t n, double delta, std::size_t trials,
                       Rng& rng) {
  if (trials == 0) throw ValidationError("overlap_sampler: trials must be >= 1");
  if (n == 0) throw ValidationError("overlap_sampler: n must be >= 1");
  const double threshold = delta / (9.0 * static_cast<double>(n));
  std::size_t hits = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const UnitVector z = random_unit_vector(n, rng);
    if (z[0] * z[0] >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace ojaregret
