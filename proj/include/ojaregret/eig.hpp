#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ojaregret/linalg.hpp"
#include "ojaregret/rng.hpp"

namespace ojaregret {

struct EigRunConfig {
  double epsilon = 0.0;             // target additive error, in (0, 1]
  double delta = 0.0;               // failure probability, in (0, 1)
  std::size_t n = 0;                // dimension
  std::optional<double> mu_override;
};

struct EigResult {
  double best_value = 0.0;       // max_t z_t^T A z_t
  std::size_t best_round = 0;    // 0-based, smallest argmax
  double lambda1_oracle = 0.0;   // dense eigendecomposition reference
  double gap = 0.0;              // lambda1_oracle - best_value
  std::size_t iterations = 0;
  double mu = 0.0;
  std::vector<double> rayleigh_values;  // z_t^T A z_t per round
};

// ceil(3 eps^-2 ln(9 n / delta)).
std::size_t required_iterations(double epsilon, double delta, std::size_t n);

// sqrt(ln(9 n / delta) / (3 T)).
double eig_step_size(std::size_t rounds, double delta, std::size_t n);

// Runs the online iteration with the constant sequence A_t = A for
// required_iterations rounds from a uniform random start and reports the best
// Rayleigh quotient seen. Requires ||A||_2 <= 1 (see normalize_spectral).
// With probability at least 1 - delta over the start, gap <= epsilon.
EigResult solve_leading_eigenvalue(const SymmetricMatrix& a,
                                   const EigRunConfig& cfg, Rng& rng);

// x <- (x + A x)/||x + A x||; the shift keeps the iteration matrix PSD
// whenever ||A||_2 <= 1. Returns all iterates including the start.
std::vector<UnitVector> power_method_trajectory(const SymmetricMatrix& a,
                                                std::size_t iterations,
                                                const UnitVector& init);

// Classical baseline for comparison tables; same result shape as the solver.
EigResult power_method_baseline(const SymmetricMatrix& a,
                                std::size_t iterations, Rng& rng);

// Fraction of uniform random unit vectors z with (z^T e_1)^2 >= delta/(9n).
double overlap_sampler(std::size_t n, double delta, std::size_t trials,
                       Rng& rng);

}  // namespace ojaregret
