#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ojaregret/linalg.hpp"
#include "ojaregret/mw.hpp"
#include "ojaregret/report.hpp"

namespace ojaregret {

struct OjaConfig {
  double mu = 0.0;          // step size, >= 0
  std::size_t horizon = 0;  // number of rounds T

  OjaConfig(double mu_, std::size_t horizon_);
};

// Learner state: unit direction z_t plus the accumulated log magnitude
// l_t = ln ||w_t||_2 of the unnormalized iterate. Tracking (z, l) instead of
// w itself keeps the state finite for any horizon while preserving the
// direction dynamics exactly.
struct OjaState {
  UnitVector direction;
  double log_magnitude = 0.0;
  std::size_t round = 1;
};

OjaState initial_oja_state(UnitVector init);

// z' = (z + mu A z) / ||z + mu A z||, l' = l + ln ||z + mu A z||.
// Requires mu < 1 and ||A||_2 <= 1 (attested by the caller) so the
// unnormalized update can never vanish.
OjaState oja_step(const OjaState& state, const SymmetricMatrix& a,
                  const OjaConfig& cfg);

// Runs T rounds against a lazily supplied sequence; result has T+1 states
// with states.front().direction == init.
std::vector<OjaState> run_oja(
    const std::function<const SymmetricMatrix&(std::size_t)>& source,
    std::size_t rounds, const OjaConfig& cfg, const UnitVector& init);
std::vector<OjaState> run_oja(const std::vector<SymmetricMatrix>& sequence,
                              const OjaConfig& cfg, const UnitVector& init);
std::vector<OjaState> run_oja(const CommutingFamily& family,
                              const OjaConfig& cfg, const UnitVector& init);

// Row t holds the squared overlaps (v_i^T z_t)^2; each row lies on the
// probability simplex within 1e-10.
struct PsiTrace {
  std::vector<std::vector<double>> rows;
};

PsiTrace psi_trace(const std::vector<OjaState>& states,
                   const OrthonormalBasis& basis);

// The experts losses m_t(i) = -(2 lambda_t(i) + mu lambda_t(i)^2) / 3 whose
// weight dynamics reproduce the squared-overlap dynamics of the Oja run.
// Requires mu <= 1/6 so every entry lands in [-1, 1].
std::vector<LossVector> induced_mw_losses(const CommutingFamily& family,
                                          const OjaConfig& cfg);

// Runs Oja on the materialized family and the experts recurrence with
// eta = 3 mu, phi_1(i) = (v_i^T init)^2, side by side; returns the largest
// entrywise gap between the normalized squared overlaps and the experts
// distribution over all rounds. Contract: <= 1e-9 for n <= 16, T <= 500.
double mw_equivalence_check(const CommutingFamily& family,
                            const OjaConfig& cfg, const UnitVector& init);

// Regret of the run against eigenvector i versus
//   mu sum_t (3 |v_i^T A_t v_i| + ||A_t||_2^2 / 2) - ln((z_1^T v_i)^2)/(2 mu),
// valid for mu in (0, 1/6] when the whole family is simultaneously
// diagonalized by the basis.
BoundReport check_regret_bound_full_basis(const CommutingFamily& family,
                                          const std::vector<OjaState>& states,
                                          const OjaConfig& cfg, std::size_t i);

// Regret against a single shared unit eigenvector v versus
//   (3 mu / 2) sum_t ||A_t||_2^2 - ln((v^T z_1)^2)/(2 mu),
// valid for mu in (0, 1/2]; the matrices may otherwise differ. v must be an
// eigenvector of every A_t within 1e-9 and all eigenvalues must be in [-1,1].
BoundReport check_regret_bound_common_ev(
    const std::vector<SymmetricMatrix>& sequence, const UnitVector& v,
    const std::vector<OjaState>& states, const OjaConfig& cfg);

// 2 l_{T+1} <= mu sum_t (2 z_t^T A_t z_t + mu ||A_t z_t||^2).
BoundReport check_potential_upper(const std::vector<SymmetricMatrix>& sequence,
                                  const std::vector<OjaState>& states,
                                  const OjaConfig& cfg);

// 2 l_{T+1} >= ln((v^T z_1)^2) + 2 sum_t ln(1 + mu v^T A_t v) for a shared
// eigenvector v; vacuous when the initial overlap is exactly zero.
BoundReport check_potential_lower(const std::vector<SymmetricMatrix>& sequence,
                                  const UnitVector& v,
                                  const std::vector<OjaState>& states,
                                  const OjaConfig& cfg);

}  // namespace ojaregret
