#include "ojaregret/oja.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ojaregret/errors.hpp"

namespace ojaregret {

namespace {

constexpr double kBoundSlack = 1e-9;
constexpr double kEigvecResidualTol = 1e-9;

double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace

OjaConfig::OjaConfig(double mu_, std::size_t horizon_)
    : mu(mu_), horizon(horizon_) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ValidationError("OjaConfig: mu must be finite and >= 0");
  }
}

OjaState initial_oja_state(UnitVector init) {
  return OjaState{std::move(init), 0.0, 1};
}

OjaState oja_step(const OjaState& state, const SymmetricMatrix& a,
                  const OjaConfig& cfg) {
  if (a.dim() != state.direction.dim()) {
    throw DimensionError("oja_step: matrix/state dimension mismatch");
  }
  if (cfg.mu >= 1.0) {
    throw ValidationError(
        "oja_step: mu must be below 1 (the update could vanish otherwise)");
  }
  const auto& z = state.direction.coords();
  std::vector<double> y = matvec(a, z);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = z[i] + cfg.mu * y[i];
  const double ny = norm2(y);
  for (double& x : y) x /= ny;
  return OjaState{UnitVector(std::move(y)),
                  state.log_magnitude + std::log(ny), state.round + 1};
}

std::vector<OjaState> run_oja(
    const std::function<const SymmetricMatrix&(std::size_t)>& source,
    std::size_t rounds, const OjaConfig& cfg, const UnitVector& init) {
  std::vector<OjaState> states;
  states.reserve(rounds + 1);
  states.push_back(initial_oja_state(init));
  for (std::size_t t = 0; t < rounds; ++t) {
    states.push_back(oja_step(states.back(), source(t), cfg));
  }
  return states;
}

std::vector<OjaState> run_oja(const std::vector<SymmetricMatrix>& sequence,
                              const OjaConfig& cfg, const UnitVector& init) {
  return run_oja(
      [&sequence](std::size_t t) -> const SymmetricMatrix& {
        return sequence[t];
      },
      sequence.size(), cfg, init);
}

std::vector<OjaState> run_oja(const CommutingFamily& family,
                              const OjaConfig& cfg, const UnitVector& init) {
  std::vector<OjaState> states;
  states.reserve(family.rounds() + 1);
  states.push_back(initial_oja_state(init));
  for (std::size_t t = 0; t < family.rounds(); ++t) {
    states.push_back(oja_step(states.back(), materialize(family, t), cfg));
  }
  return states;
}

PsiTrace psi_trace(const std::vector<OjaState>& states,
                   const OrthonormalBasis& basis) {
  PsiTrace trace;
  trace.rows.reserve(states.size());
  for (const auto& s : states) {
    if (s.direction.dim() != basis.dim()) {
      throw DimensionError("psi_trace: state/basis dimension mismatch");
    }
    auto row = basis.overlaps(s.direction.coords());
    for (double& x : row) x = x * x;
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

std::vector<LossVector> induced_mw_losses(const CommutingFamily& family,
                                          const OjaConfig& cfg) {
  if (cfg.mu > 1.0 / 6.0) {
    throw ValidationError(
        "induced_mw_losses: mu must be at most 1/6 so losses stay in [-1,1]");
  }
  std::vector<LossVector> losses;
  losses.reserve(family.rounds());
  for (std::size_t t = 0; t < family.rounds(); ++t) {
    const auto& lam = family.eigenvalues(t);
    std::vector<double> m(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
      m[i] = -(2.0 * lam[i] + cfg.mu * lam[i] * lam[i]) / 3.0;
    }
    losses.emplace_back(std::move(m));
  }
  return losses;
}

double mw_equivalence_check(const CommutingFamily& family,
                            const OjaConfig& cfg, const UnitVector& init) {
  if (cfg.mu > 1.0 / 6.0) {
    throw ValidationError("mw_equivalence_check: mu must be at most 1/6");
  }
  const std::size_t n = family.dim();
  auto phi1 = family.basis().overlaps(init.coords());
  for (double& x : phi1) x = x * x;
  for (std::size_t i = 0; i < n; ++i) {
    if (phi1[i] == 0.0) {
      throw DegenerateInstanceError(
          "initial vector has zero overlap with basis vector " +
          std::to_string(i));
    }
  }

  const auto states = run_oja(family, cfg, init);
  const auto psi = psi_trace(states, family.basis());

  const MwConfig mw_cfg(3.0 * cfg.mu, n);
  const auto losses = induced_mw_losses(family, cfg);
  const auto mw_states = run_mw(MwState(std::move(phi1)), losses, mw_cfg);

  double max_dev = 0.0;
  for (std::size_t t = 0; t < states.size(); ++t) {
    const auto dist = mw_distribution(mw_states[t]);
    for (std::size_t i = 0; i < n; ++i) {
      max_dev = std::max(max_dev, std::abs(psi.rows[t][i] - dist[i]));
    }
  }
  return max_dev;
}

BoundReport check_regret_bound_full_basis(const CommutingFamily& family,
                                          const std::vector<OjaState>& states,
                                          const OjaConfig& cfg, std::size_t i) {
  if (!(cfg.mu > 0.0 && cfg.mu <= 1.0 / 6.0)) {
    throw ValidationError(
        "check_regret_bound_full_basis: mu must lie in (0, 1/6]");
  }
  if (i >= family.dim()) throw IndexError("eigenvector index out of range");
  const std::size_t rounds = family.rounds();
  if (states.size() != rounds + 1) {
    throw DimensionError("states do not match the family horizon");
  }

  const auto psi = psi_trace(states, family.basis());
  double lhs = 0.0;
  double rhs_sum = 0.0;
  for (std::size_t t = 0; t < rounds; ++t) {
    const auto& lam = family.eigenvalues(t);
    double z_gain = 0.0;
    double norm_inf = 0.0;
    for (std::size_t j = 0; j < lam.size(); ++j) {
      z_gain += psi.rows[t][j] * lam[j];
      norm_inf = std::max(norm_inf, std::abs(lam[j]));
    }
    lhs += lam[i] - z_gain;
    rhs_sum += 3.0 * std::abs(lam[i]) + 0.5 * norm_inf * norm_inf;
  }

  const double overlap_sq = psi.rows.front()[i];
  const double rhs = overlap_sq == 0.0
                         ? infinity()
                         : cfg.mu * rhs_sum -
                               std::log(overlap_sq) / (2.0 * cfg.mu);
  return make_bound_report(lhs, rhs, kBoundSlack);
}

BoundReport check_regret_bound_common_ev(
    const std::vector<SymmetricMatrix>& sequence, const UnitVector& v,
    const std::vector<OjaState>& states, const OjaConfig& cfg) {
  if (!(cfg.mu > 0.0 && cfg.mu <= 0.5)) {
    throw ValidationError(
        "check_regret_bound_common_ev: mu must lie in (0, 1/2]");
  }
  if (states.size() != sequence.size() + 1) {
    throw DimensionError("states do not match the sequence length");
  }

  double lhs = 0.0;
  double norm_sq_sum = 0.0;
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const auto& a = sequence[t];
    const auto av = matvec(a, v.coords());
    const double rayleigh = dot(v.coords(), av);
    double residual_sq = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) {
      const double r = av[k] - rayleigh * v[k];
      residual_sq += r * r;
    }
    if (std::sqrt(residual_sq) > kEigvecResidualTol) {
      throw ValidationError(
          "comparator is not an eigenvector of the round-" + std::to_string(t) +
          " matrix (residual above 1e-9)");
    }
    const double nrm = spectral_norm(a);
    if (nrm > 1.0 + kBoundSlack) {
      throw ValidationError("matrix at round " + std::to_string(t) +
                            " has spectral norm above 1");
    }
    norm_sq_sum += nrm * nrm;
    lhs += rayleigh - quad_form(a, states[t].direction.coords());
  }

  const double o = dot(v.coords(), states.front().direction.coords());
  const double overlap_sq = o * o;
  const double rhs =
      overlap_sq == 0.0
          ? infinity()
          : 1.5 * cfg.mu * norm_sq_sum - std::log(overlap_sq) / (2.0 * cfg.mu);
  return make_bound_report(lhs, rhs, kBoundSlack);
}

BoundReport check_potential_upper(const std::vector<SymmetricMatrix>& sequence,
                                  const std::vector<OjaState>& states,
                                  const OjaConfig& cfg) {
  if (states.size() != sequence.size() + 1) {
    throw DimensionError("states do not match the sequence length");
  }
  double rhs = 0.0;
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const auto& z = states[t].direction.coords();
    const auto az = matvec(sequence[t], z);
    rhs += cfg.mu * (2.0 * dot(z, az) + cfg.mu * dot(az, az));
  }
  return make_bound_report(2.0 * states.back().log_magnitude, rhs, kBoundSlack);
}

BoundReport check_potential_lower(const std::vector<SymmetricMatrix>& sequence,
                                  const UnitVector& v,
                                  const std::vector<OjaState>& states,
                                  const OjaConfig& cfg) {
  if (states.size() != sequence.size() + 1) {
    throw DimensionError("states do not match the sequence length");
  }
  // Checked as formula <= 2 l_{T+1} + slack, so the report's lhs is the
  // formula side. Zero overlap drives the formula to -inf: vacuous.
  const double o = dot(v.coords(), states.front().direction.coords());
  if (o == 0.0) {
    BoundReport r;
    r.lhs = -infinity();
    r.rhs = 2.0 * states.back().log_magnitude;
    r.satisfied = true;
    r.vacuous = true;
    return r;
  }
  double formula = std::log(o * o);
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const double rayleigh = quad_form(sequence[t], v.coords());
    formula += 2.0 * std::log1p(cfg.mu * rayleigh);
  }
  return make_bound_report(formula, 2.0 * states.back().log_magnitude,
                           kBoundSlack);
}

}  // namespace ojaregret
