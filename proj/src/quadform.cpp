#include "ojaregret/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ojaregret/errors.hpp"

namespace ojaregret {

namespace {

constexpr double kCertSlack = 1e-9;
constexpr double kBoxSlack = 1e-9;
constexpr std::size_t kProbeCount = 32;
// Subgradient certificates run at full rate early, then sampled.
constexpr std::size_t kAlwaysCheckQueries = 256;
constexpr std::size_t kCheckStride = 64;

double sign_or_zero(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

GOracle make_g_oracle(GKind kind, const GParams& params) {
  GOracle oracle;
  oracle.kind = kind;
  switch (kind) {
    case GKind::kNegIdentity:
      oracle.eval = [](const std::vector<double>& y) {
        GEval out;
        out.value = -y[0];
        out.subgradient.assign(y.size(), 0.0);
        out.subgradient[0] = -1.0;
        return out;
      };
      oracle.subgrad_norm_bound = 1.0;
      oracle.default_lipschitz = 1.0;
      break;
    case GKind::kSquare: {
      const double b = params.b;
      oracle.eval = [b](const std::vector<double>& y) {
        GEval out;
        out.value = (y[0] - b) * (y[0] - b);
        out.subgradient.assign(y.size(), 0.0);
        out.subgradient[0] = 2.0 * (y[0] - b);
        return out;
      };
      oracle.subgrad_norm_bound = 2.0 * (1.0 + std::abs(b)) + 1e-6;
      oracle.default_lipschitz = 2.0 * (1.0 + std::abs(b));
      oracle.arity = 1;
      break;
    }
    case GKind::kInterval: {
      if (params.a > params.b) {
        throw ValidationError("interval oracle requires a <= b");
      }
      const double a = params.a, b = params.b;
      oracle.eval = [a, b](const std::vector<double>& y) {
        GEval out;
        out.value = std::max(0.0, a - y[0]) + std::max(0.0, y[0] - b);
        out.subgradient.assign(y.size(), 0.0);
        if (y[0] < a) out.subgradient[0] = -1.0;
        else if (y[0] > b) out.subgradient[0] = 1.0;
        return out;
      };
      oracle.subgrad_norm_bound = 1.0;
      oracle.default_lipschitz = 1.0;
      oracle.arity = 1;
      break;
    }
    case GKind::kMaxCoord:
      oracle.eval = [](const std::vector<double>& y) {
        GEval out;
        std::size_t best = 0;  // lexicographically-first maximizer
        for (std::size_t i = 1; i < y.size(); ++i)
          if (y[i] > y[best]) best = i;
        out.value = y[best];
        out.subgradient.assign(y.size(), 0.0);
        out.subgradient[best] = 1.0;
        return out;
      };
      oracle.subgrad_norm_bound = 1.0;
      oracle.default_lipschitz = 1.0;
      break;
    case GKind::kL1System: {
      if (params.targets.empty()) {
        throw ValidationError("l1-system oracle requires a target vector");
      }
      const std::vector<double> b = params.targets;
      oracle.eval = [b](const std::vector<double>& y) {
        GEval out;
        out.subgradient.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
          out.value += std::abs(y[i] - b[i]);
          out.subgradient[i] = sign_or_zero(y[i] - b[i]);
        }
        return out;
      };
      oracle.subgrad_norm_bound = std::sqrt(static_cast<double>(b.size()));
      oracle.default_lipschitz = static_cast<double>(b.size());
      oracle.arity = b.size();
      break;
    }
    case GKind::kPolyBox: {
      if (params.lo.size() != params.hi.size() || params.lo.empty()) {
        throw ValidationError("poly-box oracle requires matching lo/hi vectors");
      }
      for (std::size_t i = 0; i < params.lo.size(); ++i) {
        if (params.lo[i] > params.hi[i]) {
          throw ValidationError("poly-box oracle requires lo <= hi");
        }
      }
      const std::vector<double> lo = params.lo, hi = params.hi;
      oracle.eval = [lo, hi](const std::vector<double>& y) {
        GEval out;
        out.subgradient = poly_box_argmax(lo, hi, y);
        for (std::size_t i = 0; i < y.size(); ++i) {
          out.value += out.subgradient[i] * y[i];
        }
        return out;
      };
      double norm_sq = 0.0, lipschitz = 0.0;
      for (std::size_t i = 0; i < lo.size(); ++i) {
        const double m = std::max(std::abs(lo[i]), std::abs(hi[i]));
        norm_sq += m * m;
        lipschitz += m;
      }
      oracle.subgrad_norm_bound = std::sqrt(norm_sq);
      oracle.default_lipschitz = lipschitz;
      oracle.arity = lo.size();
      break;
    }
  }
  return oracle;
}

std::vector<double> poly_box_argmax(const std::vector<double>& lo,
                                    const std::vector<double>& hi,
                                    const std::vector<double>& y) {
  if (lo.size() != y.size() || hi.size() != y.size()) {
    throw DimensionError("poly_box_argmax: dimension mismatch");
  }
  std::vector<double> c(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) c[i] = y[i] > 0.0 ? hi[i] : lo[i];
  return c;
}

QuadFormProblem::QuadFormProblem(CommutingFamily family, GOracle oracle,
                                 std::optional<double> lipschitz)
    : oracle_(std::move(oracle)) {
  for (std::size_t t = 0; t < family.rounds(); ++t) {
    matrices_.push_back(materialize(family, t));
  }
  family_ = std::move(family);
  lipschitz_ = lipschitz.value_or(oracle_.default_lipschitz);
  commuting_certified_ = true;
  validate(false);
}

QuadFormProblem::QuadFormProblem(std::vector<SymmetricMatrix> matrices,
                                 GOracle oracle,
                                 std::optional<double> lipschitz,
                                 bool claim_commuting)
    : matrices_(std::move(matrices)), oracle_(std::move(oracle)) {
  lipschitz_ = lipschitz.value_or(oracle_.default_lipschitz);
  validate(claim_commuting);
}

void QuadFormProblem::validate(bool claim_commuting) {
  if (matrices_.empty()) {
    throw ValidationError("QuadFormProblem needs at least one matrix");
  }
  const std::size_t n = matrices_.front().dim();
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    if (matrices_[i].dim() != n) {
      throw DimensionError("QuadFormProblem matrices must share a dimension");
    }
    if (spectral_norm(matrices_[i]) > 1.0 + kCertSlack) {
      throw ValidationError("matrix " + std::to_string(i) +
                            " has spectral norm above 1");
    }
  }
  if (claim_commuting) {
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
      for (std::size_t j = i + 1; j < matrices_.size(); ++j) {
        if (commutator_frobenius(matrices_[i], matrices_[j]) > 1e-9) {
          throw ValidationError("matrices " + std::to_string(i) + "," +
                                std::to_string(j) +
                                " fail the commuting certificate");
        }
      }
    }
    commuting_certified_ = true;
  }
  if (oracle_.arity && *oracle_.arity != matrices_.size()) {
    throw DimensionError("oracle arity does not match the number of matrices");
  }
  if (!(lipschitz_ > 0.0) || !std::isfinite(lipschitz_)) {
    throw ValidationError("Lipschitz parameter G must be positive and finite");
  }
}

const SymmetricMatrix& QuadFormProblem::matrix(std::size_t i) const {
  if (i >= matrices_.size()) throw IndexError("matrix index out of range");
  return matrices_[i];
}

const CommutingFamily& QuadFormProblem::family() const {
  if (!family_) {
    throw UnsupportedInstanceError(
        "this instance does not carry an eigenbasis");
  }
  return *family_;
}

GEval QuadFormProblem::query(const std::vector<double>& y) const {
  if (y.size() != matrices_.size()) {
    throw DimensionError("oracle query dimension mismatch");
  }
  for (double x : y) {
    if (!std::isfinite(x) || std::abs(x) > 1.0 + kBoxSlack) {
      throw OracleError("oracle queried outside [-1,1]^m");
    }
  }
  GEval out = oracle_.eval(y);
  if (!std::isfinite(out.value) || out.subgradient.size() != y.size()) {
    throw OracleError("oracle returned a malformed evaluation");
  }
  for (double g : out.subgradient) {
    if (!std::isfinite(g)) throw OracleError("oracle returned a non-finite subgradient");
  }

  const std::size_t k = query_count_++;
  if (k < kAlwaysCheckQueries || k % kCheckStride == 0) {
    for (std::size_t p = 0; p < kProbeCount; ++p) {
      std::vector<double> z(y.size());
      for (double& x : z) x = probe_rng_.uniform(-1.0, 1.0);
      const GEval at_z = oracle_.eval(z);
      double linear = out.value;
      for (std::size_t i = 0; i < y.size(); ++i) {
        linear += out.subgradient[i] * (z[i] - y[i]);
      }
      if (at_z.value < linear - 1e-9) {
        throw OracleError(
            "subgradient certificate failed: oracle output is not convex-"
            "consistent at a probe point");
      }
    }
  }
  return out;
}

std::vector<double> evaluate_map(const QuadFormProblem& problem,
                                 const UnitVector& z) {
  if (z.dim() != problem.dim()) {
    throw DimensionError("evaluate_map: dimension mismatch");
  }
  std::vector<double> y(problem.num_matrices());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = quad_form(problem.matrix(i), z.coords());
  }
  return y;
}

QuadStepResult quadopt_step(const OjaState& state,
                            const QuadFormProblem& problem,
                            const OjaConfig& cfg) {
  if (cfg.mu > 0.5) {
    throw ValidationError("quadopt_step: mu must be at most 1/2");
  }
  std::vector<double> y = evaluate_map(problem, state.direction);
  GEval g = problem.query(y);

  const double G = problem.lipschitz();
  SymmetricMatrix combo = SymmetricMatrix::zero(problem.dim());
  for (std::size_t i = 0; i < problem.num_matrices(); ++i) {
    if (g.subgradient[i] == 0.0) continue;
    combo.add_scaled(problem.matrix(i), -g.subgradient[i] / G);
  }

  // Certificate ||G_t||_2 <= 1; cheap along the eigenbasis when available.
  double combo_norm;
  if (problem.has_basis()) {
    const auto& lams = problem.family().all_eigenvalues();
    combo_norm = 0.0;
    for (std::size_t j = 0; j < problem.dim(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < lams.size(); ++i) {
        s += -g.subgradient[i] / G * lams[i][j];
      }
      combo_norm = std::max(combo_norm, std::abs(s));
    }
  } else {
    combo_norm = spectral_norm(combo);
  }
  if (combo_norm > 1.0 + kCertSlack) {
    throw OracleError(
        "declared Lipschitz parameter G is too small: ||G_t||_2 = " +
        std::to_string(combo_norm));
  }

  QuadStepResult result{oja_step(state, combo, cfg), std::move(combo),
                        std::move(y), std::move(g)};
  return result;
}

QuadOptResult solve_quadform(const QuadFormProblem& problem,
                             const QuadSolveOptions& opts, Rng& rng) {
  if (opts.rounds == 0) {
    throw ValidationError("solve_quadform: need at least one round");
  }
  if (!(opts.delta > 0.0 && opts.delta < 1.0)) {
    throw ValidationError("solve_quadform: delta must lie in (0, 1)");
  }
  const std::size_t n = problem.dim();
  const double log_term =
      std::log(9.0 * static_cast<double>(n) * static_cast<double>(n) /
               opts.delta);
  double mu = opts.mu_override.value_or(
      std::sqrt(log_term / (3.0 * static_cast<double>(opts.rounds))));
  if (mu > 0.5) {
    const std::size_t minimal =
        static_cast<std::size_t>(std::ceil(4.0 / 3.0 * log_term));
    throw HorizonError(
        "horizon too small: derived mu above 1/2; need at least " +
            std::to_string(minimal) + " rounds",
        minimal);
  }

  const OjaConfig cfg(mu, opts.rounds);
  OjaState state = initial_oja_state(random_unit_vector(n, rng));

  QuadOptResult result{0.0, 0, {}, 0.0, state.direction, mu};
  result.bound_rhs =
      problem.lipschitz() *
      std::sqrt(3.0 * log_term / static_cast<double>(opts.rounds));
  result.objective_values.reserve(opts.rounds);

  for (std::size_t t = 0; t < opts.rounds; ++t) {
    if (t + 1 < opts.rounds) {
      QuadStepResult step = quadopt_step(state, problem, cfg);
      result.objective_values.push_back(step.g_eval.value);
      if (t == 0 || step.g_eval.value < result.best_value) {
        result.best_value = step.g_eval.value;
        result.best_round = t;
        result.best_point = state.direction;
      }
      state = std::move(step.state);
    } else {
      // Final round: evaluate without stepping.
      const auto y = evaluate_map(problem, state.direction);
      const GEval g = problem.query(y);
      result.objective_values.push_back(g.value);
      if (t == 0 || g.value < result.best_value) {
        result.best_value = g.value;
        result.best_round = t;
        result.best_point = state.direction;
      }
    }
  }
  return result;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  if (v.empty()) throw DimensionError("project_to_simplex: empty input");
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  std::size_t support = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      tau = candidate;
      support = j + 1;
    }
  }
  (void)support;
  for (double& x : v) x = std::max(x - tau, 0.0);
  return v;
}

SimplexBaselineResult simplex_baseline(const QuadFormProblem& problem) {
  const CommutingFamily& family = problem.family();  // throws if absent
  const std::size_t m = family.rounds();
  const std::size_t n = family.dim();
  const auto& lambda = family.all_eigenvalues();  // m rows of length n

  // ||Lambda||_2 via the m x m Gram matrix.
  std::vector<double> gram(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      gram[i * m + j] = dot(lambda[i], lambda[j]);
    }
  }
  const auto gram_eig = eigendecompose(SymmetricMatrix(m, std::move(gram)));
  const double lambda_norm =
      std::sqrt(std::max(0.0, gram_eig.eigenvalues.front()));
  const double lipschitz =
      std::max(lambda_norm * problem.oracle().subgrad_norm_bound, 1e-18);
  const double diameter = std::numbers::sqrt2;

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  const auto objective = [&](const std::vector<double>& weights) {
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = dot(lambda[i], weights);
    return problem.query(y);
  };
  const auto descend = [&](std::vector<double> weights, double step_scale,
                           bool diminishing, std::size_t steps,
                           double* best_value, std::vector<double>* best_w,
                           std::size_t* used) {
    for (std::size_t k = 1; k <= steps; ++k) {
      const GEval g = objective(weights);
      if (g.value < *best_value) {
        *best_value = g.value;
        *best_w = weights;
      }
      const double step =
          diminishing ? step_scale / std::sqrt(static_cast<double>(k))
                      : step_scale;
      std::vector<double> next(n);
      for (std::size_t j = 0; j < n; ++j) {
        double grad_j = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          grad_j += lambda[i][j] * g.subgradient[i];
        }
        next[j] = weights[j] - step * grad_j;
      }
      weights = project_to_simplex(std::move(next));
      ++*used;
    }
    return weights;
  };

  SimplexBaselineResult result;
  result.value = objective(w).value;
  result.weights = w;

  // Diminishing-step phase.
  const double base_step = diameter / lipschitz;
  descend(w, base_step, /*diminishing=*/true, 20000, &result.value,
          &result.weights, &result.iterations);

  // Constant-step refinement with geometrically shrinking steps; restores
  // progress on kinked objectives where the 1/sqrt(k) schedule stalls.
  int stale_rounds = 0;
  for (int r = 1; r <= 50; ++r) {
    const double before = result.value;
    descend(result.weights, base_step * std::pow(0.5, r),
            /*diminishing=*/false, 1600, &result.value, &result.weights,
            &result.iterations);
    if (before - result.value <
        1e-13 * std::max(1.0, std::abs(result.value))) {
      if (++stale_rounds >= 3) break;
    } else {
      stale_rounds = 0;
    }
  }
  return result;
}

BoundReport check_quadform_bound(const QuadOptResult& result, double fstar) {
  return make_bound_report(result.best_value - fstar, result.bound_rhs, 1e-6);
}

}  // namespace ojaregret
