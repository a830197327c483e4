#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ojaregret/linalg.hpp"
#include "ojaregret/oja.hpp"
#include "ojaregret/report.hpp"
#include "ojaregret/rng.hpp"

namespace ojaregret {

// First-order oracle kinds for the objective g composed with the quadratic
// map z -> (z^T A_1 z, ..., z^T A_m z).
enum class GKind {
  kNegIdentity,  // g(y) = -y_1
  kSquare,       // g(y) = (y_1 - b)^2
  kInterval,     // g(y) = max(0, a - y_1) + max(0, y_1 - b)
  kMaxCoord,     // g(y) = max_i y_i
  kL1System,     // g(y) = sum_i |y_i - b_i|
  kPolyBox,      // g(y) = max over c in the box [lo, hi] of c^T y
};

struct GParams {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> targets;  // l1 system right-hand side
  std::vector<double> lo, hi;   // coefficient box
};

struct GEval {
  double value = 0.0;
  std::vector<double> subgradient;
};

struct GOracle {
  GKind kind = GKind::kNegIdentity;
  std::function<GEval(const std::vector<double>&)> eval;
  double subgrad_norm_bound = 1.0;  // sup ||g'||_2 over [-1,1]^m
  double default_lipschitz = 1.0;   // closed-form G for unit-norm matrices
  std::optional<std::size_t> arity; // required m when the params pin it
};

GOracle make_g_oracle(GKind kind, const GParams& params = {});

// Separable maximizer of c^T y over the box; the recovered coefficient
// vector for the polynomial objective.
std::vector<double> poly_box_argmax(const std::vector<double>& lo,
                                    const std::vector<double>& hi,
                                    const std::vector<double>& y);

// Convex objective over the unit sphere: minimize g(z^T A_1 z, ..., z^T A_m z)
// for matrices with a shared eigenbasis and spectral norms at most 1. The
// declared Lipschitz parameter G must dominate ||sum_i g'(i) A_i||_2; each
// step certifies it via the combined matrix's spectral norm.
class QuadFormProblem {
 public:
  QuadFormProblem(CommutingFamily family, GOracle oracle,
                  std::optional<double> lipschitz = std::nullopt);
  QuadFormProblem(std::vector<SymmetricMatrix> matrices, GOracle oracle,
                  std::optional<double> lipschitz = std::nullopt,
                  bool claim_commuting = true);

  std::size_t dim() const { return matrices_.front().dim(); }
  std::size_t num_matrices() const { return matrices_.size(); }
  const SymmetricMatrix& matrix(std::size_t i) const;
  bool has_basis() const { return family_.has_value(); }
  const CommutingFamily& family() const;
  bool commuting_certified() const { return commuting_certified_; }
  double lipschitz() const { return lipschitz_; }
  const GOracle& oracle() const { return oracle_; }

  // Evaluates g at y with finiteness, range, and (sampled) subgradient
  // certificates; 32 random probes check the subgradient inequality.
  GEval query(const std::vector<double>& y) const;

 private:
  void validate(bool claim_commuting);

  std::vector<SymmetricMatrix> matrices_;
  std::optional<CommutingFamily> family_;
  GOracle oracle_;
  double lipschitz_ = 1.0;
  bool commuting_certified_ = false;
  mutable Rng probe_rng_{0x9B0BE5EEDULL};
  mutable std::size_t query_count_ = 0;
};

// (z^T A_1 z, ..., z^T A_m z); every component lies in [-1, 1].
std::vector<double> evaluate_map(const QuadFormProblem& problem,
                                 const UnitVector& z);

struct QuadStepResult {
  OjaState state;
  SymmetricMatrix grad_combination;  // G_t = -(1/G) sum_i g_t(i) A_i
  std::vector<double> map_value;     // y = map(z_t)
  GEval g_eval;                      // g evaluated at y
};

QuadStepResult quadopt_step(const OjaState& state,
                            const QuadFormProblem& problem,
                            const OjaConfig& cfg);

struct QuadSolveOptions {
  std::size_t rounds = 0;  // T
  double delta = 0.1;
  std::optional<double> mu_override;
};

struct QuadOptResult {
  double best_value = 0.0;
  std::size_t best_round = 0;
  std::vector<double> objective_values;  // f(z_t) per round
  double bound_rhs = 0.0;                // G sqrt(3 ln(9 n^2 / delta) / T)
  UnitVector best_point;
  double mu = 0.0;
};

// T rounds from a uniform random start; with probability at least 1 - delta,
// best_value - min f <= bound_rhs.
QuadOptResult solve_quadform(const QuadFormProblem& problem,
                             const QuadSolveOptions& opts, Rng& rng);

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_to_simplex(std::vector<double> v);

struct SimplexBaselineResult {
  double value = 0.0;
  std::vector<double> weights;
  std::size_t iterations = 0;
};

// Reference optimum via projected subgradient descent on min over the
// simplex of g(Lambda w), where Lambda(i, j) is the eigenvalue of A_i on
// basis vector j. Diminishing steps first, then geometrically shrinking
// constant-step refinement passes that restore convergence on kinked
// objectives; at most 1e5 total iterations. Requires a known basis.
SimplexBaselineResult simplex_baseline(const QuadFormProblem& problem);

// best_value - fstar <= bound_rhs + 1e-6.
BoundReport check_quadform_bound(const QuadOptResult& result, double fstar);

}  // namespace ojaregret
