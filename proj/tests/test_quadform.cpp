#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ojaregret/eig.hpp"
#include "ojaregret/errors.hpp"
#include "ojaregret/linalg.hpp"
#include "ojaregret/quadform.hpp"
#include "ojaregret/rng.hpp"
#include "ojaregret/serialize.hpp"

using namespace ojaregret;

namespace {

// The two axis projectors with g = max: optimum 1/2 at (+-1/sqrt2, +-1/sqrt2).
QuadFormProblem axis_max_problem() {
  const CommutingFamily family(OrthonormalBasis::identity(2),
                               {{1.0, 0.0}, {0.0, 1.0}});
  return QuadFormProblem(family, make_g_oracle(GKind::kMaxCoord), 1.0);
}

QuadFormProblem planted_l1_problem(std::size_t n, std::size_t m, Rng& rng,
                                   std::vector<double>* planted = nullptr) {
  const auto family = random_commuting_family(n, m, rng);
  const UnitVector x0 = random_unit_vector(n, rng);
  const auto overlaps = family.basis().overlaps(x0.coords());
  std::vector<double> targets(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      targets[i] += family.eigenvalues(i)[j] * overlaps[j] * overlaps[j];
    }
  }
  if (planted) *planted = x0.coords();
  GParams params;
  params.targets = targets;
  return QuadFormProblem(family, make_g_oracle(GKind::kL1System, params),
                         static_cast<double>(m));
}

// Exhaustive KKT search over supports; the projection oracle for small n.
std::vector<double> brute_force_simplex_projection(
    const std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    double sum = 0.0;
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        sum += v[i];
        ++size;
      }
    }
    const double tau = (sum - 1.0) / static_cast<double>(size);
    bool feasible = true;
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        w[i] = v[i] - tau;
        if (w[i] < -1e-12) feasible = false;
      } else if (v[i] - tau > 1e-12) {
        feasible = false;  // KKT: excluded coordinates must clip at zero
      }
    }
    if (feasible) return w;
  }
  return {};
}

}  // namespace

TEST_CASE("evaluate_map basics") {
  Rng rng(1000);
  const CommutingFamily family(OrthonormalBasis::identity(2),
                               {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
  const QuadFormProblem all_identity(
      family, make_g_oracle(GKind::kMaxCoord), 3.0);
  const UnitVector z = random_unit_vector(2, rng);
  for (double y : evaluate_map(all_identity, z)) {
    CHECK(y == doctest::Approx(1.0).epsilon(1e-12));
  }

  const double s = 1.0 / std::sqrt(2.0);
  const auto y = evaluate_map(axis_max_problem(), UnitVector({s, s}));
  CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("evaluate_map agrees with the eigen-expansion identity") {
  Rng rng(1100);
  const auto family = random_commuting_family(4, 3, rng);
  const QuadFormProblem problem(family, make_g_oracle(GKind::kMaxCoord), 3.0);
  const UnitVector z = random_unit_vector(4, rng);
  const auto overlaps = family.basis().overlaps(z.coords());
  const auto y = evaluate_map(problem, z);
  for (std::size_t i = 0; i < 3; ++i) {
    double expected = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      expected += family.eigenvalues(i)[j] * overlaps[j] * overlaps[j];
    }
    CHECK(std::abs(y[i] - expected) <= 1e-10);
  }
}

TEST_CASE("g oracles: values, kinks, and declared conventions") {
  // Interval collapsed to a point behaves like a shifted absolute value.
  GParams p;
  p.a = 0.25;
  p.b = 0.25;
  const auto interval = make_g_oracle(GKind::kInterval, p);
  CHECK(interval.eval({0.25}).value == 0.0);
  CHECK(interval.eval({0.25}).subgradient[0] == 0.0);  // kink convention
  CHECK(interval.eval({0.5}).value == doctest::Approx(0.25));
  CHECK(interval.eval({0.5}).subgradient[0] == 1.0);
  CHECK(interval.eval({0.0}).value == doctest::Approx(0.25));
  CHECK(interval.eval({0.0}).subgradient[0] == -1.0);
  GParams bad;
  bad.a = 1.0;
  bad.b = 0.0;
  CHECK_THROWS_AS(make_g_oracle(GKind::kInterval, bad), ValidationError);

  // Coefficient box over [0,1]^2 at y = (0.5, -0.5): the best coefficient
  // vector is (1, 0) and the supported value is 0.5.
  GParams box;
  box.lo = {0.0, 0.0};
  box.hi = {1.0, 1.0};
  const auto poly = make_g_oracle(GKind::kPolyBox, box);
  const auto at = poly.eval({0.5, -0.5});
  CHECK(at.value == doctest::Approx(0.5));
  CHECK(at.subgradient == std::vector<double>{1.0, 0.0});
  CHECK(poly_box_argmax(box.lo, box.hi, {0.5, -0.5}) ==
        std::vector<double>{1.0, 0.0});

  // Zero-residual l1 system: value 0, subgradients within [-1, 1].
  GParams l1;
  l1.targets = {0.125, -0.5};
  const auto sys = make_g_oracle(GKind::kL1System, l1);
  const auto zr = sys.eval({0.125, -0.5});
  CHECK(zr.value == 0.0);
  for (double g : zr.subgradient) CHECK(std::abs(g) <= 1.0);

  // max at a strict maximizer.
  const auto mx = make_g_oracle(GKind::kMaxCoord);
  const auto me = mx.eval({1.0, 0.0});
  CHECK(me.value == 1.0);
  CHECK(me.subgradient == std::vector<double>{1.0, 0.0});
}

TEST_CASE("every shipped oracle passes a convexity probe sweep") {
  Rng rng(1200);
  std::vector<GOracle> oracles;
  oracles.push_back(make_g_oracle(GKind::kNegIdentity));
  oracles.push_back(make_g_oracle(GKind::kMaxCoord));
  {
    GParams p;
    p.b = 0.3;
    oracles.push_back(make_g_oracle(GKind::kSquare, p));
  }
  {
    GParams p;
    p.a = -0.2;
    p.b = 0.4;
    oracles.push_back(make_g_oracle(GKind::kInterval, p));
  }
  {
    GParams p;
    p.targets = {0.1, -0.3, 0.7};
    oracles.push_back(make_g_oracle(GKind::kL1System, p));
  }
  {
    GParams p;
    p.lo = {-1.0, 0.0};
    p.hi = {0.5, 2.0};
    oracles.push_back(make_g_oracle(GKind::kPolyBox, p));
  }
  for (const auto& oracle : oracles) {
    const std::size_t m = oracle.arity.value_or(2);
    for (int probe = 0; probe < 200; ++probe) {
      std::vector<double> y(m), z(m);
      for (double& x : y) x = rng.uniform(-1.0, 1.0);
      for (double& x : z) x = rng.uniform(-1.0, 1.0);
      const auto at_y = oracle.eval(y);
      const auto at_z = oracle.eval(z);
      double linear = at_y.value;
      for (std::size_t i = 0; i < m; ++i) {
        linear += at_y.subgradient[i] * (z[i] - y[i]);
      }
      CHECK(at_z.value >= linear - 1e-9);
      CHECK(norm2(at_y.subgradient) <= oracle.subgrad_norm_bound + 1e-12);
    }
  }
}

TEST_CASE("quadopt_step: constant g freezes the state") {
  GParams p;
  p.lo = {0.5, 0.5};
  p.hi = {0.5, 0.5};  // degenerate box: g is linear with fixed coefficients
  Rng rng(1300);
  const auto family = random_commuting_family(3, 2, rng);
  const QuadFormProblem problem(family, make_g_oracle(GKind::kPolyBox, p), 1.0);
  const OjaState s = initial_oja_state(random_unit_vector(3, rng));
  // Not constant g, but a fixed subgradient: combination is the same matrix
  // every round. A genuinely constant oracle has zero subgradient:
  GParams zero_box;
  zero_box.lo = {0.0, 0.0};
  zero_box.hi = {0.0, 0.0};
  const QuadFormProblem constant(
      family, make_g_oracle(GKind::kPolyBox, zero_box), 1.0);
  const auto step = quadopt_step(s, constant, OjaConfig(0.2, 5));
  CHECK(step.state.direction.coords() == s.direction.coords());
  CHECK(step.g_eval.value == 0.0);
  CHECK(frobenius_norm(step.grad_combination) == 0.0);
}

TEST_CASE("quadopt_step: single-matrix reduction and the Rayleigh step") {
  Rng rng(1400);
  const auto basis = random_orthonormal_basis(4, rng);
  std::vector<double> lam{0.8, -0.5, 0.2, 0.0};
  const CommutingFamily family(basis, {lam});
  const QuadFormProblem problem(family, make_g_oracle(GKind::kNegIdentity), 1.0);
  const OjaState s = initial_oja_state(random_unit_vector(4, rng));
  const OjaConfig cfg(0.1, 3);
  const auto step = quadopt_step(s, problem, cfg);
  // G_t = A_1 / G with G = 1: identical to stepping on the matrix itself.
  const auto direct = oja_step(s, materialize(family, 0), cfg);
  CHECK(step.state.direction.coords() == direct.direction.coords());
}

TEST_CASE("quadopt_step: max objective at a strict maximizer picks -A_1/G") {
  const auto problem = axis_max_problem();
  const OjaState s = initial_oja_state(UnitVector({1.0, 0.0}));
  const auto step = quadopt_step(s, problem, OjaConfig(0.1, 1));
  CHECK(step.g_eval.subgradient == std::vector<double>{1.0, 0.0});
  CHECK(step.grad_combination(0, 0) == doctest::Approx(-1.0));
  CHECK(step.grad_combination(1, 1) == 0.0);
}

TEST_CASE("a misdeclared Lipschitz parameter is caught at step time") {
  const CommutingFamily family(OrthonormalBasis::identity(2),
                               {{1.0, 0.0}, {0.0, 1.0}});
  GParams p;
  p.targets = {0.0, 0.0};
  // True certificate needs G = 2; declare half of it.
  const QuadFormProblem problem(family, make_g_oracle(GKind::kL1System, p), 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  const OjaState state = initial_oja_state(UnitVector({s, s}));
  CHECK_THROWS_AS(quadopt_step(state, problem, OjaConfig(0.1, 1)), OracleError);
}

TEST_CASE("simplex projection matches the exhaustive KKT oracle") {
  Rng rng(1500);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-2.0, 2.0);
    const auto fast = project_to_simplex(v);
    const auto slow = brute_force_simplex_projection(v);
    REQUIRE(!slow.empty());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(fast[i] >= 0.0);
      CHECK(std::abs(fast[i] - slow[i]) <= 1e-10);
      total += fast[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("simplex baseline: axis/max instance and linear objectives") {
  const auto base = simplex_baseline(axis_max_problem());
  CHECK(base.value == doctest::Approx(0.5).epsilon(1e-9));

  // Linear objective: minimum at a vertex, value -lambda_1.
  Rng rng(1600);
  const auto family = random_commuting_family(5, 1, rng);
  const QuadFormProblem linear(family, make_g_oracle(GKind::kNegIdentity), 1.0);
  const double lam1 =
      *std::max_element(family.eigenvalues(0).begin(),
                        family.eigenvalues(0).end());
  CHECK(simplex_baseline(linear).value == doctest::Approx(-lam1).epsilon(1e-6));
}

TEST_CASE("simplex baseline: planted l1 systems reach zero") {
  Rng rng(1700);
  for (int trial = 0; trial < 5; ++trial) {
    Rng local = rng.fork(trial);
    const auto problem = planted_l1_problem(6 + local.below(10),
                                            2 + local.below(4), local);
    CHECK(simplex_baseline(problem).value <= 1e-6);
  }
}

TEST_CASE("simplex baseline requires a basis") {
  const std::vector<SymmetricMatrix> mats{SymmetricMatrix::diagonal({1.0, 0.0})};
  const QuadFormProblem problem(mats, make_g_oracle(GKind::kNegIdentity), 1.0);
  CHECK_THROWS_AS(simplex_baseline(problem), UnsupportedInstanceError);
}

TEST_CASE("solve_quadform on the axis/max instance approaches 1/2") {
  Rng rng(1800);
  const auto problem = axis_max_problem();
  const auto result =
      solve_quadform(problem, QuadSolveOptions{10000, 0.1, std::nullopt}, rng);
  CHECK(result.best_value >= 0.5 - 1e-12);  // max >= 1/2 on the sphere
  CHECK(result.best_value <= 0.5 + result.bound_rhs);
  // Both squared coordinates of the near-optimizer sit near one half.
  for (std::size_t i = 0; i < 2; ++i) {
    const double sq = result.best_point[i] * result.best_point[i];
    CHECK(std::abs(sq - 0.5) <= 0.05);
  }
  const auto check = check_quadform_bound(result, 0.5);
  CHECK(check.satisfied);
}

TEST_CASE("solve_quadform: quadratic equation with attainable target") {
  Rng rng(1900);
  const CommutingFamily family(OrthonormalBasis::identity(2), {{1.0, 0.0}});
  GParams p;
  p.b = 0.25;  // attainable: 0.25 lies inside the eigenvalue range [0, 1]
  const QuadFormProblem problem(family, make_g_oracle(GKind::kSquare, p));
  // T sized so the theorem bound itself is 0.05: ceil(3 (G/0.05)^2 ln(9 n^2 / delta)).
  const std::size_t rounds = static_cast<std::size_t>(
      std::ceil(3.0 * std::pow(problem.lipschitz() / 0.05, 2) *
                std::log(9.0 * 4.0 / 0.1)));
  const auto result =
      solve_quadform(problem, QuadSolveOptions{rounds, 0.1, std::nullopt}, rng);
  CHECK(result.bound_rhs <= 0.05 + 1e-12);
  CHECK(result.best_value <= 0.05);
  CHECK(simplex_baseline(problem).value <= 1e-9);
}

TEST_CASE("solve_quadform: planted l1 recovery within the stated bound") {
  Rng rng(2000);
  const auto problem = planted_l1_problem(8, 3, rng);
  const auto result =
      solve_quadform(problem, QuadSolveOptions{4000, 0.1, std::nullopt}, rng);
  CHECK(result.best_value <= result.bound_rhs);
}

TEST_CASE("solve_quadform horizon validation") {
  Rng rng(2100);
  const auto problem = axis_max_problem();
  CHECK_THROWS_AS(
      solve_quadform(problem, QuadSolveOptions{2, 0.1, std::nullopt}, rng),
      HorizonError);
  CHECK_THROWS_AS(
      solve_quadform(problem, QuadSolveOptions{0, 0.1, std::nullopt}, rng),
      ValidationError);
}

TEST_CASE("reduction identity: the quadform and eigenvalue paths coincide") {
  Rng rng(2200);
  const auto basis = random_orthonormal_basis(6, rng);
  std::vector<double> lam{0.9, 0.6, -0.8, 0.3, -0.2, 0.0};
  const CommutingFamily family(basis, {lam});
  const auto a = materialize(family, 0);

  const std::size_t rounds = 1000;
  const double mu = eig_step_size(rounds, 0.1, 6);

  Rng eig_rng(777);
  const UnitVector init_eig = random_unit_vector(6, eig_rng);
  const auto states = run_oja(std::vector<SymmetricMatrix>(rounds, a),
                              OjaConfig(mu, rounds), init_eig);

  Rng quad_rng(777);
  const QuadFormProblem problem(family, make_g_oracle(GKind::kNegIdentity), 1.0);
  const auto quad = solve_quadform(
      problem, QuadSolveOptions{rounds, 0.1, mu}, quad_rng);

  REQUIRE(quad.objective_values.size() == rounds);
  for (std::size_t t = 0; t < rounds; ++t) {
    const double rayleigh = quad_form(a, states[t].direction.coords());
    CHECK(std::abs(quad.objective_values[t] + rayleigh) <= 1e-10);
  }
}

TEST_CASE("combined matrices inherit the shared eigenbasis") {
  Rng rng(2300);
  const auto family = random_commuting_family(5, 3, rng);
  const QuadFormProblem problem(family, make_g_oracle(GKind::kMaxCoord), 3.0);
  const OjaState s = initial_oja_state(random_unit_vector(5, rng));
  const auto step = quadopt_step(s, problem, OjaConfig(0.1, 1));
  for (std::size_t j = 0; j < 5; ++j) {
    const auto& v = family.basis().column(j);
    const auto gv = matvec(step.grad_combination, v);
    const double rayleigh = dot(v, gv);
    double residual = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      residual += (gv[i] - rayleigh * v[i]) * (gv[i] - rayleigh * v[i]);
    }
    CHECK(std::sqrt(residual) <= 1e-9);
  }
}

TEST_CASE("problem JSON round trip drives the same solver path") {
  Rng rng(2400);
  nlohmann::json j;
  j["family"] = family_to_json(CommutingFamily(OrthonormalBasis::identity(2),
                                               {{1.0, 0.0}, {0.0, 1.0}}));
  j["g"] = {{"kind", "max"}};
  j["G"] = 1.0;
  const auto problem = problem_from_json(j);
  CHECK(problem.num_matrices() == 2);
  CHECK(problem.lipschitz() == 1.0);
  const auto result =
      solve_quadform(problem, QuadSolveOptions{500, 0.1, std::nullopt}, rng);
  CHECK(result.best_value <= 0.5 + result.bound_rhs);

  nlohmann::json bad = j;
  bad["g"] = {{"kind", "nonsense"}};
  CHECK_THROWS_AS(problem_from_json(bad), ConfigError);
}

TEST_CASE("non-commuting matrices fail the certificate") {
  const SymmetricMatrix a = SymmetricMatrix::diagonal({1.0, -1.0});
  const SymmetricMatrix b(2, {0.0, 1.0, 1.0, 0.0});
  CHECK_THROWS_AS(
      QuadFormProblem(std::vector<SymmetricMatrix>{a, b},
                      make_g_oracle(GKind::kMaxCoord), 2.0),
      ValidationError);
  // Explicitly unclaimed: construction succeeds, flagged no-guarantee.
  const QuadFormProblem loose(std::vector<SymmetricMatrix>{a, b},
                              make_g_oracle(GKind::kMaxCoord), 2.0, false);
  CHECK_FALSE(loose.commuting_certified());
}
