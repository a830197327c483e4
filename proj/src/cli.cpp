#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ojaregret/csv.hpp"
#include "ojaregret/eig.hpp"
#include "ojaregret/errors.hpp"
#include "ojaregret/harness.hpp"
#include "ojaregret/linalg.hpp"
#include "ojaregret/mw.hpp"
#include "ojaregret/oja.hpp"
#include "ojaregret/quadform.hpp"
#include "ojaregret/serialize.hpp"

namespace ojaregret {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBoundViolation = 3;

// Late-applied JSON config: values from --config fill any option the command
// line left untouched.
struct ConfigBindings {
  std::vector<std::pair<CLI::Option*, std::function<void(const json&)>>> binds;

  template <typename T>
  void bind(CLI::Option* opt, const std::string& key, T& var) {
    binds.emplace_back(opt, [key, &var](const json& j) {
      if (j.contains(key)) var = j.at(key).get<T>();
    });
  }
  void apply(const json& cfg) const {
    for (const auto& [opt, fn] : binds) {
      if (opt == nullptr || opt->count() == 0) fn(cfg);
    }
  }
};

std::uint64_t resolve_seed(std::optional<std::uint64_t>& seed) {
  if (!seed) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  return *seed;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-stable newlines
  if (!out) throw ConfigError("cannot open output file " + path);
  return out;
}

SymmetricMatrix load_matrix_arg(const std::string& arg) {
  if (arg.rfind("random:", 0) == 0) {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    bool have_n = false;
    std::stringstream ss(arg.substr(7));
    std::string token;
    while (std::getline(ss, token, ',')) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw ConfigError("bad matrix spec: " + arg);
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "n") {
        n = std::stoul(value);
        have_n = true;
      } else if (key == "seed") {
        seed = std::stoull(value);
      } else {
        throw ConfigError("bad matrix spec key: " + key);
      }
    }
    if (!have_n || n == 0) throw ConfigError("matrix spec needs n>=1: " + arg);
    Rng rng(seed);
    return normalize_spectral(random_symmetric(n, rng));
  }
  return matrix_from_json(load_json_file(arg));
}

// ---------------------------------------------------------------- gen ----

int run_gen(std::size_t n, std::size_t rounds, std::uint64_t seed,
            const std::string& out_path) {
  Rng rng(seed);
  const CommutingFamily family = random_commuting_family(n, rounds, rng);
  save_json_file(out_path, family_to_json(family));
  std::cout << "gen: wrote instance n=" << n << " T=" << rounds
            << " seed=" << seed << " -> " << out_path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- eig ----

int run_eig(const std::string& matrix_arg, double epsilon, double delta,
            std::optional<double> mu, std::size_t trials, std::uint64_t seed,
            const std::string& out_path) {
  const SymmetricMatrix a = load_matrix_arg(matrix_arg);
  EigRunConfig cfg{epsilon, delta, a.dim(), mu};
  Rng base(seed);

  std::vector<std::string> rows(trials);
  std::vector<int> successes(trials, 0);
  parallel_trials(trials, [&](std::size_t trial) {
    Rng rng = base.fork(trial);
    const EigResult r = solve_leading_eigenvalue(a, cfg, rng);
    const bool ok = r.gap <= epsilon;
    successes[trial] = ok ? 1 : 0;
    std::ostringstream os;
    os << trial << ',' << seed << ',' << r.iterations << ','
       << fmt_double(r.mu) << ',' << fmt_double(r.best_value) << ','
       << fmt_double(r.lambda1_oracle) << ',' << fmt_double(r.gap) << ','
       << (ok ? 1 : 0);
    rows[trial] = os.str();
  });

  auto out = open_out(out_path);
  out << "trial,seed,T,mu,best_value,lambda1,gap,success\n";
  for (const auto& row : rows) out << row << '\n';

  std::size_t won = 0;
  for (int s : successes) won += s;
  std::cout << "eig: n=" << a.dim() << " epsilon=" << epsilon
            << " delta=" << delta << " seed=" << seed << " trials=" << trials
            << " successes=" << won << " -> " << out_path << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- mw-check ----

int run_mw_check(std::size_t instances, std::size_t n_max, std::size_t t_max,
                 std::uint64_t seed, const std::string& out_path,
                 const std::string& trajectory_path) {
  Rng rng(seed);
  std::ostringstream body;
  bool all_ok = true;

  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t n = 2 + rng.below(n_max - 1);
    const std::size_t rounds = 1 + rng.below(t_max);
    const double eta = 0.5 * (1.0 - rng.uniform());  // (0, 1/2]
    const MwConfig cfg(eta, n);

    std::vector<double> phi1(n);
    for (double& w : phi1) w = std::exp(rng.uniform(-2.0, 2.0));
    std::vector<LossVector> losses;
    losses.reserve(rounds);
    for (std::size_t t = 0; t < rounds; ++t) {
      std::vector<double> m(n);
      for (double& x : m) x = rng.uniform(-1.0, 1.0);
      losses.emplace_back(std::move(m));
    }
    const auto states = run_mw(MwState(phi1), losses, cfg);

    double worst_margin = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const BoundReport r = check_mw_regret_bound(states, losses, cfg, i);
      worst_margin = std::min(worst_margin, r.rhs - r.lhs);
      ok = ok && r.satisfied;
    }
    all_ok = all_ok && ok;
    body << k << ',' << n << ',' << rounds << ',' << fmt_double(eta) << ','
         << fmt_double(worst_margin) << ',' << (ok ? 1 : 0) << '\n';

    if (k == 0 && !trajectory_path.empty()) {
      auto traj = open_out(trajectory_path);
      write_mw_trajectory_csv(traj, states, losses, cfg);
    }
  }

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "instance,n,T,eta,worst_margin,satisfied\n" << body.str();
  }
  std::cout << "mw-check: instances=" << instances << " seed=" << seed
            << (all_ok ? " all bounds satisfied" : " BOUND VIOLATION") << "\n";
  return all_ok ? kExitOk : kExitBoundViolation;
}

// -------------------------------------------------------------- equiv ----

int run_equiv(std::size_t n, std::size_t rounds, double mu, std::uint64_t seed,
              const std::string& instance_path, const std::string& out_path) {
  Rng rng(seed);
  const CommutingFamily family =
      instance_path.empty()
          ? random_commuting_family(n, rounds, rng)
          : family_from_json(load_json_file(instance_path));
  const UnitVector init = random_unit_vector(family.dim(), rng);
  const double deviation =
      mw_equivalence_check(family, OjaConfig(mu, family.rounds()), init);

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "n,T,mu,seed,deviation\n";
    out << family.dim() << ',' << family.rounds() << ',' << fmt_double(mu)
        << ',' << seed << ',' << fmt_double(deviation) << '\n';
  }
  const bool in_contract = family.dim() <= 16 && family.rounds() <= 500;
  const bool ok = !in_contract || deviation <= 1e-9;
  std::cout << "equiv: n=" << family.dim() << " T=" << family.rounds()
            << " mu=" << mu << " seed=" << seed
            << " deviation=" << fmt_double(deviation)
            << (ok ? "" : " EXCEEDS 1e-9") << "\n";
  return ok ? kExitOk : kExitBoundViolation;
}

// ------------------------------------------------------------- quadopt ----

int run_quadopt(const std::string& problem_path, std::size_t rounds,
                double delta, std::optional<double> mu, std::uint64_t seed,
                const std::string& out_path, bool with_baseline) {
  const QuadFormProblem problem =
      problem_from_json(load_json_file(problem_path));
  Rng rng(seed);
  const QuadOptResult result =
      solve_quadform(problem, QuadSolveOptions{rounds, delta, mu}, rng);

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "t,f_value,best_so_far,bound_rhs\n";
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < result.objective_values.size(); ++t) {
      best = std::min(best, result.objective_values[t]);
      out << (t + 1) << ',' << fmt_double(result.objective_values[t]) << ','
          << fmt_double(best) << ',' << fmt_double(result.bound_rhs) << '\n';
    }
  }

  std::cout << "quadopt: T=" << rounds << " mu=" << fmt_double(result.mu)
            << " seed=" << seed
            << " best_value=" << fmt_double(result.best_value)
            << " best_round=" << (result.best_round + 1)
            << " bound_rhs=" << fmt_double(result.bound_rhs);
  if (!problem.commuting_certified()) std::cout << " (no guarantee)";
  std::cout << "\n";

  if (with_baseline) {
    const SimplexBaselineResult base = simplex_baseline(problem);
    const BoundReport check = check_quadform_bound(result, base.value);
    std::cout << "quadopt baseline: fstar=" << fmt_double(base.value)
              << " gap=" << fmt_double(check.lhs) << " within_bound="
              << (check.satisfied ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

// ----------------------------------------------------------- adversary ----

AdversaryKind adversary_kind_from_string(const std::string& s) {
  if (s == "fixed_rank_one") return AdversaryKind::kFixedBasisRankOne;
  if (s == "rotating") return AdversaryKind::kRotatingBasis;
  if (s == "block_orthogonal") return AdversaryKind::kBlockOrthogonal;
  if (s == "commuting") return AdversaryKind::kCommutingControl;
  throw ConfigError("unknown adversary kind: " + s);
}

void write_oja_trajectory_csv(std::ostream& os,
                              const std::vector<SymmetricMatrix>& sequence,
                              const std::vector<OjaState>& states,
                              const UnitVector& comparator) {
  os << "t,quadform_value,comparator_value,cumulative_regret,log_magnitude\n";
  double cumulative = 0.0;
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const double learner = quad_form(sequence[t], states[t].direction.coords());
    const double best = quad_form(sequence[t], comparator.coords());
    cumulative += best - learner;
    os << (t + 1) << ',' << fmt_double(learner) << ',' << fmt_double(best)
       << ',' << fmt_double(cumulative) << ','
       << fmt_double(states[t + 1].log_magnitude) << '\n';
  }
}

int run_adversary(const std::string& kind_str, const std::string& instance_path,
                  std::size_t n, std::size_t rounds, std::size_t block,
                  std::size_t subspace_dim, std::optional<double> mu_opt,
                  double delta, std::uint64_t seed, bool sweep,
                  const std::string& out_path,
                  const std::string& trajectory_path) {
  std::vector<std::size_t> horizons;
  if (sweep) {
    for (std::size_t t = 256; t <= 16384; t *= 2) horizons.push_back(t);
  } else {
    horizons.push_back(rounds);
  }

  Rng base(seed);
  std::ostringstream body;
  bool deterministic_ok = true;
  std::string kind_label = instance_path.empty() ? kind_str : "file";

  for (std::size_t h = 0; h < horizons.size(); ++h) {
    const std::size_t horizon = horizons[h];
    AdversaryOutput adv;
    if (!instance_path.empty()) {
      CommutingFamily family = family_from_json(load_json_file(instance_path));
      for (std::size_t t = 0; t < family.rounds(); ++t) {
        adv.matrices.push_back(materialize(family, t));
      }
      adv.family = std::move(family);
    } else {
      AdversarySpec spec;
      spec.kind = adversary_kind_from_string(kind_str);
      spec.block = block;
      spec.subspace_dim = subspace_dim;
      // The sequence is fixed before the learner stream is ever touched.
      Rng gen_rng = base.fork(2 * h);
      adv = generate_adversary_full(spec, horizon, n, gen_rng);
    }
    const std::size_t dim = adv.matrices.front().dim();
    const std::size_t played = adv.matrices.size();
    const double mu =
        mu_opt.value_or(eig_step_size(played, delta, dim));
    const OjaConfig cfg(mu, played);

    Rng learner_rng = base.fork(2 * h + 1);
    const UnitVector init = random_unit_vector(dim, learner_rng);
    const OnlineRegretReport report = run_online_game(adv.matrices, cfg, init);

    body << kind_label << ',' << dim << ',' << played << ',' << fmt_double(mu)
         << ',' << seed << ',' << fmt_double(report.lambda1_sum) << ','
         << fmt_double(report.learner_payoff) << ','
         << fmt_double(report.regret) << ','
         << fmt_double(report.regret_over_rounds) << ','
         << (report.commuting ? 1 : 0) << '\n';

    // Simultaneously diagonalizable control: the regret bound against the
    // best shared eigenvector is a deterministic certificate once z_1 is
    // fixed. A violation is an implementation defect, not an outcome.
    if (adv.family && mu <= 0.5) {
      const auto states = run_oja(adv.matrices, cfg, init);
      std::size_t best_i = 0;
      double best_sum = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < dim; ++i) {
        double s = 0.0;
        for (std::size_t t = 0; t < played; ++t) {
          s += adv.family->eigenvalues(t)[i];
        }
        if (s > best_sum) {
          best_sum = s;
          best_i = i;
        }
      }
      const UnitVector v(adv.family->basis().column(best_i));
      const BoundReport r =
          check_regret_bound_common_ev(adv.matrices, v, states, cfg);
      if (!r.satisfied) deterministic_ok = false;

      if (!trajectory_path.empty() && h == 0) {
        auto traj = open_out(trajectory_path);
        write_oja_trajectory_csv(traj, adv.matrices, states, v);
      }
    } else if (!trajectory_path.empty() && h == 0) {
      const auto states = run_oja(adv.matrices, cfg, init);
      SymmetricMatrix total = SymmetricMatrix::zero(dim);
      for (const auto& a : adv.matrices) total.add_scaled(a, 1.0);
      const UnitVector comparator(eigendecompose(total).basis.column(0));
      auto traj = open_out(trajectory_path);
      write_oja_trajectory_csv(traj, adv.matrices, states, comparator);
    }
  }

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "kind,n,T,mu,seed,lambda1_sum,learner_payoff,regret,regret_over_T,"
           "commuting\n"
        << body.str();
  }
  std::cout << "adversary: kind=" << kind_label << " seed=" << seed
            << " runs=" << horizons.size()
            << (deterministic_ok ? "" : " DETERMINISTIC BOUND VIOLATION")
            << "\n";
  return deterministic_ok ? kExitOk : kExitBoundViolation;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Online spectral optimization: multiplicative-weights-certified Oja "
      "iterations, leading-eigenvalue approximation, and convex quadratic-"
      "form minimization over the unit sphere"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a commuting instance JSON");
  std::size_t gen_n = 8, gen_t = 100;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out = "instance.json", gen_config;
  ConfigBindings gen_binds;
  gen_binds.bind(gen->add_option("--n", gen_n, "dimension"), "n", gen_n);
  gen_binds.bind(gen->add_option("--T", gen_t, "rounds"), "T", gen_t);
  gen_binds.bind(gen->add_option("--seed", gen_seed, "RNG seed"), "seed",
                 gen_seed);
  gen_binds.bind(gen->add_option("--out", gen_out, "output path"), "out",
                 gen_out);
  gen->add_option("--config", gen_config, "JSON config file");

  // eig
  auto* eig = app.add_subcommand("eig", "leading-eigenvalue approximation");
  std::string eig_matrix = "random:n=50,seed=0";
  double eig_eps = 0.2, eig_delta = 0.1;
  std::optional<double> eig_mu;
  std::size_t eig_trials = 1;
  std::optional<std::uint64_t> eig_seed;
  std::string eig_out = "eig.csv", eig_config;
  ConfigBindings eig_binds;
  eig_binds.bind(
      eig->add_option("--matrix", eig_matrix,
                      "matrix JSON path or random:n=..,seed=.."),
      "matrix", eig_matrix);
  eig_binds.bind(eig->add_option("--epsilon", eig_eps, "target error"),
                 "epsilon", eig_eps);
  eig_binds.bind(eig->add_option("--delta", eig_delta, "failure probability"),
                 "delta", eig_delta);
  eig_binds.bind(eig->add_option("--mu", eig_mu, "step-size override"), "mu",
                 eig_mu);
  eig_binds.bind(eig->add_option("--trials", eig_trials, "seeded trials"),
                 "trials", eig_trials);
  eig_binds.bind(eig->add_option("--seed", eig_seed, "RNG seed"), "seed",
                 eig_seed);
  eig_binds.bind(eig->add_option("--out", eig_out, "results CSV"), "out",
                 eig_out);
  eig->add_option("--config", eig_config, "JSON config file");

  // mw-check
  auto* mwc = app.add_subcommand("mw-check",
                                 "sweep the experts regret bound checker");
  std::size_t mwc_instances = 1000, mwc_nmax = 8, mwc_tmax = 50;
  std::optional<std::uint64_t> mwc_seed;
  std::string mwc_out, mwc_traj, mwc_config;
  ConfigBindings mwc_binds;
  mwc_binds.bind(mwc->add_option("--instances", mwc_instances, "instance count"),
                 "instances", mwc_instances);
  mwc_binds.bind(mwc->add_option("--n-max", mwc_nmax, "max experts"), "n_max",
                 mwc_nmax);
  mwc_binds.bind(mwc->add_option("--T-max", mwc_tmax, "max rounds"), "T_max",
                 mwc_tmax);
  mwc_binds.bind(mwc->add_option("--seed", mwc_seed, "RNG seed"), "seed",
                 mwc_seed);
  mwc_binds.bind(mwc->add_option("--out", mwc_out, "per-instance CSV"), "out",
                 mwc_out);
  mwc_binds.bind(
      mwc->add_option("--trajectory-out", mwc_traj, "first-instance trajectory"),
      "trajectory_out", mwc_traj);
  mwc->add_option("--config", mwc_config, "JSON config file");

  // equiv
  auto* eqv = app.add_subcommand(
      "equiv", "squared-overlap vs experts-distribution deviation");
  std::size_t eqv_n = 6, eqv_t = 200;
  double eqv_mu = 0.1;
  std::optional<std::uint64_t> eqv_seed;
  std::string eqv_instance, eqv_out, eqv_config;
  ConfigBindings eqv_binds;
  eqv_binds.bind(eqv->add_option("--n", eqv_n, "dimension"), "n", eqv_n);
  eqv_binds.bind(eqv->add_option("--T", eqv_t, "rounds"), "T", eqv_t);
  eqv_binds.bind(eqv->add_option("--mu", eqv_mu, "step size (<= 1/6)"), "mu",
                 eqv_mu);
  eqv_binds.bind(eqv->add_option("--seed", eqv_seed, "RNG seed"), "seed",
                 eqv_seed);
  eqv_binds.bind(eqv->add_option("--instance", eqv_instance, "instance JSON"),
                 "instance", eqv_instance);
  eqv_binds.bind(eqv->add_option("--out", eqv_out, "summary CSV"), "out",
                 eqv_out);
  eqv->add_option("--config", eqv_config, "JSON config file");

  // quadopt
  auto* qop = app.add_subcommand(
      "quadopt", "convex minimization with a quadratic map over the sphere");
  std::string qop_problem;
  std::size_t qop_t = 10000;
  double qop_delta = 0.1;
  std::optional<double> qop_mu;
  std::optional<std::uint64_t> qop_seed;
  std::string qop_out = "run.csv", qop_config;
  bool qop_baseline = false;
  ConfigBindings qop_binds;
  qop_binds.bind(
      qop->add_option("--problem", qop_problem, "problem JSON")->required(),
      "problem", qop_problem);
  qop_binds.bind(qop->add_option("--T", qop_t, "rounds"), "T", qop_t);
  qop_binds.bind(qop->add_option("--delta", qop_delta, "failure probability"),
                 "delta", qop_delta);
  qop_binds.bind(qop->add_option("--mu", qop_mu, "step-size override"), "mu",
                 qop_mu);
  qop_binds.bind(qop->add_option("--seed", qop_seed, "RNG seed"), "seed",
                 qop_seed);
  qop_binds.bind(qop->add_option("--out", qop_out, "run CSV"), "out", qop_out);
  qop->add_flag("--baseline", qop_baseline,
                "also run the simplex-reformulation baseline");
  qop->add_option("--config", qop_config, "JSON config file");

  // adversary
  auto* adv = app.add_subcommand("adversary",
                                 "oblivious online game and regret reports");
  std::string adv_kind = "commuting", adv_instance;
  std::size_t adv_n = 8, adv_t = 256, adv_block = 1, adv_sub = 1;
  std::optional<double> adv_mu;
  double adv_delta = 0.1;
  std::optional<std::uint64_t> adv_seed;
  bool adv_sweep = false;
  std::string adv_out, adv_traj, adv_config;
  ConfigBindings adv_binds;
  adv_binds.bind(
      adv->add_option("--kind", adv_kind,
                      "fixed_rank_one|rotating|block_orthogonal|commuting"),
      "kind", adv_kind);
  adv_binds.bind(adv->add_option("--instance", adv_instance,
                                 "instance JSON (overrides --kind)"),
                 "instance", adv_instance);
  adv_binds.bind(adv->add_option("--n", adv_n, "dimension"), "n", adv_n);
  adv_binds.bind(adv->add_option("--T", adv_t, "rounds"), "T", adv_t);
  adv_binds.bind(adv->add_option("--block", adv_block, "rotation block length"),
                 "block", adv_block);
  adv_binds.bind(
      adv->add_option("--subspace-dim", adv_sub, "projector rank"),
      "subspace_dim", adv_sub);
  adv_binds.bind(adv->add_option("--mu", adv_mu, "step-size override"), "mu",
                 adv_mu);
  adv_binds.bind(adv->add_option("--delta", adv_delta,
                                 "failure probability for the default mu"),
                 "delta", adv_delta);
  adv_binds.bind(adv->add_option("--seed", adv_seed, "RNG seed"), "seed",
                 adv_seed);
  adv->add_flag("--sweep", adv_sweep, "sweep T over 2^8..2^14");
  adv_binds.bind(adv->add_option("--out", adv_out, "report CSV"), "out",
                 adv_out);
  adv_binds.bind(
      adv->add_option("--trajectory-out", adv_traj, "first-run trajectory CSV"),
      "trajectory_out", adv_traj);
  adv->add_option("--config", adv_config, "JSON config file");

  try {
    app.parse(argc, argv);

    const auto merge = [](const std::string& path, const ConfigBindings& b) {
      if (!path.empty()) b.apply(load_json_file(path));
    };

    if (gen->parsed()) {
      merge(gen_config, gen_binds);
      return run_gen(gen_n, gen_t, resolve_seed(gen_seed), gen_out);
    }
    if (eig->parsed()) {
      merge(eig_config, eig_binds);
      return run_eig(eig_matrix, eig_eps, eig_delta, eig_mu, eig_trials,
                     resolve_seed(eig_seed), eig_out);
    }
    if (mwc->parsed()) {
      merge(mwc_config, mwc_binds);
      return run_mw_check(mwc_instances, mwc_nmax, mwc_tmax,
                          resolve_seed(mwc_seed), mwc_out, mwc_traj);
    }
    if (eqv->parsed()) {
      merge(eqv_config, eqv_binds);
      return run_equiv(eqv_n, eqv_t, eqv_mu, resolve_seed(eqv_seed),
                       eqv_instance, eqv_out);
    }
    if (qop->parsed()) {
      merge(qop_config, qop_binds);
      return run_quadopt(qop_problem, qop_t, qop_delta, qop_mu,
                         resolve_seed(qop_seed), qop_out, qop_baseline);
    }
    if (adv->parsed()) {
      merge(adv_config, adv_binds);
      return run_adversary(adv_kind, adv_instance, adv_n, adv_t, adv_block,
                           adv_sub, adv_mu, adv_delta, resolve_seed(adv_seed),
                           adv_sweep, adv_out, adv_traj);
    }
    return kExitValidation;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace ojaregret
