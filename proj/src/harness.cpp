#include "ojaregret/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

#include "ojaregret/errors.hpp"

namespace ojaregret {

namespace {

// Projector onto the span of the given orthonormal vectors.
SymmetricMatrix projector(const std::vector<std::vector<double>>& span,
                          std::size_t n) {
  SymmetricMatrix p = SymmetricMatrix::zero(n);
  for (const auto& q : span) p.add_scaled(SymmetricMatrix::outer(q), 1.0);
  return p;
}

}  // namespace

AdversaryOutput generate_adversary_full(const AdversarySpec& spec,
                                        std::size_t rounds, std::size_t n,
                                        Rng& rng) {
  if (rounds == 0) throw ConfigError("adversary: rounds must be >= 1");
  if (n == 0) throw ConfigError("adversary: n must be >= 1");

  AdversaryOutput out;
  switch (spec.kind) {
    case AdversaryKind::kFixedBasisRankOne: {
      OrthonormalBasis basis = random_orthonormal_basis(n, rng);
      std::vector<std::vector<double>> lams(rounds,
                                            std::vector<double>(n, 0.0));
      for (std::size_t t = 0; t < rounds; ++t) {
        std::size_t idx;
        if (!spec.schedule.empty()) {
          idx = spec.schedule[t % spec.schedule.size()];
          if (idx >= n) throw ConfigError("adversary schedule index out of range");
        } else {
          idx = t % n;  // round-robin
        }
        lams[t][idx] = 1.0;
      }
      CommutingFamily family(std::move(basis), std::move(lams));
      for (std::size_t t = 0; t < rounds; ++t) {
        out.matrices.push_back(materialize(family, t));
      }
      out.family = std::move(family);
      break;
    }
    case AdversaryKind::kRotatingBasis: {
      const std::size_t block = std::max<std::size_t>(1, spec.block);
      std::optional<OrthonormalBasis> basis;
      for (std::size_t t = 0; t < rounds; ++t) {
        if (t % block == 0) basis = random_orthonormal_basis(n, rng);
        std::vector<std::vector<double>> lam(1, std::vector<double>(n));
        for (double& x : lam[0]) x = rng.uniform(-1.0, 1.0);
        out.matrices.push_back(
            materialize(CommutingFamily(*basis, std::move(lam)), 0));
      }
      break;
    }
    case AdversaryKind::kBlockOrthogonal: {
      if (spec.subspace_dim + 1 > n) {
        throw ConfigError("block-orthogonal adversary needs subspace_dim < n");
      }
      // Fixed reference axis; every emitted projector annihilates it.
      const UnitVector axis = random_unit_vector(n, rng);
      for (std::size_t t = 0; t < rounds; ++t) {
        std::vector<std::vector<double>> span;
        while (span.size() < spec.subspace_dim) {
          std::vector<double> q(n);
          for (double& x : q) x = rng.normal();
          double p = dot(axis.coords(), q);
          for (std::size_t i = 0; i < n; ++i) q[i] -= p * axis[i];
          for (const auto& prev : span) {
            p = dot(prev, q);
            for (std::size_t i = 0; i < n; ++i) q[i] -= p * prev[i];
          }
          const double s = norm2(q);
          if (s < 1e-8) continue;
          for (double& x : q) x /= s;
          span.push_back(std::move(q));
        }
        out.matrices.push_back(projector(span, n));
      }
      break;
    }
    case AdversaryKind::kCommutingControl: {
      CommutingFamily family = random_commuting_family(n, rounds, rng);
      for (std::size_t t = 0; t < rounds; ++t) {
        out.matrices.push_back(materialize(family, t));
      }
      out.family = std::move(family);
      break;
    }
  }
  return out;
}

std::vector<SymmetricMatrix> generate_adversary(const AdversarySpec& spec,
                                                std::size_t rounds,
                                                std::size_t n, Rng& rng) {
  return generate_adversary_full(spec, rounds, n, rng).matrices;
}

static OnlineRegretReport play(const std::vector<SymmetricMatrix>& sequence,
                               const OjaConfig& cfg, const UnitVector& init) {
  const std::size_t n = sequence.front().dim();
  OnlineRegretReport report;
  report.rounds = sequence.size();
  report.n = n;
  report.mu = cfg.mu;

  SymmetricMatrix total = SymmetricMatrix::zero(n);
  OjaState state = initial_oja_state(init);
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    // The learner's z_t is committed before A_t enters the payoff.
    report.learner_payoff += quad_form(sequence[t], state.direction.coords());
    total.add_scaled(sequence[t], 1.0);
    if (t + 1 < sequence.size()) state = oja_step(state, sequence[t], cfg);
  }
  if (n > kJacobiDimCap) {
    throw SizeError(
        "run_online_game: n above the dense oracle cap; use "
        "power_method_baseline for lambda_1 of the accumulated sum");
  }
  report.lambda1_sum = eigendecompose(total).eigenvalues.front();
  report.regret = report.lambda1_sum - report.learner_payoff;
  report.regret_over_rounds =
      report.regret / static_cast<double>(sequence.size());
  report.commuting = pairwise_commuting(sequence);
  return report;
}

OnlineRegretReport run_online_game(const std::vector<SymmetricMatrix>& sequence,
                                   const OjaConfig& cfg, Rng& rng) {
  if (sequence.empty()) throw ValidationError("run_online_game: empty sequence");
  return play(sequence, cfg, random_unit_vector(sequence.front().dim(), rng));
}

OnlineRegretReport run_online_game(const std::vector<SymmetricMatrix>& sequence,
                                   const OjaConfig& cfg,
                                   const UnitVector& init) {
  if (sequence.empty()) throw ValidationError("run_online_game: empty sequence");
  return play(sequence, cfg, init);
}

bool pairwise_commuting(const std::vector<SymmetricMatrix>& sequence,
                        double tol) {
  const std::size_t m = sequence.size();
  if (m < 2) return true;
  const std::size_t pairs = m * (m - 1) / 2;
  if (pairs <= 20000) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (commutator_frobenius(sequence[i], sequence[j]) > tol) return false;
      }
    }
    return true;
  }

  // Large sequences: diagonalize a generic combination and require every
  // matrix to be diagonal in that basis, then spot-check sampled pairs.
  const std::size_t n = sequence.front().dim();
  Rng rng(0xD1A60DULL);
  SymmetricMatrix combo = SymmetricMatrix::zero(n);
  for (const auto& a : sequence) combo.add_scaled(a, rng.normal());
  const auto eig = eigendecompose(combo);
  for (const auto& a : sequence) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto av = matvec(a, eig.basis.column(i));
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (std::abs(dot(eig.basis.column(j), av)) > 1e-7) return false;
      }
    }
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t i = rng.below(m);
    const std::size_t j = rng.below(m);
    if (i == j) continue;
    if (commutator_frobenius(sequence[i], sequence[j]) > tol) return false;
  }
  return true;
}

std::size_t harness_thread_cap() {
  if (const char* env = std::getenv("OJA_REGRET_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_trials(std::size_t count,
                     const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(harness_thread_cap(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ojaregret
