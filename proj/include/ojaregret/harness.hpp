#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ojaregret/linalg.hpp"
#include "ojaregret/oja.hpp"
#include "ojaregret/rng.hpp"

namespace ojaregret {

// Oblivious sequence generators for the online game. Generation never sees
// any learner state; the caller draws the initial vector only afterwards.
enum class AdversaryKind {
  kFixedBasisRankOne,  // A_t = v_{i_t} v_{i_t}^T over one fixed basis
  kRotatingBasis,      // fresh random basis every `block` rounds
  kBlockOrthogonal,    // projectors onto subspaces orthogonal to a fixed axis
  kCommutingControl,   // random commuting family (positive control)
};

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kCommutingControl;
  std::size_t block = 1;              // rotating-basis block length
  std::size_t subspace_dim = 1;       // block-orthogonal projector rank
  std::vector<std::size_t> schedule;  // rank-one index order; round-robin if empty
};

struct AdversaryOutput {
  std::vector<SymmetricMatrix> matrices;
  // Populated for the two simultaneously diagonalizable kinds.
  std::optional<CommutingFamily> family;
};

AdversaryOutput generate_adversary_full(const AdversarySpec& spec,
                                        std::size_t rounds, std::size_t n,
                                        Rng& rng);
std::vector<SymmetricMatrix> generate_adversary(const AdversarySpec& spec,
                                                std::size_t rounds,
                                                std::size_t n, Rng& rng);

struct OnlineRegretReport {
  double lambda1_sum = 0.0;     // lambda_1(sum_t A_t)
  double learner_payoff = 0.0;  // sum_t z_t^T A_t z_t
  double regret = 0.0;
  double regret_over_rounds = 0.0;
  bool commuting = false;
  std::size_t rounds = 0;
  std::size_t n = 0;
  double mu = 0.0;
};

// Plays the online game: commit z_t, then observe A_t. The initial vector is
// drawn from rng after the full sequence has been supplied.
OnlineRegretReport run_online_game(const std::vector<SymmetricMatrix>& sequence,
                                   const OjaConfig& cfg, Rng& rng);
// Explicit-initialization overload; exists so tests can reproduce the
// adaptive counterexample where the sequence annihilates z_1.
OnlineRegretReport run_online_game(const std::vector<SymmetricMatrix>& sequence,
                                   const OjaConfig& cfg,
                                   const UnitVector& init);

// Pairwise Frobenius commutator test at tolerance 1e-9. Above ~20k pairs the
// exact sweep is replaced by a simultaneous-diagonalization witness plus a
// sampled pairwise check, which agrees on every simultaneously
// diagonalizable sequence.
bool pairwise_commuting(const std::vector<SymmetricMatrix>& sequence,
                        double tol = 1e-9);

// Trial parallelism cap: OJA_REGRET_THREADS, defaulting to the hardware
// concurrency. Results are deterministic regardless of the cap because every
// trial forks its own stream.
std::size_t harness_thread_cap();
void parallel_trials(std::size_t count,
                     const std::function<void(std::size_t)>& body);

// Full CLI entry point (subcommands gen | eig | mw-check | equiv | quadopt |
// adversary). Returns 0 on success, 2 on validation/config failure, 3 when a
// deterministic bound check fails.
int cli_main(int argc, const char* const* argv);

}  // namespace ojaregret
