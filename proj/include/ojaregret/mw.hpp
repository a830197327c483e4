#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ojaregret/report.hpp"

namespace ojaregret {

struct MwConfig {
  double eta = 0.0;    // learning rate in [0, 1/2]
  std::size_t n = 0;   // number of experts

  MwConfig(double eta_, std::size_t n_);
};

// Per-round loss vector with entries in [-1, 1].
class LossVector {
 public:
  explicit LossVector(std::vector<double> losses);
  std::size_t dim() const { return losses_.size(); }
  double operator[](std::size_t i) const { return losses_[i]; }
  const std::vector<double>& values() const { return losses_; }

 private:
  std::vector<double> losses_;
};

// Strictly positive expert weights; round counts from 1.
class MwState {
 public:
  explicit MwState(std::vector<double> weights, std::size_t round = 1);
  std::size_t dim() const { return weights_.size(); }
  std::size_t round() const { return round_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
  std::size_t round_;
};

MwState uniform_mw_state(std::size_t n);

// phi'(i) = phi(i) (1 - eta m(i)); positivity is preserved for eta <= 1/2.
MwState mw_step(const MwState& state, const LossVector& loss,
                const MwConfig& cfg);

// Weights normalized to a probability vector.
std::vector<double> mw_distribution(const MwState& state);

// States 1..T+1 produced by folding the losses; states.front() == init.
std::vector<MwState> run_mw(const MwState& init,
                            const std::vector<LossVector>& losses,
                            const MwConfig& cfg);

// Cumulative played loss against expert i versus
// eta * sum |m_t(i)| + ln(||phi_1||_1 / phi_1(i)) / eta.
// eta = 0 is reported vacuous rather than dividing by zero.
BoundReport check_mw_regret_bound(const std::vector<MwState>& states,
                                  const std::vector<LossVector>& losses,
                                  const MwConfig& cfg, std::size_t expert);

// Columns: t, play_loss, best_expert_loss_to_date, regret, bound_rhs.
void write_mw_trajectory_csv(std::ostream& os,
                             const std::vector<MwState>& states,
                             const std::vector<LossVector>& losses,
                             const MwConfig& cfg);

}  // namespace ojaregret
