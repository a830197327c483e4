#include "ojaregret/mw.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "ojaregret/csv.hpp"
#include "ojaregret/errors.hpp"

namespace ojaregret {

namespace {
constexpr double kBoundSlack = 1e-9;
}

MwConfig::MwConfig(double eta_, std::size_t n_) : eta(eta_), n(n_) {
  if (!(eta >= 0.0 && eta <= 0.5)) {
    throw ValidationError("MwConfig: eta must lie in [0, 1/2]");
  }
  if (n == 0) throw DimensionError("MwConfig: need at least one expert");
}

LossVector::LossVector(std::vector<double> losses)
    : losses_(std::move(losses)) {
  if (losses_.empty()) throw DimensionError("LossVector requires dim >= 1");
  for (double m : losses_) {
    if (!std::isfinite(m) || std::abs(m) > 1.0) {
      throw ValidationError("loss entries must lie in [-1, 1]");
    }
  }
}

MwState::MwState(std::vector<double> weights, std::size_t round)
    : weights_(std::move(weights)), round_(round) {
  if (weights_.empty()) throw DimensionError("MwState requires dim >= 1");
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw ValidationError("MwState weights must be positive and finite");
    }
  }
}

MwState uniform_mw_state(std::size_t n) {
  return MwState(std::vector<double>(n, 1.0));
}

MwState mw_step(const MwState& state, const LossVector& loss,
                const MwConfig& cfg) {
  if (state.dim() != cfg.n || loss.dim() != cfg.n) {
    throw DimensionError("mw_step: state/loss/config dimensions disagree");
  }
  std::vector<double> next(state.dim());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = state.weights()[i] * (1.0 - cfg.eta * loss[i]);
  }
  return MwState(std::move(next), state.round() + 1);
}

std::vector<double> mw_distribution(const MwState& state) {
  double total = 0.0;
  for (double w : state.weights()) total += w;
  std::vector<double> p(state.weights());
  for (double& x : p) x /= total;
  return p;
}

std::vector<MwState> run_mw(const MwState& init,
                            const std::vector<LossVector>& losses,
                            const MwConfig& cfg) {
  std::vector<MwState> states;
  states.reserve(losses.size() + 1);
  states.push_back(init);
  for (const auto& loss : losses) {
    states.push_back(mw_step(states.back(), loss, cfg));
  }
  return states;
}

BoundReport check_mw_regret_bound(const std::vector<MwState>& states,
                                  const std::vector<LossVector>& losses,
                                  const MwConfig& cfg, std::size_t expert) {
  if (states.size() != losses.size() + 1) {
    throw DimensionError(
        "check_mw_regret_bound: need one state per loss plus the final one");
  }
  if (expert >= cfg.n) throw IndexError("expert index out of range");

  double lhs = 0.0;
  double abs_expert_loss = 0.0;
  for (std::size_t t = 0; t < losses.size(); ++t) {
    const auto p = mw_distribution(states[t]);
    const auto& m = losses[t];
    double play = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) play += p[i] * m[i];
    lhs += play - m[expert];
    abs_expert_loss += std::abs(m[expert]);
  }

  if (cfg.eta == 0.0) {
    return make_bound_report(lhs, std::numeric_limits<double>::infinity(),
                             kBoundSlack);
  }

  double w1_total = 0.0;
  for (double w : states.front().weights()) w1_total += w;
  const double rhs =
      cfg.eta * abs_expert_loss +
      std::log(w1_total / states.front().weights()[expert]) / cfg.eta;
  return make_bound_report(lhs, rhs, kBoundSlack);
}

void write_mw_trajectory_csv(std::ostream& os,
                             const std::vector<MwState>& states,
                             const std::vector<LossVector>& losses,
                             const MwConfig& cfg) {
  os << "t,play_loss,best_expert_loss_to_date,regret,bound_rhs\n";
  std::vector<double> expert_cum(cfg.n, 0.0);
  std::vector<double> expert_abs_cum(cfg.n, 0.0);
  double played = 0.0;
  double w1_total = 0.0;
  for (double w : states.front().weights()) w1_total += w;

  for (std::size_t t = 0; t < losses.size(); ++t) {
    const auto p = mw_distribution(states[t]);
    const auto& m = losses[t];
    double play = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) play += p[i] * m[i];
    played += play;
    std::size_t best = 0;
    for (std::size_t i = 0; i < cfg.n; ++i) {
      expert_cum[i] += m[i];
      expert_abs_cum[i] += std::abs(m[i]);
      if (expert_cum[i] < expert_cum[best]) best = i;
    }
    double bound_rhs = std::numeric_limits<double>::infinity();
    if (cfg.eta > 0.0) {
      bound_rhs = cfg.eta * expert_abs_cum[best] +
                  std::log(w1_total / states.front().weights()[best]) / cfg.eta;
    }
    os << (t + 1) << ',' << fmt_double(play) << ','
       << fmt_double(expert_cum[best]) << ','
       << fmt_double(played - expert_cum[best]) << ',' << fmt_double(bound_rhs)
       << '\n';
  }
}

}  // namespace ojaregret
