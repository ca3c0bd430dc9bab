#pragma once

// Throughput-optimal rate selection. With the redundancy pinned at the
// secrecy floor r_e and the threshold pinned at mu = 2^r_b - 1, the
// confidential throughput T(r_b) = (r_b - r_e)(1 - F_B(2^r_b - 1)) is
// strictly concave on (r_e, infinity), so the optimum is either the unique
// stationary point or the reliability ceiling r_b_max, whichever is smaller.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "secrecy.hpp"

namespace tassec {

enum class RbBound { Exact, ClosedForm };

enum class Binding { Infeasible, Interior, QosCeiling };

inline const char* to_string(Binding b) {
  switch (b) {
    case Binding::Interior: return "interior";
    case Binding::QosCeiling: return "qos_ceiling";
    default: return "infeasible";
  }
}

inline const char* to_string(RbBound b) {
  return b == RbBound::Exact ? "exact" : "closed-form";
}

struct ThroughputSolution {
  Binding binding = Binding::Infeasible;
  double r_b_star = 0.0;
  double r_s_star = 0.0;
  double r_e = 0.0;
  double mu_star = 0.0;
  double t_s_star = 0.0;
  double achieved_p_suc = 0.0;
  double achieved_p_so = 0.0;
  double residual = 0.0;  // stationarity residual at r_b_star
  int iterations = 0;

  bool feasible() const { return binding != Binding::Infeasible; }
};

// Scaled derivative of the throughput with respect to r_b at fixed r_e:
//   (1 - P(n_b, y)^{n_a})
//     - ln2 * n_a * (r_b - r_e) * 2^{r_b} / (Gamma(n_b) gb)
//       * y^{n_b - 1} e^{-y} P(n_b, y)^{n_a - 1},
// with y = (2^{r_b} - 1) / gb. Positive at r_e+, eventually negative, and
// strictly decreasing across its zero, so its sign brackets the stationary
// point.
inline double stationarity_residual(double r_b, double r_e, const AntennaConfig& cfg,
                                    const LinkBudget& lb) {
  validate(cfg);
  validate(lb);
  if (!(r_b > r_e))
    throw std::domain_error("stationarity_residual: requires r_b > r_e");
  const double y = (std::exp2(r_b) - 1.0) / lb.gamma_bar_b;
  const double p = specfun::reg_lower_gamma(static_cast<double>(cfg.n_b), y);
  const double gain = 1.0 - (cfg.n_a == 1 ? p : std::pow(p, static_cast<double>(cfg.n_a)));
  const double scale = std::log(2.0) * static_cast<double>(cfg.n_a) * (r_b - r_e) *
                       std::exp2(r_b) /
                       (std::tgamma(static_cast<double>(cfg.n_b)) * lb.gamma_bar_b);
  const double ypow = cfg.n_b == 1 ? 1.0 : std::pow(y, static_cast<double>(cfg.n_b - 1));
  const double sel = cfg.n_a == 1 ? 1.0 : std::pow(p, static_cast<double>(cfg.n_a - 1));
  return gain - scale * ypow * std::exp(-y) * sel;
}

// Maximizes the confidential throughput subject to the reliability floor
// sigma and the secrecy cap epsilon. The redundancy is set to the secrecy
// floor (so the achieved outage equals epsilon), the codeword rate to the
// stationary point of the throughput or to the reliability ceiling if the
// stationary point lies beyond it.
inline ThroughputSolution optimize(const SecurityConstraints& c, const AntennaConfig& cfg,
                                   const LinkBudget& lb, RbBound bound = RbBound::Exact) {
  validate(c);
  validate(cfg);
  validate(lb);

  ThroughputSolution sol;
  sol.r_e = min_re_for_secrecy(c, cfg, lb);
  const double rb_max =
      bound == RbBound::Exact ? max_rb_exact(c, cfg, lb) : max_rb_closed_form(c, cfg, lb);
  if (!(sol.r_e < rb_max)) {
    sol.binding = Binding::Infeasible;
    return sol;
  }

  double r_b;
  const double res_at_max = stationarity_residual(rb_max, sol.r_e, cfg, lb);
  if (res_at_max >= 0.0) {
    r_b = rb_max;
    sol.binding = res_at_max > 0.0 ? Binding::QosCeiling : Binding::Interior;
  } else {
    double lo = sol.r_e + std::min(1e-9, 0.5 * (rb_max - sol.r_e));
    double hi = rb_max;
    if (stationarity_residual(lo, sol.r_e, cfg, lb) <= 0.0) {
      // The stationary point is crowded against the redundancy floor.
      r_b = lo;
    } else {
      int it = 0;
      while (hi - lo > std::numeric_limits<double>::epsilon() * std::max(hi, 1.0) &&
             it < 200) {
        const double mid = 0.5 * (lo + hi);
        if (stationarity_residual(mid, sol.r_e, cfg, lb) > 0.0) lo = mid;
        else hi = mid;
        ++it;
      }
      r_b = 0.5 * (lo + hi);
      sol.iterations = it;
    }
    sol.binding = Binding::Interior;
  }

  sol.r_b_star = r_b;
  sol.r_s_star = r_b - sol.r_e;
  sol.mu_star = std::exp2(r_b) - 1.0;
  sol.achieved_p_suc = p_success(sol.mu_star, cfg, lb);
  sol.achieved_p_so = p_secrecy_outage(r_b, sol.r_s_star, cfg, lb);
  sol.t_s_star = sol.r_s_star * sol.achieved_p_suc;
  sol.residual = stationarity_residual(r_b, sol.r_e, cfg, lb);
  return sol;
}

enum class SweepAxis { Sigma, Epsilon, GammaBarB, Config };

struct SweepRow {
  double axis_value = 0.0;  // grid coordinate (config rows use the list index)
  AntennaConfig cfg;
  SecurityConstraints constraints;
  LinkBudget budget;
  ThroughputSolution solution;
};

// Re-optimizes along one axis, holding everything else fixed. Rows that turn
// out infeasible (or whose grid value violates a domain constraint) are
// recorded as infeasible in place; the sweep itself never aborts.
inline std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& grid,
                                   const SecurityConstraints& c, const AntennaConfig& cfg,
                                   const LinkBudget& lb, RbBound bound = RbBound::Exact) {
  if (grid.empty()) throw std::invalid_argument("sweep: grid must be nonempty");
  if (axis == SweepAxis::Config)
    throw std::invalid_argument("sweep: config sweeps take a list of antenna configs");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    SweepRow row;
    row.axis_value = v;
    row.cfg = cfg;
    row.constraints = c;
    row.budget = lb;
    switch (axis) {
      case SweepAxis::Sigma: row.constraints.sigma = v; break;
      case SweepAxis::Epsilon: row.constraints.epsilon = v; break;
      case SweepAxis::GammaBarB: row.budget.gamma_bar_b = v; break;
      default: break;
    }
    try {
      row.solution = optimize(row.constraints, row.cfg, row.budget, bound);
    } catch (const std::exception&) {
      row.solution = ThroughputSolution{};
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<SweepRow> sweep_configs(const std::vector<AntennaConfig>& configs,
                                           const SecurityConstraints& c,
                                           const LinkBudget& lb,
                                           RbBound bound = RbBound::Exact) {
  if (configs.empty()) throw std::invalid_argument("sweep_configs: grid must be nonempty");
  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    SweepRow row;
    row.axis_value = static_cast<double>(i);
    row.cfg = configs[i];
    row.constraints = c;
    row.budget = lb;
    try {
      row.solution = optimize(row.constraints, row.cfg, row.budget, bound);
    } catch (const std::exception&) {
      row.solution = ThroughputSolution{};
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tassec
