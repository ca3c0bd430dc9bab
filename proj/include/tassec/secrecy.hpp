#pragma once

// Secrecy-rate bookkeeping for the on-off wiretap coding scheme: the
// transmitter uses a fixed codeword rate r_b and confidential rate r_s
// (redundancy r_b - r_s protects against leakage) and only transmits when
// the fed-back legitimate SNR clears a threshold mu. Reliability is
// quantified by the probability the legitimate link supports r_b, secrecy by
// the probability the eavesdropper's capacity exceeds the redundancy.

#include <cmath>
#include <stdexcept>
#include <string>

#include "channel.hpp"

namespace tassec {

struct RatePolicy {
  double r_b = 1.0;  // codeword rate, bits/s/Hz
  double r_s = 0.5;  // confidential rate, bits/s/Hz
  double mu = 1.0;   // on-off transmission threshold on the legitimate SNR, linear
};

inline void validate(const RatePolicy& p) {
  if (!(p.r_s > 0.0) || !(p.r_b > p.r_s))
    throw std::invalid_argument("RatePolicy: rates must satisfy 0 < r_s < r_b");
  if (!(p.mu >= std::exp2(p.r_b) - 1.0))
    throw std::invalid_argument(
        "RatePolicy: threshold mu must be at least 2^r_b - 1 so accepted channels "
        "support the codeword rate");
}

struct SecurityConstraints {
  double sigma = 0.9;    // minimum acceptable transmission (success) probability
  double epsilon = 0.1;  // maximum acceptable secrecy outage probability
};

inline void validate(const SecurityConstraints& c) {
  if (!(c.sigma > 0.0 && c.sigma < 1.0))
    throw std::invalid_argument("SecurityConstraints: sigma must lie in (0, 1), got " +
                                std::to_string(c.sigma));
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0))
    throw std::invalid_argument("SecurityConstraints: epsilon must lie in (0, 1), got " +
                                std::to_string(c.epsilon));
}

// Probability the legitimate SNR clears the on-off threshold.
inline double p_success(double mu, const AntennaConfig& cfg, const LinkBudget& lb) {
  if (!(mu >= 0.0))
    throw std::domain_error("p_success: threshold must be nonnegative, got " +
                            std::to_string(mu));
  return 1.0 - legit_snr_cdf(mu, cfg, lb);
}

// Probability the eavesdropper's capacity exceeds the redundancy r_b - r_s,
// i.e. its SNR exceeds 2^(r_b - r_s) - 1.
inline double p_secrecy_outage(double r_b, double r_s, const AntennaConfig& cfg,
                               const LinkBudget& lb) {
  if (!(r_s > 0.0) || !(r_b > r_s))
    throw std::domain_error("p_secrecy_outage: rates must satisfy 0 < r_s < r_b");
  const double threshold = std::exp2(r_b - r_s) - 1.0;
  return 1.0 - eve_snr_cdf(threshold, cfg, lb);
}

// Long-run confidential throughput r_s * Pr[transmit]. Deliberately tolerant
// of mu below the codeword-rate threshold (mu = 0 means "always transmit");
// callers that need the reliability contract validate the policy first.
inline double secure_throughput(const RatePolicy& policy, const AntennaConfig& cfg,
                                const LinkBudget& lb) {
  if (!(policy.r_s >= 0.0))
    throw std::domain_error("secure_throughput: confidential rate must be nonnegative");
  if (policy.r_s == 0.0) return 0.0;
  return policy.r_s * p_success(policy.mu, cfg, lb);
}

// Largest codeword rate whose matching threshold mu = 2^r_b - 1 still leaves
// the success probability at sigma: inverts the legitimate CDF exactly.
inline double max_rb_exact(const SecurityConstraints& c, const AntennaConfig& cfg,
                           const LinkBudget& lb) {
  validate(c);
  validate(cfg);
  validate(lb);
  const double q = std::pow(1.0 - c.sigma, 1.0 / static_cast<double>(cfg.n_a));
  const double mu =
      lb.gamma_bar_b * specfun::inv_reg_lower_gamma(static_cast<double>(cfg.n_b), q);
  return std::log2(1.0 + mu);
}

// Same ceiling through the closed-form bound
// P(n_b, x) >= (1 - e^{-x / alpha})^{n_b} with alpha = Gamma(n_b + 1)^{1/n_b}.
// Optimistic for n_b >= 2 (never below max_rb_exact); identical at n_b = 1.
inline double max_rb_closed_form(const SecurityConstraints& c, const AntennaConfig& cfg,
                                 const LinkBudget& lb) {
  validate(c);
  validate(cfg);
  validate(lb);
  const double alpha = specfun::gamma_bound_alpha(static_cast<double>(cfg.n_b));
  const double xi =
      1.0 - std::pow(1.0 - c.sigma,
                     1.0 / (static_cast<double>(cfg.n_a) * static_cast<double>(cfg.n_b)));
  if (xi >= 1.0) return 0.0;
  return std::log2(1.0 + lb.gamma_bar_b * alpha * std::log(1.0 / xi));
}

// Smallest redundancy rate r_e = r_b - r_s that keeps the secrecy outage at
// or below epsilon.
inline double min_re_for_secrecy(const SecurityConstraints& c, const AntennaConfig& cfg,
                                 const LinkBudget& lb) {
  validate(c);
  validate(cfg);
  validate(lb);
  const double z =
      specfun::inv_reg_lower_gamma(static_cast<double>(cfg.n_e), 1.0 - c.epsilon);
  return std::log2(1.0 + lb.gamma_bar_e * z);
}

// Closed-form reliability/secrecy trade-off: the largest sigma compatible
// with epsilon at SNR advantage rho = gamma_bar_b / gamma_bar_e, derived
// through the alpha-bound on the legitimate CDF. Like the closed-form rate
// ceiling it is optimistic for n_b >= 2 (never below the exact frontier) and
// exact at n_b = 1, so sigma above this bound is certainly infeasible.
inline double tradeoff_sigma_bound(double epsilon, const AntennaConfig& cfg, double rho) {
  validate(cfg);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("tradeoff_sigma_bound: epsilon must lie in (0, 1)");
  if (!(rho > 0.0))
    throw std::domain_error("tradeoff_sigma_bound: rho must be positive");
  const double z =
      specfun::inv_reg_lower_gamma(static_cast<double>(cfg.n_e), 1.0 - epsilon);
  const double alpha = specfun::gamma_bound_alpha(static_cast<double>(cfg.n_b));
  const double base = 1.0 - std::exp(-z / (rho * alpha));
  return 1.0 - std::pow(base, static_cast<double>(cfg.n_a) * static_cast<double>(cfg.n_b));
}

// Exact version of the same trade-off, inverting the legitimate CDF directly:
// sigma < 1 - P(n_b, z_eps / rho)^{n_a} is necessary and sufficient for a
// positive confidential rate.
inline double tradeoff_sigma_bound_exact(double epsilon, const AntennaConfig& cfg,
                                         double rho) {
  validate(cfg);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("tradeoff_sigma_bound_exact: epsilon must lie in (0, 1)");
  if (!(rho > 0.0))
    throw std::domain_error("tradeoff_sigma_bound_exact: rho must be positive");
  const double z =
      specfun::inv_reg_lower_gamma(static_cast<double>(cfg.n_e), 1.0 - epsilon);
  const double p = specfun::reg_lower_gamma(static_cast<double>(cfg.n_b), z / rho);
  return 1.0 - std::pow(p, static_cast<double>(cfg.n_a));
}

struct Feasibility {
  bool feasible = false;
  double r_b_max = 0.0;      // reliability ceiling on the codeword rate (exact)
  double r_e = 0.0;          // secrecy floor on the redundancy rate
  double rate_margin = 0.0;  // r_b_max - r_e; positive iff feasible
  double sigma_bound = 0.0;  // exact ceiling on sigma at this epsilon and rho
  double sigma_margin = 0.0; // sigma_bound - sigma; positive iff feasible
};

// A positive confidential rate exists iff the secrecy floor sits strictly
// below the reliability ceiling. Reported margins quantify the slack in both
// the rate and the sigma coordinate.
inline Feasibility is_feasible(const SecurityConstraints& c, const AntennaConfig& cfg,
                               const LinkBudget& lb) {
  Feasibility f;
  f.r_b_max = max_rb_exact(c, cfg, lb);
  f.r_e = min_re_for_secrecy(c, cfg, lb);
  f.rate_margin = f.r_b_max - f.r_e;
  f.sigma_bound = tradeoff_sigma_bound_exact(c.epsilon, cfg, lb.rho());
  f.sigma_margin = f.sigma_bound - c.sigma;
  f.feasible = f.r_e < f.r_b_max;
  return f;
}

}  // namespace tassec
