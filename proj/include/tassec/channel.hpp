#pragma once

// SNR statistics of a multi-antenna eavesdropped link where the transmitter
// keys on the single antenna with the best instantaneous channel to the
// legitimate receiver, and both receivers combine across their antennas
// (maximum-ratio). All fading is Rayleigh, so per-antenna SNRs are
// exponential and combined SNRs are gamma-distributed; antenna selection
// raises the legitimate CDF to the N_A-th power while leaving the
// eavesdropper's law untouched.

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rng.hpp"
#include "specfun.hpp"

namespace tassec {

struct AntennaConfig {
  int n_a = 1;  // transmit antennas (selection pool)
  int n_b = 1;  // legitimate receive antennas (combined)
  int n_e = 1;  // eavesdropper antennas (combined)
};

inline void validate(const AntennaConfig& cfg) {
  if (cfg.n_a < 1 || cfg.n_b < 1 || cfg.n_e < 1)
    throw std::invalid_argument("AntennaConfig: antenna counts must all be >= 1");
}

struct LinkBudget {
  double gamma_bar_b = 1.0;  // average per-antenna SNR on the legitimate link, linear
  double gamma_bar_e = 1.0;  // average per-antenna SNR at the eavesdropper, linear

  double rho() const { return gamma_bar_b / gamma_bar_e; }
};

inline void validate(const LinkBudget& lb) {
  if (!(lb.gamma_bar_b > 0.0) || !(lb.gamma_bar_e > 0.0))
    throw std::invalid_argument("LinkBudget: average SNRs must be positive");
}

// CDF of the post-selection, post-combining SNR at the legitimate receiver:
// F(g) = P(n_b, g / gamma_bar_b)^{n_a}.
inline double legit_snr_cdf(double gamma, const AntennaConfig& cfg, const LinkBudget& lb) {
  validate(cfg);
  validate(lb);
  if (!(gamma >= 0.0))
    throw std::domain_error("legit_snr_cdf: SNR must be nonnegative, got " +
                            std::to_string(gamma));
  const double p = specfun::reg_lower_gamma(static_cast<double>(cfg.n_b),
                                            gamma / lb.gamma_bar_b);
  return cfg.n_a == 1 ? p : std::pow(p, static_cast<double>(cfg.n_a));
}

// Density of the legitimate combined SNR,
// f(g) = n_a / (Gamma(n_b) gb) * x^{n_b-1} e^{-x} P(n_b, x)^{n_a-1},
// with x = g / gb. At g = 0 the conventions x^0 = 1 and P^0 = 1 apply, so
// f(0) = 1 / gb when n_a = n_b = 1 and 0 otherwise.
inline double legit_snr_pdf(double gamma, const AntennaConfig& cfg, const LinkBudget& lb) {
  validate(cfg);
  validate(lb);
  if (!(gamma >= 0.0))
    throw std::domain_error("legit_snr_pdf: SNR must be nonnegative, got " +
                            std::to_string(gamma));
  const double x = gamma / lb.gamma_bar_b;
  const double scale = static_cast<double>(cfg.n_a) /
                       (std::tgamma(static_cast<double>(cfg.n_b)) * lb.gamma_bar_b);
  const double xpow = cfg.n_b == 1 ? 1.0 : std::pow(x, static_cast<double>(cfg.n_b - 1));
  const double sel =
      cfg.n_a == 1
          ? 1.0
          : std::pow(specfun::reg_lower_gamma(static_cast<double>(cfg.n_b), x),
                     static_cast<double>(cfg.n_a - 1));
  return scale * xpow * std::exp(-x) * sel;
}

// The eavesdropper combines its own antennas but gains nothing from the
// transmitter's selection, so its SNR is plain Gamma(n_e, gamma_bar_e).
inline double eve_snr_cdf(double gamma, const AntennaConfig& cfg, const LinkBudget& lb) {
  validate(cfg);
  validate(lb);
  if (!(gamma >= 0.0))
    throw std::domain_error("eve_snr_cdf: SNR must be nonnegative, got " +
                            std::to_string(gamma));
  return specfun::reg_lower_gamma(static_cast<double>(cfg.n_e), gamma / lb.gamma_bar_e);
}

inline double eve_snr_pdf(double gamma, const AntennaConfig& cfg, const LinkBudget& lb) {
  validate(cfg);
  validate(lb);
  if (!(gamma >= 0.0))
    throw std::domain_error("eve_snr_pdf: SNR must be nonnegative, got " +
                            std::to_string(gamma));
  const double x = gamma / lb.gamma_bar_e;
  const double xpow = cfg.n_e == 1 ? 1.0 : std::pow(x, static_cast<double>(cfg.n_e - 1));
  return xpow * std::exp(-x) /
         (std::tgamma(static_cast<double>(cfg.n_e)) * lb.gamma_bar_e);
}

struct SnrSamplePair {
  double gamma_b;
  double gamma_e;
};

// One fading realization of the full protocol: draw i.i.d. CN(0,1) channel
// matrices to both receivers, select the transmit antenna with the largest
// combined legitimate gain (ties broken toward the lowest index), and report
// the combined SNRs that antenna produces at each receiver.
inline SnrSamplePair sample_joint_snr(const AntennaConfig& cfg, const LinkBudget& lb,
                                      Rng& rng) {
  validate(cfg);
  validate(lb);
  auto& eng = rng.engine();
  std::normal_distribution<double> component(0.0, std::sqrt(0.5));

  int best = 0;
  double best_norm = -1.0;
  for (int i = 0; i < cfg.n_a; ++i) {
    double norm = 0.0;
    for (int j = 0; j < cfg.n_b; ++j) {
      const double re = component(eng);
      const double im = component(eng);
      norm += re * re + im * im;
    }
    if (norm > best_norm) {
      best_norm = norm;
      best = i;
    }
  }

  double eve_norm = 0.0;
  for (int i = 0; i < cfg.n_a; ++i) {
    double norm = 0.0;
    for (int j = 0; j < cfg.n_e; ++j) {
      const double re = component(eng);
      const double im = component(eng);
      norm += re * re + im * im;
    }
    if (i == best) eve_norm = norm;
  }

  return {lb.gamma_bar_b * best_norm, lb.gamma_bar_e * eve_norm};
}

// Index of the selected antenna must be fed back to the transmitter:
// ceil(log2(n_a)) bits, zero when there is nothing to choose.
inline int feedback_bits(const AntennaConfig& cfg) {
  validate(cfg);
  if (cfg.n_a <= 1) return 0;
  return std::bit_width(static_cast<unsigned>(cfg.n_a - 1));
}

}  // namespace tassec
