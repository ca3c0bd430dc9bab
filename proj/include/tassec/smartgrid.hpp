#pragma once

// End-to-end reporting experiment: a metering device transmits a daily load
// curve sample by sample over the secrecy-constrained link, each sample
// getting through independently with the link's acceptance probability. The
// receiver rebuilds the curve from whatever arrived (linear interpolation
// across gaps, flat extension at the ends) and reconstruction error is
// scored as RMSD normalized by the true curve's mean. Running the same
// experiment with the eavesdropper's interception probability shows how
// little of the curve leaks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "optimizer.hpp"
#include "rng.hpp"

namespace tassec {

struct LoadProfile {
  double tau_hours = 0.25;       // sampling period
  std::vector<double> samples;   // instantaneous power, watts
  std::string label;
};

inline void validate(const LoadProfile& p) {
  if (p.samples.size() < 2)
    throw std::invalid_argument("LoadProfile: need at least 2 samples, got " +
                                std::to_string(p.samples.size()));
  if (!(p.tau_hours > 0.0))
    throw std::invalid_argument("LoadProfile: sampling period must be positive");
  for (double w : p.samples)
    if (!std::isfinite(w) || w < 0.0)
      throw std::invalid_argument("LoadProfile: samples must be finite and nonnegative");
}

struct ErasurePattern {
  std::vector<bool> received;
};

// Independent per-sample erasures: each sample arrives with probability
// p_receive.
inline ErasurePattern simulate_reception(std::size_t n, double p_receive, Rng& rng) {
  if (!(p_receive >= 0.0 && p_receive <= 1.0))
    throw std::domain_error("simulate_reception: probability must lie in [0, 1], got " +
                            std::to_string(p_receive));
  ErasurePattern pattern;
  pattern.received.resize(n);
  for (std::size_t i = 0; i < n; ++i) pattern.received[i] = rng.bernoulli(p_receive);
  return pattern;
}

// Received samples are kept verbatim; interior gaps are filled by linear
// interpolation between the bracketing received samples; missing samples
// before the first (after the last) received one take its value. If nothing
// arrived the reconstruction is all zeros.
inline std::vector<double> reconstruct(const LoadProfile& profile,
                                       const ErasurePattern& pattern) {
  validate(profile);
  const auto& x = profile.samples;
  if (pattern.received.size() != x.size())
    throw std::invalid_argument("reconstruct: pattern length " +
                                std::to_string(pattern.received.size()) +
                                " does not match profile length " +
                                std::to_string(x.size()));
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (pattern.received[i]) kept.push_back(i);
  if (kept.empty()) return y;

  for (std::size_t i : kept) y[i] = x[i];
  for (std::size_t k = 0; k < kept.front(); ++k) y[k] = x[kept.front()];
  for (std::size_t k = kept.back() + 1; k < n; ++k) y[k] = x[kept.back()];
  for (std::size_t s = 0; s + 1 < kept.size(); ++s) {
    const std::size_t a = kept[s];
    const std::size_t b = kept[s + 1];
    for (std::size_t k = a + 1; k < b; ++k) {
      const double t = static_cast<double>(k - a) / static_cast<double>(b - a);
      y[k] = x[a] + (x[b] - x[a]) * t;
    }
  }
  return y;
}

inline double rmsd(const std::vector<double>& estimate,
                   const std::vector<double>& reference) {
  if (estimate.size() != reference.size() || reference.empty())
    throw std::invalid_argument("rmsd: series must be nonempty and equal length");
  double acc = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = estimate[i] - reference[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(reference.size()));
}

// RMSD divided by the mean of the reference series, so the score is
// comparable across profiles of different magnitude.
inline double nrmsd(const std::vector<double>& estimate,
                    const std::vector<double>& reference) {
  const double r = rmsd(estimate, reference);
  double mean = 0.0;
  for (double v : reference) mean += v;
  mean /= static_cast<double>(reference.size());
  if (!(mean > 0.0))
    throw std::domain_error("nrmsd: reference series mean must be positive to normalize");
  return r / mean;
}

struct ReceptionStats {
  double p_receive = 0.0;
  std::size_t trials = 0;
  double mean_nrmsd = 0.0;
  double std_nrmsd = 0.0;  // sample standard deviation
  std::vector<double> per_trial;
};

// Repeats the erase/reconstruct/score cycle. Trial t always consumes stream
// base.split(t), so results are identical for any n_threads.
inline ReceptionStats reception_stats(const LoadProfile& profile, double p_receive,
                                      std::size_t trials, const Rng& base,
                                      unsigned n_threads = 1) {
  validate(profile);
  if (trials == 0)
    throw std::invalid_argument("reception_stats: need at least one trial");
  if (!(p_receive >= 0.0 && p_receive <= 1.0))
    throw std::domain_error("reception_stats: probability must lie in [0, 1]");

  ReceptionStats stats;
  stats.p_receive = p_receive;
  stats.trials = trials;
  stats.per_trial.resize(trials);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng = base.split(t);
      const ErasurePattern pattern =
          simulate_reception(profile.samples.size(), p_receive, rng);
      const std::vector<double> rebuilt = reconstruct(profile, pattern);
      stats.per_trial[t] = nrmsd(rebuilt, profile.samples);
    }
  };

  if (n_threads <= 1 || trials < 2 * n_threads) {
    run_range(0, trials);
  } else {
    const std::size_t chunk = (trials + n_threads - 1) / n_threads;
    std::vector<std::future<void>> work;
    for (std::size_t begin = 0; begin < trials; begin += chunk) {
      const std::size_t end = std::min(begin + chunk, trials);
      work.push_back(std::async(std::launch::async, run_range, begin, end));
    }
    for (auto& w : work) w.get();
  }

  double mean = 0.0;
  for (double v : stats.per_trial) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : stats.per_trial) var += (v - mean) * (v - mean);
  stats.mean_nrmsd = mean;
  stats.std_nrmsd = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
  return stats;
}

struct ExperimentReport {
  std::string label;
  ThroughputSolution solution;
  ReceptionStats bob;  // reception at the legitimate receiver (prob. = achieved p_suc)
  ReceptionStats eve;  // interception at the eavesdropper (prob. = achieved p_so)
};

// Full experiment: solve the rate-selection problem, then score
// reconstruction fidelity at the legitimate receiver's acceptance
// probability and at the eavesdropper's interception probability.
inline ExperimentReport run_experiment(const LoadProfile& profile,
                                       const SecurityConstraints& c,
                                       const AntennaConfig& cfg, const LinkBudget& lb,
                                       std::size_t trials, const Rng& rng,
                                       RbBound bound = RbBound::Exact,
                                       unsigned n_threads = 1) {
  validate(profile);
  ExperimentReport report;
  report.label = profile.label;
  report.solution = optimize(c, cfg, lb, bound);
  if (!report.solution.feasible())
    throw std::runtime_error(
        "run_experiment: constraints are infeasible for this configuration (secrecy "
        "floor meets or exceeds the reliability ceiling)");
  report.bob = reception_stats(profile, report.solution.achieved_p_suc, trials,
                               rng.split(1), n_threads);
  report.eve = reception_stats(profile, report.solution.achieved_p_so, trials,
                               rng.split(2), n_threads);
  return report;
}

enum class SynthKind { Flat, MorningEveningPeaks, AfternoonPeak };

inline SynthKind synth_kind_from_string(const std::string& name) {
  if (name == "flat") return SynthKind::Flat;
  if (name == "morning-evening-peaks") return SynthKind::MorningEveningPeaks;
  if (name == "afternoon-peak") return SynthKind::AfternoonPeak;
  throw std::invalid_argument(
      "unknown synthetic profile '" + name +
      "' (expected flat, morning-evening-peaks, or afternoon-peak)");
}

// Synthetic daily curves. "flat" is exactly constant; the peaked shapes put
// Gaussian bumps at plausible hours with mild multiplicative jitter.
inline LoadProfile synth_profile(SynthKind kind, Rng& rng, std::size_t n = 96,
                                 double tau_hours = 0.25) {
  if (n < 2) throw std::invalid_argument("synth_profile: need at least 2 samples");
  if (!(tau_hours > 0.0))
    throw std::invalid_argument("synth_profile: sampling period must be positive");

  LoadProfile profile;
  profile.tau_hours = tau_hours;
  profile.samples.resize(n);

  auto bump = [](double t, double center, double width) {
    const double u = (t - center) / width;
    return std::exp(-0.5 * u * u);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * tau_hours;
    double watts;
    switch (kind) {
      case SynthKind::Flat:
        watts = 150.0;
        break;
      case SynthKind::MorningEveningPeaks:
        watts = 200.0 + 1500.0 * bump(t, 7.5, 1.2) + 2000.0 * bump(t, 19.5, 1.8);
        watts *= 1.0 + 0.05 * (2.0 * rng.uniform() - 1.0);
        break;
      case SynthKind::AfternoonPeak:
        watts = 180.0 + 1800.0 * bump(t, 14.5, 2.5);
        watts *= 1.0 + 0.05 * (2.0 * rng.uniform() - 1.0);
        break;
      default:
        throw std::invalid_argument("synth_profile: unknown kind");
    }
    profile.samples[i] = watts;
  }

  switch (kind) {
    case SynthKind::Flat: profile.label = "flat"; break;
    case SynthKind::MorningEveningPeaks: profile.label = "morning-evening-peaks"; break;
    default: profile.label = "afternoon-peak"; break;
  }
  return profile;
}

struct CsvOptions {
  std::optional<double> bin_seconds;  // average raw rows into bins of this width
  double tau_hours = 0.25;            // sampling period when input is pre-binned
  std::string label;                  // defaults to the file stem
};

namespace detail {

inline bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0' && std::isfinite(out);
}

}  // namespace detail

// Reads "timestamp_seconds,watts" rows (an optional single header line is
// skipped). Timestamps must be strictly increasing. With bin_seconds set,
// rows are averaged into fixed-width bins anchored at the first timestamp
// and every bin up to the last must be nonempty; otherwise rows are taken as
// already uniformly sampled at tau_hours.
inline LoadProfile ingest_csv(const std::string& path, const CsvOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest_csv: cannot open '" + path + "'");

  std::vector<double> times;
  std::vector<double> watts;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");

    double t = 0.0, w = 0.0;
    const bool parsed = fields.size() == 2 && detail::parse_double(fields[0], t) &&
                        detail::parse_double(fields[1], w);
    if (!parsed) {
      if (first_content_line) {  // header line
        first_content_line = false;
        continue;
      }
      throw std::runtime_error("ingest_csv: malformed row at line " +
                               std::to_string(line_no) + " of '" + path +
                               "' (expected 'timestamp_seconds,watts')");
    }
    first_content_line = false;
    if (!times.empty() && !(t > times.back()))
      throw std::runtime_error("ingest_csv: timestamps must be strictly increasing "
                               "(violation at line " + std::to_string(line_no) + ")");
    times.push_back(t);
    watts.push_back(w);
  }
  if (times.empty())
    throw std::runtime_error("ingest_csv: no data rows in '" + path + "'");

  LoadProfile profile;
  profile.label = !options.label.empty()
                      ? options.label
                      : std::filesystem::path(path).stem().string();

  if (options.bin_seconds) {
    const double bin = *options.bin_seconds;
    if (!(bin > 0.0))
      throw std::invalid_argument("ingest_csv: bin width must be positive");
    const double t0 = times.front();
    const std::size_t n_bins =
        static_cast<std::size_t>(std::floor((times.back() - t0) / bin)) + 1;
    std::vector<double> sums(n_bins, 0.0);
    std::vector<std::size_t> counts(n_bins, 0);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const std::size_t k = static_cast<std::size_t>(std::floor((times[i] - t0) / bin));
      sums[k] += watts[i];
      counts[k] += 1;
    }
    profile.samples.resize(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
      if (counts[k] == 0)
        throw std::runtime_error("ingest_csv: bin " + std::to_string(k) +
                                 " is empty; choose a wider bin");
      profile.samples[k] = sums[k] / static_cast<double>(counts[k]);
    }
    profile.tau_hours = bin / 3600.0;
  } else {
    profile.samples = std::move(watts);
    profile.tau_hours = options.tau_hours;
  }

  validate(profile);
  return profile;
}

}  // namespace tassec
