// Command-line front end: six subcommands covering point metrics, rate
// optimization, the reliability/secrecy trade-off surface, parameter sweeps,
// Monte Carlo validation of the closed forms, and the load-curve
// reconstruction experiment. All numeric inputs are echoed back in the
// output so result files are self-describing, and every stochastic command
// requires an explicit seed so reruns are byte-identical.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <tassec/tassec.hpp>

using ordered_json = nlohmann::ordered_json;

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Grids are either comma lists ("0.1,0.2,0.5") or linspace expressions
// ("start:stop:count").
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0;
    long count = 0;
    char extra = '\0';
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count, &extra) != 3 ||
        count < 1)
      throw std::invalid_argument("grid '" + text +
                                  "' is not of the form start:stop:count");
    if (count == 1) {
      grid.push_back(start);
    } else {
      for (long i = 0; i < count; ++i)
        grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(count - 1));
    }
    return grid;
  }
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (field.empty()) continue;
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
      throw std::invalid_argument("grid entry '" + field + "' is not a number");
    grid.push_back(v);
  }
  if (grid.empty()) throw std::invalid_argument("grid '" + text + "' is empty");
  return grid;
}

std::vector<tassec::AntennaConfig> parse_config_grid(const std::string& text) {
  std::vector<tassec::AntennaConfig> configs;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (field.empty()) continue;
    tassec::AntennaConfig cfg;
    char extra = '\0';
    if (std::sscanf(field.c_str(), "%dx%dx%d%c", &cfg.n_a, &cfg.n_b, &cfg.n_e, &extra) !=
        3)
      throw std::invalid_argument("config entry '" + field +
                                  "' is not of the form NAxNBxNE");
    configs.push_back(cfg);
  }
  if (configs.empty())
    throw std::invalid_argument("config grid '" + text + "' is empty");
  return configs;
}

tassec::RbBound parse_rb_bound(const std::string& name) {
  if (name == "exact") return tassec::RbBound::Exact;
  if (name == "closed-form") return tassec::RbBound::ClosedForm;
  throw std::invalid_argument("--rb-bound must be 'exact' or 'closed-form'");
}

// ---------------------------------------------------------------------------
// Output plumbing.

void flatten_into(const std::string& prefix, const ordered_json& value,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items())
      flatten_into(prefix.empty() ? k : prefix + "." + k, v, out);
  } else if (value.is_string()) {
    out.emplace_back(prefix, value.get<std::string>());
  } else {
    out.emplace_back(prefix, value.dump());
  }
}

// CSV rendering: documents with a "rows" array become one line per row with
// a shared header; everything else above the rows is emitted as "# key=value"
// comment lines. Documents without rows become a two-line table.
std::string to_csv(const ordered_json& doc) {
  std::ostringstream out;
  std::vector<std::pair<std::string, std::string>> meta;
  const bool has_rows = doc.contains("rows") && doc.at("rows").is_array();
  for (const auto& [k, v] : doc.items()) {
    if (has_rows && k == "rows") continue;
    flatten_into(k, v, meta);
  }
  if (has_rows) {
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
    const auto& rows = doc.at("rows");
    bool header_done = false;
    for (const auto& row : rows) {
      std::vector<std::pair<std::string, std::string>> cells;
      flatten_into("", row, cells);
      if (!header_done) {
        for (std::size_t i = 0; i < cells.size(); ++i)
          out << (i ? "," : "") << cells[i].first;
        out << "\n";
        header_done = true;
      }
      for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << cells[i].second;
      out << "\n";
    }
  } else {
    for (std::size_t i = 0; i < meta.size(); ++i)
      out << (i ? "," : "") << meta[i].first;
    out << "\n";
    for (std::size_t i = 0; i < meta.size(); ++i)
      out << (i ? "," : "") << meta[i].second;
    out << "\n";
  }
  return out.str();
}

struct OutputOptions {
  std::string path;  // empty or "-" means stdout
  std::string format = "json";
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--output", out.path, "Write the result here instead of stdout");
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void emit(const ordered_json& doc, const OutputOptions& out) {
  const std::string text = out.format == "csv" ? to_csv(doc) : doc.dump(2) + "\n";
  if (out.path.empty() || out.path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + out.path + "'");
  file << text;
}

ordered_json units_block() {
  return ordered_json{{"rates", "bits/s/Hz"},
                      {"snr", "linear power ratio"},
                      {"snr_db", "dB"},
                      {"power", "watts"},
                      {"time", "hours"}};
}

ordered_json solution_block(const tassec::ThroughputSolution& sol) {
  return ordered_json{{"feasible", sol.feasible()},
                      {"binding", tassec::to_string(sol.binding)},
                      {"r_b_star", sol.r_b_star},
                      {"r_s_star", sol.r_s_star},
                      {"r_e", sol.r_e},
                      {"mu_star", sol.mu_star},
                      {"t_s_star", sol.t_s_star},
                      {"achieved_p_suc", sol.achieved_p_suc},
                      {"achieved_p_so", sol.achieved_p_so},
                      {"stationarity_residual", sol.residual}};
}

// ---------------------------------------------------------------------------
// Shared flag bundles.

struct LinkFlags {
  int na = 1, nb = 1, ne = 1;
  double snr_b_db = 10.0;
  double snr_e_db = 0.0;

  tassec::AntennaConfig config() const { return {na, nb, ne}; }
  tassec::LinkBudget budget() const {
    return {db_to_linear(snr_b_db), db_to_linear(snr_e_db)};
  }
  ordered_json echo() const {
    return ordered_json{{"na", na},
                        {"nb", nb},
                        {"ne", ne},
                        {"snr_b_db", snr_b_db},
                        {"snr_e_db", snr_e_db},
                        {"gamma_bar_b", db_to_linear(snr_b_db)},
                        {"gamma_bar_e", db_to_linear(snr_e_db)}};
  }
};

void add_antenna_flags(CLI::App* cmd, LinkFlags& link) {
  cmd->add_option("--na", link.na, "Transmit antennas")->capture_default_str();
  cmd->add_option("--nb", link.nb, "Legitimate receive antennas")->capture_default_str();
  cmd->add_option("--ne", link.ne, "Eavesdropper antennas")->capture_default_str();
}

void add_link_flags(CLI::App* cmd, LinkFlags& link) {
  add_antenna_flags(cmd, link);
  cmd->add_option("--snr-b-db", link.snr_b_db,
                  "Average per-antenna SNR of the legitimate link, dB")
      ->capture_default_str();
  cmd->add_option("--snr-e-db", link.snr_e_db,
                  "Average per-antenna SNR at the eavesdropper, dB")
      ->capture_default_str();
}

struct ConstraintFlags {
  double sigma = 0.9;
  double epsilon = 0.1;

  tassec::SecurityConstraints constraints() const { return {sigma, epsilon}; }
};

void add_constraint_flags(CLI::App* cmd, ConstraintFlags& c) {
  cmd->add_option("--sigma", c.sigma, "Minimum transmission (success) probability")
      ->capture_default_str();
  cmd->add_option("--epsilon", c.epsilon, "Maximum secrecy outage probability")
      ->capture_default_str();
}

// ---------------------------------------------------------------------------
// Subcommand payloads. Each returns the document to emit.

struct MetricsArgs {
  LinkFlags link;
  double rb = 0.0, rs = 0.0;
  double mu = -1.0;  // negative means "use 2^rb - 1"
  OutputOptions out;
};

int run_metrics(const MetricsArgs& a) {
  const double mu = a.mu < 0.0 ? std::exp2(a.rb) - 1.0 : a.mu;
  const tassec::RatePolicy policy{a.rb, a.rs, mu};
  tassec::validate(policy);
  const auto cfg = a.link.config();
  const auto lb = a.link.budget();

  ordered_json doc;
  doc["command"] = "metrics";
  doc["units"] = units_block();
  auto inputs = a.link.echo();
  inputs["rb"] = a.rb;
  inputs["rs"] = a.rs;
  inputs["mu"] = mu;
  doc["inputs"] = inputs;
  doc["results"] = ordered_json{
      {"p_suc", tassec::p_success(mu, cfg, lb)},
      {"p_so", tassec::p_secrecy_outage(a.rb, a.rs, cfg, lb)},
      {"secure_throughput", tassec::secure_throughput(policy, cfg, lb)},
      {"feedback_bits", tassec::feedback_bits(cfg)}};
  emit(doc, a.out);
  return 0;
}

struct OptimizeArgs {
  LinkFlags link;
  ConstraintFlags constraints;
  std::string rb_bound = "exact";
  OutputOptions out;
};

int run_optimize(const OptimizeArgs& a) {
  const auto cfg = a.link.config();
  const auto lb = a.link.budget();
  const auto c = a.constraints.constraints();
  const auto bound = parse_rb_bound(a.rb_bound);
  const auto sol = tassec::optimize(c, cfg, lb, bound);
  const auto verdict = tassec::is_feasible(c, cfg, lb);

  ordered_json doc;
  doc["command"] = "optimize";
  doc["units"] = units_block();
  auto inputs = a.link.echo();
  inputs["sigma"] = c.sigma;
  inputs["epsilon"] = c.epsilon;
  inputs["rb_bound"] = a.rb_bound;
  doc["inputs"] = inputs;
  doc["solution"] = solution_block(sol);
  doc["bounds"] = ordered_json{
      {"r_b_max_exact", tassec::max_rb_exact(c, cfg, lb)},
      {"r_b_max_closed_form", tassec::max_rb_closed_form(c, cfg, lb)},
      {"r_e_min", verdict.r_e},
      {"rate_margin", verdict.rate_margin},
      {"sigma_bound_exact", verdict.sigma_bound},
      {"sigma_bound_closed_form",
       tassec::tradeoff_sigma_bound(c.epsilon, cfg, lb.rho())},
      {"sigma_margin", verdict.sigma_margin}};
  doc["results"] = ordered_json{{"feedback_bits", tassec::feedback_bits(cfg)}};
  emit(doc, a.out);
  return 0;
}

struct TradeoffArgs {
  LinkFlags link;
  std::string epsilon_grid = "0.01:0.30:30";
  std::string rho_db_grid = "0:15:31";
  OutputOptions out;
};

int run_tradeoff(const TradeoffArgs& a) {
  const auto cfg = a.link.config();
  const auto eps_grid = parse_grid(a.epsilon_grid);
  const auto rho_grid = parse_grid(a.rho_db_grid);
  for (double eps : eps_grid)
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("epsilon grid values must lie in (0, 1)");

  ordered_json doc;
  doc["command"] = "tradeoff";
  doc["units"] = units_block();
  doc["inputs"] = ordered_json{{"na", a.link.na},
                               {"nb", a.link.nb},
                               {"ne", a.link.ne},
                               {"grid", a.epsilon_grid},
                               {"rho_db_grid", a.rho_db_grid}};
  auto rows = ordered_json::array();
  for (double rho_db : rho_grid) {
    const double rho = db_to_linear(rho_db);
    for (double eps : eps_grid) {
      rows.push_back(ordered_json{
          {"rho_db", rho_db},
          {"rho", rho},
          {"epsilon", eps},
          {"sigma_bound", tassec::tradeoff_sigma_bound(eps, cfg, rho)},
          {"sigma_bound_exact", tassec::tradeoff_sigma_bound_exact(eps, cfg, rho)}});
    }
  }
  doc["rows"] = std::move(rows);
  emit(doc, a.out);
  return 0;
}

struct SweepArgs {
  LinkFlags link;
  ConstraintFlags constraints;
  std::string axis = "sigma";
  std::string grid;
  std::string rb_bound = "exact";
  std::optional<std::uint64_t> seed;  // echoed for reproducibility bookkeeping
  OutputOptions out;
};

int run_sweep(const SweepArgs& a) {
  const auto cfg = a.link.config();
  const auto lb = a.link.budget();
  const auto c = a.constraints.constraints();
  const auto bound = parse_rb_bound(a.rb_bound);

  std::vector<tassec::SweepRow> rows;
  if (a.axis == "config" || a.axis == "config-list") {
    rows = tassec::sweep_configs(parse_config_grid(a.grid), c, lb, bound);
  } else {
    tassec::SweepAxis axis;
    std::vector<double> grid = parse_grid(a.grid);
    if (a.axis == "sigma") {
      axis = tassec::SweepAxis::Sigma;
    } else if (a.axis == "epsilon") {
      axis = tassec::SweepAxis::Epsilon;
    } else if (a.axis == "gamma-bar-b" || a.axis == "gamma_bar_b") {
      axis = tassec::SweepAxis::GammaBarB;
    } else if (a.axis == "gamma-bar-b-db") {
      axis = tassec::SweepAxis::GammaBarB;
      for (double& v : grid) v = db_to_linear(v);
    } else {
      throw std::invalid_argument(
          "--axis must be one of sigma, epsilon, gamma-bar-b, gamma-bar-b-db, config");
    }
    rows = tassec::sweep(axis, grid, c, cfg, lb, bound);
  }

  ordered_json doc;
  doc["command"] = "sweep";
  doc["units"] = units_block();
  auto inputs = a.link.echo();
  inputs["sigma"] = c.sigma;
  inputs["epsilon"] = c.epsilon;
  inputs["axis"] = a.axis;
  inputs["grid"] = a.grid;
  inputs["rb_bound"] = a.rb_bound;
  if (a.seed) inputs["seed"] = *a.seed;
  doc["inputs"] = inputs;

  auto out_rows = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r{{"axis_value", row.axis_value},
                   {"na", row.cfg.n_a},
                   {"nb", row.cfg.n_b},
                   {"ne", row.cfg.n_e},
                   {"sigma", row.constraints.sigma},
                   {"epsilon", row.constraints.epsilon},
                   {"gamma_bar_b", row.budget.gamma_bar_b},
                   {"gamma_bar_e", row.budget.gamma_bar_e}};
    const ordered_json sol = solution_block(row.solution);
    for (const auto& [k, v] : sol.items()) r[k] = v;
    out_rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(out_rows);
  emit(doc, a.out);
  return 0;
}

struct ValidateArgs {
  LinkFlags link;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
  std::optional<double> sigma;
  std::optional<double> epsilon;
  OutputOptions out;
};

int run_validate(const ValidateArgs& a) {
  const auto cfg = a.link.config();
  const auto lb = a.link.budget();
  if (a.trials == 0) throw std::invalid_argument("--trials must be positive");

  tassec::Rng rng(a.seed);
  std::vector<double> gb(a.trials), ge(a.trials);
  for (std::size_t i = 0; i < a.trials; ++i) {
    const auto s = tassec::sample_joint_snr(cfg, lb, rng);
    gb[i] = s.gamma_b;
    ge[i] = s.gamma_e;
  }
  std::sort(gb.begin(), gb.end());
  std::sort(ge.begin(), ge.end());

  auto ks_distance = [&](const std::vector<double>& sorted, auto&& model_cdf) {
    double worst = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double m = model_cdf(sorted[i]);
      worst = std::max(worst, std::fabs(m - static_cast<double>(i + 1) / n));
      worst = std::max(worst, std::fabs(m - static_cast<double>(i) / n));
    }
    return worst;
  };
  const double ks_b = ks_distance(
      gb, [&](double g) { return tassec::legit_snr_cdf(g, cfg, lb); });
  const double ks_e = ks_distance(
      ge, [&](double g) { return tassec::eve_snr_cdf(g, cfg, lb); });

  ordered_json doc;
  doc["command"] = "validate";
  doc["units"] = units_block();
  auto inputs = a.link.echo();
  inputs["trials"] = a.trials;
  inputs["seed"] = a.seed;
  if (a.sigma) inputs["sigma"] = *a.sigma;
  if (a.epsilon) inputs["epsilon"] = *a.epsilon;
  doc["inputs"] = inputs;

  ordered_json results{{"ks_legit", ks_b}, {"ks_eve", ks_e}};
  if (a.sigma && a.epsilon) {
    const tassec::SecurityConstraints c{*a.sigma, *a.epsilon};
    const auto sol = tassec::optimize(c, cfg, lb);
    results["feasible"] = sol.feasible();
    if (sol.feasible()) {
      const double thr = std::exp2(sol.r_b_star - sol.r_s_star) - 1.0;
      std::size_t suc = 0, outage = 0;
      for (std::size_t i = 0; i < a.trials; ++i) {
        if (gb[i] > sol.mu_star) ++suc;
        if (ge[i] > thr) ++outage;
      }
      const double emp_suc = static_cast<double>(suc) / a.trials;
      const double emp_so = static_cast<double>(outage) / a.trials;
      results["p_suc_model"] = sol.achieved_p_suc;
      results["p_suc_empirical"] = emp_suc;
      results["p_suc_abs_error"] = std::fabs(emp_suc - sol.achieved_p_suc);
      results["p_so_model"] = sol.achieved_p_so;
      results["p_so_empirical"] = emp_so;
      results["p_so_abs_error"] = std::fabs(emp_so - sol.achieved_p_so);
    }
  }
  doc["results"] = results;
  emit(doc, a.out);
  return 0;
}

struct ReconstructArgs {
  LinkFlags link;
  ConstraintFlags constraints;
  std::string input;
  std::optional<double> bin_seconds;
  double tau_hours = 0.25;
  std::string label;
  std::string synth;
  std::size_t samples = 96;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::string rb_bound = "exact";
  unsigned threads = 1;
  std::string per_trial_path;
  OutputOptions out;
};

int run_reconstruct(const ReconstructArgs& a) {
  if (a.input.empty() == a.synth.empty())
    throw std::invalid_argument("provide exactly one of --input or --synth");

  const tassec::Rng rng(a.seed);
  tassec::LoadProfile profile;
  if (!a.input.empty()) {
    tassec::CsvOptions options;
    options.bin_seconds = a.bin_seconds;
    options.tau_hours = a.tau_hours;
    options.label = a.label;
    profile = tassec::ingest_csv(a.input, options);
  } else {
    tassec::Rng synth_rng = rng.split(0);
    profile = tassec::synth_profile(tassec::synth_kind_from_string(a.synth), synth_rng,
                                    a.samples, a.tau_hours);
    if (!a.label.empty()) profile.label = a.label;
  }

  const auto report = tassec::run_experiment(
      profile, a.constraints.constraints(), a.link.config(), a.link.budget(), a.trials,
      rng, parse_rb_bound(a.rb_bound), a.threads);

  if (!a.per_trial_path.empty()) {
    std::ofstream file(a.per_trial_path, std::ios::binary);
    if (!file)
      throw std::runtime_error("cannot open per-trial file '" + a.per_trial_path + "'");
    file << "trial,bob_nrmsd,eve_nrmsd\n";
    for (std::size_t t = 0; t < a.trials; ++t) {
      file << t << "," << ordered_json(report.bob.per_trial[t]).dump() << ","
           << ordered_json(report.eve.per_trial[t]).dump() << "\n";
    }
  }

  double mean_watts = 0.0;
  for (double w : profile.samples) mean_watts += w;
  mean_watts /= static_cast<double>(profile.samples.size());

  ordered_json doc;
  doc["command"] = "reconstruct";
  doc["units"] = units_block();
  auto inputs = a.link.echo();
  inputs["sigma"] = a.constraints.sigma;
  inputs["epsilon"] = a.constraints.epsilon;
  inputs["trials"] = a.trials;
  inputs["seed"] = a.seed;
  inputs["rb_bound"] = a.rb_bound;
  inputs["tau_hours"] = a.tau_hours;
  inputs["threads"] = a.threads;
  if (!a.input.empty()) inputs["input"] = a.input;
  if (a.bin_seconds) inputs["bin_seconds"] = *a.bin_seconds;
  if (!a.synth.empty()) {
    inputs["synth"] = a.synth;
    inputs["samples"] = a.samples;
  }
  doc["inputs"] = inputs;
  doc["profile"] = ordered_json{{"label", profile.label},
                                {"samples", profile.samples.size()},
                                {"tau_hours", profile.tau_hours},
                                {"mean_watts", mean_watts}};
  doc["solution"] = solution_block(report.solution);
  auto role_block = [](const tassec::ReceptionStats& s) {
    return ordered_json{{"p_receive", s.p_receive},
                        {"trials", s.trials},
                        {"mean_nrmsd", s.mean_nrmsd},
                        {"std_nrmsd", s.std_nrmsd}};
  };
  doc["rows"] = ordered_json::array();
  {
    auto bob = role_block(report.bob);
    bob["role"] = "bob";
    auto eve = role_block(report.eve);
    eve["role"] = "eve";
    doc["rows"].push_back(std::move(bob));
    doc["rows"].push_back(std::move(eve));
  }
  emit(doc, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Secure-throughput planning for antenna-selection wiretap links, plus a "
      "load-reporting reconstruction experiment"};
  app.require_subcommand(1);

  MetricsArgs metrics;
  auto* cmd_metrics = app.add_subcommand(
      "metrics", "Evaluate reliability, secrecy outage, and throughput for one policy");
  add_link_flags(cmd_metrics, metrics.link);
  cmd_metrics->add_option("--rb", metrics.rb, "Codeword rate, bits/s/Hz")->required();
  cmd_metrics->add_option("--rs", metrics.rs, "Confidential rate, bits/s/Hz")->required();
  cmd_metrics->add_option("--mu", metrics.mu,
                          "On-off SNR threshold, linear (default 2^rb - 1)");
  add_output_flags(cmd_metrics, metrics.out);

  OptimizeArgs optimize;
  auto* cmd_optimize = app.add_subcommand(
      "optimize", "Choose rates maximizing confidential throughput under constraints");
  add_link_flags(cmd_optimize, optimize.link);
  add_constraint_flags(cmd_optimize, optimize.constraints);
  cmd_optimize->add_option("--rb-bound", optimize.rb_bound,
                           "Reliability ceiling: exact or closed-form")
      ->check(CLI::IsMember({"exact", "closed-form"}))
      ->capture_default_str();
  add_output_flags(cmd_optimize, optimize.out);

  TradeoffArgs tradeoff;
  auto* cmd_tradeoff = app.add_subcommand(
      "tradeoff", "Tabulate the reliability ceiling over epsilon and SNR advantage");
  add_antenna_flags(cmd_tradeoff, tradeoff.link);
  cmd_tradeoff->add_option("--grid", tradeoff.epsilon_grid,
                           "Epsilon grid (comma list or start:stop:count)")
      ->capture_default_str();
  cmd_tradeoff->add_option("--rho-db-grid", tradeoff.rho_db_grid,
                           "SNR-advantage grid in dB (comma list or start:stop:count)")
      ->capture_default_str();
  add_output_flags(cmd_tradeoff, tradeoff.out);

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "Re-optimize along one axis (sigma, epsilon, gamma-bar-b, config)");
  add_link_flags(cmd_sweep, sweep.link);
  add_constraint_flags(cmd_sweep, sweep.constraints);
  cmd_sweep->add_option("--axis", sweep.axis,
                        "One of sigma, epsilon, gamma-bar-b, gamma-bar-b-db, config")
      ->capture_default_str();
  cmd_sweep->add_option("--grid", sweep.grid,
                        "Axis grid (comma list, start:stop:count, or NAxNBxNE list)")
      ->required();
  cmd_sweep->add_option("--rb-bound", sweep.rb_bound,
                        "Reliability ceiling: exact or closed-form")
      ->check(CLI::IsMember({"exact", "closed-form"}))
      ->capture_default_str();
  cmd_sweep->add_option("--seed", sweep.seed,
                        "Echoed in the output for bookkeeping (sweeps are deterministic)");
  add_output_flags(cmd_sweep, sweep.out);

  ValidateArgs validate;
  auto* cmd_validate = app.add_subcommand(
      "validate", "Monte Carlo check of the closed-form SNR laws and probabilities");
  add_link_flags(cmd_validate, validate.link);
  cmd_validate->add_option("--trials", validate.trials, "Number of channel draws")
      ->capture_default_str();
  cmd_validate->add_option("--seed", validate.seed, "RNG seed (required)")->required();
  cmd_validate->add_option("--sigma", validate.sigma,
                           "Also validate the optimized policy at this sigma");
  cmd_validate->add_option("--epsilon", validate.epsilon,
                           "Also validate the optimized policy at this epsilon");
  add_output_flags(cmd_validate, validate.out);

  ReconstructArgs reconstruct;
  auto* cmd_reconstruct = app.add_subcommand(
      "reconstruct",
      "Score load-curve reconstruction at the legitimate receiver and the eavesdropper");
  add_link_flags(cmd_reconstruct, reconstruct.link);
  add_constraint_flags(cmd_reconstruct, reconstruct.constraints);
  cmd_reconstruct->add_option("--input", reconstruct.input,
                              "CSV file of timestamp_seconds,watts rows");
  cmd_reconstruct->add_option("--bin-seconds", reconstruct.bin_seconds,
                              "Average CSV rows into bins of this width");
  cmd_reconstruct->add_option("--tau-hours", reconstruct.tau_hours,
                              "Sampling period of pre-binned or synthetic data")
      ->capture_default_str();
  cmd_reconstruct->add_option("--label", reconstruct.label, "Profile label override");
  cmd_reconstruct->add_option(
      "--synth", reconstruct.synth,
      "Synthetic profile: flat, morning-evening-peaks, or afternoon-peak");
  cmd_reconstruct->add_option("--samples", reconstruct.samples,
                              "Synthetic profile length")
      ->capture_default_str();
  cmd_reconstruct->add_option("--trials", reconstruct.trials, "Erasure trials per role")
      ->capture_default_str();
  cmd_reconstruct->add_option("--seed", reconstruct.seed, "RNG seed (required)")
      ->required();
  cmd_reconstruct->add_option("--rb-bound", reconstruct.rb_bound,
                              "Reliability ceiling: exact or closed-form")
      ->check(CLI::IsMember({"exact", "closed-form"}))
      ->capture_default_str();
  cmd_reconstruct->add_option("--threads", reconstruct.threads,
                              "Worker threads (results are identical for any value)")
      ->capture_default_str();
  cmd_reconstruct->add_option("--per-trial", reconstruct.per_trial_path,
                              "Also write per-trial NRMSD values to this CSV file");
  add_output_flags(cmd_reconstruct, reconstruct.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_metrics->parsed()) return run_metrics(metrics);
    if (cmd_optimize->parsed()) return run_optimize(optimize);
    if (cmd_tradeoff->parsed()) return run_tradeoff(tradeoff);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_validate->parsed()) return run_validate(validate);
    if (cmd_reconstruct->parsed()) return run_reconstruct(reconstruct);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
