#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CmdResult {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TASSEC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  const int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json parse_json(const CmdResult& r) {
  INFO(r.output);
  REQUIRE(r.code == 0);
  return json::parse(r.output);
}

std::filesystem::path temp_file(const std::string& suffix) {
  static int counter = 0;
  return std::filesystem::temp_directory_path() /
         ("cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
}

}  // namespace

TEST_CASE("metrics reports the closed-form probabilities") {
  const auto doc = parse_json(run_cli(
      "metrics --na 1 --nb 1 --ne 1 --snr-b-db 10 --rb 2 --rs 1 --mu 3"));
  CHECK(doc["results"]["p_suc"].get<double>() ==
        Catch::Approx(std::exp(-0.3)).epsilon(1e-9));
  CHECK(doc["inputs"]["gamma_bar_b"].get<double>() == Catch::Approx(10.0));
  CHECK(doc["inputs"]["snr_e_db"].get<double>() == 0.0);
  CHECK(doc["results"].contains("p_so"));
  CHECK(doc["results"].contains("secure_throughput"));
  CHECK(doc["results"]["feedback_bits"].get<int>() == 0);
}

TEST_CASE("metrics defaults the threshold to the decodability point") {
  const auto doc = parse_json(run_cli("metrics --nb 2 --rb 2 --rs 0.5"));
  CHECK(doc["inputs"]["mu"].get<double>() == Catch::Approx(3.0));
}

TEST_CASE("metrics rejects a threshold below the codeword rate") {
  const auto r = run_cli("metrics --rb 2 --rs 1 --mu 2.5");
  CHECK(r.code != 0);
  CHECK(r.output.find("mu") != std::string::npos);
}

TEST_CASE("metrics rejects inverted rates") {
  const auto r = run_cli("metrics --rb 1 --rs 1.5");
  CHECK(r.code != 0);
}

TEST_CASE("optimize reproduces the reference solution") {
  const auto doc = parse_json(run_cli(
      "optimize --na 4 --nb 1 --ne 2 --snr-b-db 10 --snr-e-db 0 --sigma 0.9 "
      "--epsilon 0.1"));
  CHECK(doc["solution"]["feasible"].get<bool>());
  CHECK(doc["solution"]["binding"].get<std::string>() == "qos_ceiling");
  CHECK(doc["solution"]["r_b_star"].get<double>() ==
        Catch::Approx(3.211504361).epsilon(1e-7));
  CHECK(doc["solution"]["t_s_star"].get<double>() ==
        Catch::Approx(0.8295772107).epsilon(1e-7));
  CHECK(doc["bounds"]["r_b_max_exact"].get<double>() <=
        doc["bounds"]["r_b_max_closed_form"].get<double>() + 1e-12);
  CHECK(doc["bounds"]["sigma_margin"].get<double>() > 0.0);
}

TEST_CASE("optimize reports infeasibility as a result, not an error") {
  const auto doc = parse_json(run_cli(
      "optimize --na 1 --nb 1 --ne 1 --snr-b-db 10 --snr-e-db 0 --sigma 0.9 "
      "--epsilon 0.1"));
  CHECK_FALSE(doc["solution"]["feasible"].get<bool>());
  CHECK(doc["solution"]["binding"].get<std::string>() == "infeasible");
}

TEST_CASE("tradeoff reproduces reference frontier points") {
  const auto one = parse_json(
      run_cli("tradeoff --na 1 --nb 1 --ne 1 --grid 0.2 --rho-db-grid 5"));
  REQUIRE(one["rows"].size() == 1);
  CHECK(one["rows"][0]["sigma_bound"].get<double>() ==
        Catch::Approx(0.601127058131).margin(1e-9));

  const auto four = parse_json(
      run_cli("tradeoff --na 4 --nb 2 --ne 2 --grid 0.2 --rho-db-grid 5"));
  CHECK(four["rows"][0]["sigma_bound"].get<double>() ==
        Catch::Approx(0.996780524032).margin(1e-9));
  CHECK(four["rows"][0]["sigma_bound_exact"].get<double>() <=
        four["rows"][0]["sigma_bound"].get<double>() + 1e-12);
}

TEST_CASE("tradeoff grids expand as expected") {
  const auto doc = parse_json(
      run_cli("tradeoff --na 2 --nb 2 --ne 1 --grid 0.1:0.3:3 --rho-db-grid 0,10"));
  REQUIRE(doc["rows"].size() == 6);
  CHECK(doc["rows"][0]["epsilon"].get<double>() == Catch::Approx(0.1));
  CHECK(doc["rows"][2]["epsilon"].get<double>() == Catch::Approx(0.3));
  CHECK(doc["rows"][3]["rho_db"].get<double>() == Catch::Approx(10.0));
}

TEST_CASE("tradeoff rejects out-of-range epsilon grids") {
  const auto r = run_cli("tradeoff --grid 0,0.5 --rho-db-grid 5");
  CHECK(r.code != 0);
}

TEST_CASE("sweep output is byte-identical across reruns") {
  const std::string args =
      "sweep --na 4 --nb 2 --ne 2 --snr-b-db 10 --snr-e-db 0 --epsilon 0.1 "
      "--axis sigma --grid 0.5:0.95:10 --seed 7";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("sweep handles config grids and csv output") {
  const auto r = run_cli(
      "sweep --snr-b-db 10 --snr-e-db 0 --sigma 0.9 --epsilon 0.1 --axis config "
      "--grid 1x1x1,4x1x2,4x2x2 --format csv");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.output);
  std::string line;
  int comments = 0, rows = 0;
  bool saw_header = false;
  while (std::getline(lines, line)) {
    if (line.rfind("# ", 0) == 0) ++comments;
    else if (!saw_header) saw_header = true;
    else ++rows;
  }
  CHECK(comments > 0);
  CHECK(rows == 3);
  CHECK(r.output.find("t_s_star") != std::string::npos);
}

TEST_CASE("sweep rejects malformed grids") {
  CHECK(run_cli("sweep --axis sigma --grid abc").code != 0);
  CHECK(run_cli("sweep --axis config --grid 4x2").code != 0);
  CHECK(run_cli("sweep --axis altitude --grid 1,2").code != 0);
}

TEST_CASE("validate requires a seed") {
  const auto r = run_cli("validate --trials 100");
  CHECK(r.code != 0);
  CHECK(r.output.find("--seed") != std::string::npos);
}

TEST_CASE("validate is byte-identical across reruns and matches the model") {
  const std::string args =
      "validate --na 4 --nb 2 --ne 2 --snr-b-db 10 --snr-e-db 0 --trials 20000 "
      "--seed 12345";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.output == b.output);
  const auto doc = json::parse(a.output);
  // Kolmogorov-Smirnov distance at 20000 samples should be well under 0.02.
  CHECK(doc["results"]["ks_legit"].get<double>() < 0.02);
  CHECK(doc["results"]["ks_eve"].get<double>() < 0.02);
}

TEST_CASE("validate checks the optimized policy when constraints are given") {
  const auto doc = parse_json(run_cli(
      "validate --na 4 --nb 2 --ne 2 --snr-b-db 10 --snr-e-db 0 --trials 20000 "
      "--seed 99 --sigma 0.9 --epsilon 0.1"));
  REQUIRE(doc["results"]["feasible"].get<bool>());
  CHECK(doc["results"]["p_suc_abs_error"].get<double>() < 0.02);
  CHECK(doc["results"]["p_so_abs_error"].get<double>() < 0.02);
}

TEST_CASE("reconstruct runs the synthetic experiment deterministically") {
  const std::string args =
      "reconstruct --na 4 --nb 2 --ne 2 --snr-b-db 10 --snr-e-db 0 --sigma 0.8 "
      "--epsilon 0.3 --synth morning-evening-peaks --trials 500 --seed 31";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.output == b.output);
  const auto doc = json::parse(a.output);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["role"].get<std::string>() == "bob");
  CHECK(doc["rows"][1]["role"].get<std::string>() == "eve");
  CHECK(doc["rows"][0]["mean_nrmsd"].get<double>() <
        doc["rows"][1]["mean_nrmsd"].get<double>());
  CHECK(doc["profile"]["samples"].get<int>() == 96);
}

TEST_CASE("reconstruct ingests CSV input and writes per-trial data") {
  const auto csv = temp_file(".csv");
  {
    std::ofstream out(csv);
    out << "time_s,watts\n";
    for (int i = 0; i < 96; ++i) out << 900 * i << "," << 100.0 + i << "\n";
  }
  const auto per_trial = temp_file(".csv");
  const auto doc = parse_json(run_cli(
      "reconstruct --na 4 --nb 2 --ne 2 --snr-b-db 10 --snr-e-db 0 --sigma 0.8 "
      "--epsilon 0.3 --input " + csv.string() + " --trials 50 --seed 5 --per-trial " +
      per_trial.string()));
  CHECK(doc["profile"]["label"].get<std::string>() == csv.stem().string());

  std::ifstream in(per_trial);
  REQUIRE(in.good());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 51);  // header plus one line per trial
  std::filesystem::remove(csv);
  std::filesystem::remove(per_trial);
}

TEST_CASE("reconstruct validates its profile source flags") {
  CHECK(run_cli("reconstruct --seed 1").code != 0);
  CHECK(run_cli("reconstruct --synth nope --seed 1").code != 0);
  const auto r = run_cli(
      "reconstruct --na 1 --nb 1 --ne 1 --sigma 0.9 --epsilon 0.1 --synth flat "
      "--trials 10 --seed 1");
  CHECK(r.code != 0);  // infeasible constraints
  CHECK(r.output.find("infeasible") != std::string::npos);
}

TEST_CASE("output lands in a file when requested") {
  const auto path = temp_file(".json");
  const auto r = run_cli("metrics --rb 2 --rs 1 --output " + path.string());
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const auto doc = json::parse(buf.str());
  CHECK(doc["command"].get<std::string>() == "metrics");
  std::filesystem::remove(path);
}

TEST_CASE("csv format emits a flat table for scalar commands") {
  const auto r = run_cli("metrics --rb 2 --rs 1 --format csv");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.output);
  std::string header, values;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, values));
  CHECK(header.find("results.p_suc") != std::string::npos);
  CHECK(header.find("inputs.gamma_bar_b") != std::string::npos);
}
