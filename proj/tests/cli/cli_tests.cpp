// End-to-end tests against the mqcbound executable (path in argv[1]):
// subcommand output schemas, exit codes, validation, and determinism.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mqc/bounds.hpp"

namespace {

int failures = 0;
std::string binary;

#define CHECK_MSG(cond, msg)                                      \
  do {                                                            \
    if (!(cond)) {                                                \
      ++failures;                                                 \
      std::cout << "FAIL " << __LINE__ << ": " << msg << "\n";    \
    }                                                             \
  } while (0)

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, bool keep_stderr = false) {
  const std::string cmd =
      "'" + binary + "' " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

void test_bounds_sweep() {
  const auto result = run("bounds --n 500 --p 0.3,0.6 --q-range 1:500:1 --format csv");
  CHECK_MSG(result.exit_code == 0, "bounds sweep exit code");
  const auto lines = lines_of(result.output);
  CHECK_MSG(lines.size() == 1001, "bounds sweep row count, got " << lines.size() - 1);
  CHECK_MSG(lines[0] == "N,q,p,rank,lower,upper,log_lower,log_upper", "bounds header");
  // Deterministic order: N, then p, then q ascending.
  const auto first = split_csv(lines[1]);
  const auto mid = split_csv(lines[501]);
  CHECK_MSG(first[1] == "1" && mid[1] == "1", "q restarts per p cell");
  CHECK_MSG(std::stod(first[2]) == 0.3 && std::stod(mid[2]) == 0.6, "p cell ordering");
}

void test_bounds_single_row() {
  const auto result = run("bounds --n 7 --p 0.3 --q 1");
  CHECK_MSG(result.exit_code == 0, "bounds single exit code");
  const auto lines = lines_of(result.output);
  CHECK_MSG(lines.size() == 2, "bounds single row count");
  const auto cells = split_csv(lines[1]);
  CHECK_MSG(cells.size() == 8, "bounds column count");
  CHECK_MSG(cells[3] == "128", "rank column 2^7");
  CHECK_MSG(std::abs(std::stod(cells[4]) - 0.3) <= 1e-12, "lower = p");
  CHECK_MSG(std::abs(std::stod(cells[5]) - 0.6) <= 1e-12, "upper = 2p");
}

void test_validation_exits() {
  CHECK_MSG(run("bounds --n 4 --p 1.5 --q 1").exit_code == 1, "p out of range");
  CHECK_MSG(run("bounds --n 4 --p 0.5 --q 5").exit_code == 1, "q above N");
  CHECK_MSG(run("bounds --n 4 --p 0.5 --q 0").exit_code == 1, "q below 1");
  CHECK_MSG(run("bounds --n 4 --q 1").exit_code == 1, "missing p");
  CHECK_MSG(run("bounds --n 4 --p 0.2:0.4:0 --q 1").exit_code == 1, "list-parse failure");
  CHECK_MSG(run("bounds --n 4 --p-range 0.2:0.4:0 --q 1").exit_code == 1, "zero step");
  CHECK_MSG(run("bounds --n 4 --p 0.1 --p-range 0.2:0.4:0.1 --q 1").exit_code == 1,
            "list and range together");
  CHECK_MSG(run("transition --n 10 --p 1").exit_code == 1, "transition p=1");
  CHECK_MSG(run("nonsense").exit_code == 1, "unknown subcommand");
  CHECK_MSG(run("verify --max-n 9").exit_code == 1, "verify max-n cap");
  CHECK_MSG(run("--version").exit_code == 0, "version flag");
}

void test_transition_grid() {
  const auto result = run("transition --n 40,50,60 --p-range 0.05:0.95:0.05");
  CHECK_MSG(result.exit_code == 0, "transition exit code");
  const auto lines = lines_of(result.output);
  CHECK_MSG(lines[0] == "N,p,q_half_lower,q_half_upper,width,q_c_model,Q_c_cap",
            "transition header");
  CHECK_MSG(lines.size() == 1 + 3 * 19, "transition grid rows, got " << lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    CHECK_MSG(cells.size() == 7, "transition column count");
    const double n = std::stod(cells[0]);
    const double p = std::stod(cells[1]);
    CHECK_MSG(std::stod(cells[5]) == p * n, "q_c_model column is exactly p*N");
  }
}

void test_figure2() {
  const auto result = run("figure2 --p 0.99 --n-range 2:450:2");
  CHECK_MSG(result.exit_code == 0, "figure2 exit code");
  const auto lines = lines_of(result.output);
  CHECK_MSG(lines[0] ==
                "N,b_qN,B_qN,b_qNm1,B_qNm1,log_b_qN,log_B_qN,log_b_qNm1,log_B_qNm1",
            "figure2 header");
  CHECK_MSG(lines.size() == 1 + 225, "figure2 rows");

  const auto first = split_csv(lines[1]);
  const double b22 = std::stod(first[1]);
  CHECK_MSG(std::abs(b22 - mqc::closed_form_qn(2, 0.99).to_double()) <= 1e-12,
            "N=2 row matches the closed form");

  // Exponential decay: least-squares slope of ln b_qN against N is negative,
  // and the 1/e crossing lands in the expected window.
  double sum_n = 0, sum_y = 0, sum_nn = 0, sum_ny = 0;
  int count = 0;
  int crossing = -1;
  const double threshold = 0.99 / std::exp(1.0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    const double n = std::stod(cells[0]);
    const double log_b = std::stod(cells[5]);
    sum_n += n;
    sum_y += log_b;
    sum_nn += n * n;
    sum_ny += n * log_b;
    ++count;
    if (crossing < 0 && std::stod(cells[1]) < threshold) crossing = static_cast<int>(n);
  }
  const double slope = (count * sum_ny - sum_n * sum_y) / (count * sum_nn - sum_n * sum_n);
  CHECK_MSG(slope < 0.0, "ln b_qN slope vs N is negative");
  CHECK_MSG(crossing >= 100 && crossing <= 400, "1/e crossing in [100,400], got " << crossing);
}

void test_profile_and_snr_and_rank() {
  const auto profile = run("profile --n 500 --p 0.6 --q 0,300");
  CHECK_MSG(profile.exit_code == 0, "profile exit code");
  const auto profile_lines = lines_of(profile.output);
  CHECK_MSG(profile_lines[0] == "N,p,q,intensity,model_width", "profile header");
  const double peak = std::stod(split_csv(profile_lines[1])[3]);
  const double edge = std::stod(split_csv(profile_lines[2])[3]);
  CHECK_MSG(std::abs(edge - 0.5 * peak) <= 0.05 * peak, "profile half height at box edge");
  CHECK_MSG(std::abs(std::stod(split_csv(profile_lines[1])[4]) -
                     2.0 * std::sqrt(6.0 * 500 * 0.4)) <= 1e-9,
            "model width column");

  const auto rank = run("rank --n 4");
  const auto rank_lines = lines_of(rank.output);
  CHECK_MSG(rank_lines[0] == "N,q,rank,half_rank", "rank header");
  CHECK_MSG(rank_lines.size() == 5, "rank rows");
  CHECK_MSG(split_csv(rank_lines[1])[2] == "16", "rank q=1");
  CHECK_MSG(split_csv(rank_lines[2])[2] == "12", "rank q=2");
  CHECK_MSG(split_csv(rank_lines[4])[2] == "2", "rank q=4");

  const auto snr = run("snr --n 100 --p 0.5 --q 10,60");
  const auto snr_lines = lines_of(snr.output);
  CHECK_MSG(snr_lines[0] == "N,q,p,eta,log_eta,inside_observable", "snr header");
  const auto inside = split_csv(snr_lines[1]);
  const auto outside = split_csv(snr_lines[2]);
  CHECK_MSG(inside[5] == "1" && std::stod(inside[3]) == 1.0, "snr inside observable");
  CHECK_MSG(outside[5] == "0", "snr outside observable");
  CHECK_MSG(std::abs(std::stod(outside[4]) - 36.0) <= 1e-12, "snr log_eta = 36");
}

void test_verify_report() {
  const auto result = run("verify --max-n 4 --seed 0");
  CHECK_MSG(result.exit_code == 0, "verify exit code");
  const auto doc = nlohmann::json::parse(result.output);
  CHECK_MSG(doc["overall_pass"].get<bool>(), "verify overall pass");
  CHECK_MSG(doc["meta"]["tool"] == "mqcbound", "verify meta tool");
  bool saw_zigzag = false;
  double worst_fourier = -1.0;
  for (const auto& check : doc["checks"]) {
    const std::string name = check["name"].get<std::string>();
    const std::string params = check["params"].get<std::string>();
    if (name == "zigzag_rank" && params.find("N=4 q=2 ") != std::string::npos) {
      saw_zigzag = params.find("rank=12") != std::string::npos;
    }
    if (name == "projector_fourier_equivalence") {
      worst_fourier = std::max(worst_fourier, check["max_residual"].get<double>());
    }
  }
  CHECK_MSG(saw_zigzag, "verify report contains rank check N=4 q=2 rank=12");
  CHECK_MSG(worst_fourier >= 0.0 && worst_fourier < 1e-10,
            "projector equivalence residual < 1e-10, got " << worst_fourier);
}

void test_determinism_and_output_file() {
  const std::string cmd = "bounds --n 64 --p 0.25,0.75 --q-range 1:64:1";
  const auto once = run(cmd + " --threads 1");
  const auto twice = run(cmd + " --threads 4");
  CHECK_MSG(once.output == twice.output, "byte-identical output across thread counts");
  const auto json_run = run(cmd + " --format json --seed 3");
  const auto doc = nlohmann::json::parse(json_run.output);
  CHECK_MSG(doc["meta"]["seed"].get<int>() == 3, "seed echoed in meta");
  CHECK_MSG(doc["rows"].size() == 128, "json row count");
  CHECK_MSG(doc["rows"][0].contains("log_upper"), "json mirrors csv columns");

  const std::string path = "/tmp/mqcbound_cli_test_out.csv";
  std::remove(path.c_str());
  const auto to_file = run(cmd + " --out " + path);
  CHECK_MSG(to_file.exit_code == 0 && to_file.output.empty(), "--out writes no stdout");
  std::ifstream file(path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  CHECK_MSG(buffer.str() == once.output, "--out file matches stdout bytes");
  std::remove(path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-mqcbound>\n";
    return 2;
  }
  binary = argv[1];
  test_bounds_sweep();
  test_bounds_single_row();
  test_validation_exits();
  test_transition_grid();
  test_figure2();
  test_profile_and_snr_and_rank();
  test_verify_report();
  test_determinism_and_output_file();
  if (failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
  } else {
    std::cout << "cli_tests: " << failures << " check(s) failed\n";
  }
  return failures == 0 ? 0 : 1;
}
