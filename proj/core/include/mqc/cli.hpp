#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqc/verify.hpp"

namespace mqc::cli {

inline constexpr const char* kToolName = "mqcbound";
inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Invalid flags/ranges; mapped to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct CommonOptions {
  Format format = Format::csv;
  std::string out_path;  // empty = stdout
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = implementation-chosen
  std::string command_line;
};

/// "a,b,c" lists and "start:stop:step" ranges.
std::vector<int> parse_int_list(const std::string& text);
std::vector<int> parse_int_range(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
std::vector<double> parse_real_range(const std::string& text);

struct BoundsParams {
  std::vector<int> n_values;
  std::vector<double> p_values;
  std::vector<int> q_values;
  CommonOptions common;
};

struct TransitionParams {
  std::vector<int> n_values;
  std::vector<double> p_values;
  CommonOptions common;
};

struct Figure2Params {
  double p = 0.0;
  std::vector<int> n_values;
  CommonOptions common;
};

struct ProfileParams {
  int num_spins = 0;
  double p = 0.0;
  std::vector<double> q_values;
  CommonOptions common;
};

struct RankParams {
  std::vector<int> n_values;
  std::optional<std::vector<int>> q_values;  // default: 1..N per N
  CommonOptions common;
};

struct SnrParams {
  std::vector<int> n_values;
  std::vector<double> p_values;
  std::vector<int> q_values;
  CommonOptions common;
};

struct VerifyParams {
  int max_spins = 6;
  CommonOptions common;
};

/// Each runner validates its parameters (UsageError on bad input), writes
/// one deterministic data file to `out`, and returns an exit code.
int run_bounds(const BoundsParams& params, std::ostream& out);
int run_transition(const TransitionParams& params, std::ostream& out);
int run_figure2(const Figure2Params& params, std::ostream& out);
int run_profile(const ProfileParams& params, std::ostream& out);
int run_rank(const RankParams& params, std::ostream& out);
int run_snr(const SnrParams& params, std::ostream& out);
int run_verify(const VerifyParams& params, std::ostream& out);

std::string verify_report_json(const VerifyReport& report, const CommonOptions& common);

}  // namespace mqc::cli
