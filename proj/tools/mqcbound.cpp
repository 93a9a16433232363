#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "mqc/cli.hpp"

namespace {

using namespace mqc::cli;

struct CommonFlags {
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags, const char* default_format) {
  flags->format = default_format;
  cmd->add_option("--format", flags->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", flags->out_path, "Output path (default: standard output)");
  cmd->add_option("--seed", flags->seed, "Random seed for sampling checks")
      ->capture_default_str();
  cmd->add_option("--threads", flags->threads,
                  "Worker threads for sweeps (0 = implementation-chosen)");
}

CommonOptions make_common(const CommonFlags& flags, const std::string& command_line) {
  CommonOptions common;
  common.format = flags.format == "json" ? Format::json : Format::csv;
  common.out_path = flags.out_path;
  common.seed = flags.seed;
  common.threads = flags.threads;
  common.command_line = command_line;
  return common;
}

int dispatch(const CommonOptions& common, const std::function<int(std::ostream&)>& runner) {
  if (common.out_path.empty()) return runner(std::cout);
  std::ofstream file(common.out_path);
  if (!file) {
    std::cerr << "mqcbound: cannot open output file '" << common.out_path << "'\n";
    return kExitNumeric;
  }
  return runner(file);
}

std::vector<int> int_sweep(const std::string& list, const std::string& range,
                           const char* what) {
  if (!list.empty() && !range.empty()) {
    throw UsageError(std::string(what) + ": give either a list or a range, not both");
  }
  if (!list.empty()) return parse_int_list(list);
  if (!range.empty()) return parse_int_range(range);
  return {};
}

std::vector<double> real_sweep(const std::string& list, const std::string& range,
                               const char* what) {
  if (!list.empty() && !range.empty()) {
    throw UsageError(std::string(what) + ": give either a list or a range, not both");
  }
  if (!list.empty()) return parse_real_list(list);
  if (!range.empty()) return parse_real_range(range);
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  CLI::App app{"Observable multiple-quantum coherence intensity bounds for "
               "N-spin-1/2 ensembles"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  // bounds
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Lower/upper intensity bounds over an (N, p, q) sweep");
  std::string bounds_n, bounds_p, bounds_p_range, bounds_q, bounds_q_range;
  CommonFlags bounds_flags;
  bounds_cmd->add_option("--n", bounds_n, "Spin counts, comma separated")->required();
  bounds_cmd->add_option("--p", bounds_p, "Polarizations, comma separated");
  bounds_cmd->add_option("--p-range", bounds_p_range, "Polarization range start:stop:step");
  bounds_cmd->add_option("--q", bounds_q, "Coherence orders, comma separated");
  bounds_cmd->add_option("--q-range", bounds_q_range, "Coherence order range start:stop:step");
  add_common_flags(bounds_cmd, &bounds_flags, "csv");

  // transition
  auto* transition_cmd = app.add_subcommand(
      "transition", "Half-decay orders and uncertainty-strip width per (N, p)");
  std::string trans_n, trans_p, trans_p_range;
  CommonFlags trans_flags;
  transition_cmd->add_option("--n", trans_n, "Spin counts, comma separated")->required();
  transition_cmd->add_option("--p", trans_p, "Polarizations, comma separated");
  transition_cmd->add_option("--p-range", trans_p_range, "Polarization range start:stop:step");
  add_common_flags(transition_cmd, &trans_flags, "csv");

  // figure2
  auto* figure2_cmd = app.add_subcommand(
      "figure2", "q = N and q = N-1 bounds as a function of N at fixed p");
  double figure2_p = 0.99;
  std::string figure2_n, figure2_n_range;
  CommonFlags figure2_flags;
  figure2_cmd->add_option("--p", figure2_p, "Polarization")->required();
  figure2_cmd->add_option("--n", figure2_n, "Spin counts, comma separated");
  figure2_cmd->add_option("--n-range", figure2_n_range, "Spin count range start:stop:step");
  add_common_flags(figure2_cmd, &figure2_flags, "csv");

  // profile
  auto* profile_cmd = app.add_subcommand(
      "profile", "Gaussian-convolved-with-box model intensity curve");
  int profile_n = 0;
  double profile_p = 0.0;
  std::string profile_q, profile_q_range;
  CommonFlags profile_flags;
  profile_cmd->add_option("--n", profile_n, "Spin count")->required();
  profile_cmd->add_option("--p", profile_p, "Polarization")->required();
  profile_cmd->add_option("--q", profile_q, "Coherence orders, comma separated");
  profile_cmd->add_option("--q-range", profile_q_range, "Coherence order range start:stop:step");
  add_common_flags(profile_cmd, &profile_flags, "csv");

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Maximal coherence-operator rank table");
  std::string rank_n, rank_q, rank_q_range;
  CommonFlags rank_flags;
  rank_cmd->add_option("--n", rank_n, "Spin counts, comma separated")->required();
  rank_cmd->add_option("--q", rank_q, "Coherence orders, comma separated (default 1..N)");
  rank_cmd->add_option("--q-range", rank_q_range, "Coherence order range start:stop:step");
  add_common_flags(rank_cmd, &rank_flags, "csv");

  // snr
  auto* snr_cmd = app.add_subcommand(
      "snr", "Averaged single-shot SNR needed to observe order q");
  std::string snr_n, snr_p, snr_p_range, snr_q, snr_q_range;
  CommonFlags snr_flags;
  snr_cmd->add_option("--n", snr_n, "Spin counts, comma separated")->required();
  snr_cmd->add_option("--p", snr_p, "Polarizations, comma separated");
  snr_cmd->add_option("--p-range", snr_p_range, "Polarization range start:stop:step");
  snr_cmd->add_option("--q", snr_q, "Coherence orders, comma separated");
  snr_cmd->add_option("--q-range", snr_q_range, "Coherence order range start:stop:step");
  add_common_flags(snr_cmd, &snr_flags, "csv");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Dense small-N oracle equivalence and invariant suite");
  int verify_max_n = 6;
  CommonFlags verify_flags;
  verify_cmd->add_option("--max-n", verify_max_n, "Largest spin count to verify (<= 8)")
      ->capture_default_str();
  add_common_flags(verify_cmd, &verify_flags, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bounds_cmd->parsed()) {
      BoundsParams params;
      params.n_values = parse_int_list(bounds_n);
      params.p_values = real_sweep(bounds_p, bounds_p_range, "bounds --p");
      params.q_values = int_sweep(bounds_q, bounds_q_range, "bounds --q");
      params.common = make_common(bounds_flags, command_line);
      return dispatch(params.common, [&](std::ostream& out) { return run_bounds(params, out); });
    }
    if (transition_cmd->parsed()) {
      TransitionParams params;
      params.n_values = parse_int_list(trans_n);
      params.p_values = real_sweep(trans_p, trans_p_range, "transition --p");
      params.common = make_common(trans_flags, command_line);
      return dispatch(params.common,
                      [&](std::ostream& out) { return run_transition(params, out); });
    }
    if (figure2_cmd->parsed()) {
      Figure2Params params;
      params.p = figure2_p;
      params.n_values = int_sweep(figure2_n, figure2_n_range, "figure2 --n");
      params.common = make_common(figure2_flags, command_line);
      return dispatch(params.common,
                      [&](std::ostream& out) { return run_figure2(params, out); });
    }
    if (profile_cmd->parsed()) {
      ProfileParams params;
      params.num_spins = profile_n;
      params.p = profile_p;
      params.q_values = real_sweep(profile_q, profile_q_range, "profile --q");
      params.common = make_common(profile_flags, command_line);
      return dispatch(params.common,
                      [&](std::ostream& out) { return run_profile(params, out); });
    }
    if (rank_cmd->parsed()) {
      RankParams params;
      params.n_values = parse_int_list(rank_n);
      if (!rank_q.empty() || !rank_q_range.empty()) {
        params.q_values = int_sweep(rank_q, rank_q_range, "rank --q");
      }
      params.common = make_common(rank_flags, command_line);
      return dispatch(params.common, [&](std::ostream& out) { return run_rank(params, out); });
    }
    if (snr_cmd->parsed()) {
      SnrParams params;
      params.n_values = parse_int_list(snr_n);
      params.p_values = real_sweep(snr_p, snr_p_range, "snr --p");
      params.q_values = int_sweep(snr_q, snr_q_range, "snr --q");
      params.common = make_common(snr_flags, command_line);
      return dispatch(params.common, [&](std::ostream& out) { return run_snr(params, out); });
    }
    if (verify_cmd->parsed()) {
      VerifyParams params;
      params.max_spins = verify_max_n;
      params.common = make_common(verify_flags, command_line);
      return dispatch(params.common,
                      [&](std::ostream& out) { return run_verify(params, out); });
    }
  } catch (const UsageError& e) {
    std::cerr << "mqcbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mqcbound: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
