#pragma once

#include <optional>
#include <vector>

#include "mqc/big_count.hpp"
#include "mqc/combinatorics.hpp"
#include "mqc/signed_log.hpp"
#include "mqc/spectra.hpp"

namespace mqc {

/// Observable-intensity bounds b^N_q(p) <= m^N_q(p) <= B^N_q(p) at one
/// (N, q, p) point. The log fields stay finite far past double underflow.
struct BoundResult {
  int num_spins = 0;
  int q = 0;
  double p = 0.0;
  BigCount r;  // half the maximal rank, R^N_q / 2
  double lower = 0.0;
  double upper = 0.0;
  double log_lower = 0.0;
  double log_upper = 0.0;
};

/// Evaluates bounds for many q at fixed (N, p); builds the two spectra and
/// the binomial row once. Immutable after construction, safe to share
/// across threads.
class BoundEvaluator {
 public:
  BoundEvaluator(int num_spins, double p);

  int num_spins() const { return num_spins_; }
  double p() const { return p_; }

  BigCount rank(int q) const;
  SignedLog lower(int q) const;
  SignedLog upper(int q) const;
  BoundResult evaluate(int q) const;

 private:
  int num_spins_;
  double p_;
  DegenerateSpectrum pz_;
  DegenerateSpectrum sigma_;
  std::vector<BigCount> row_;
};

BoundResult compute_bounds(int num_spins, int q, double p);
double lower_bound(int num_spins, int q, double p);
double upper_bound(int num_spins, int q, double p);

/// q = 1 closed forms: b = p, B = 2p for every N.
struct ClosedFormQ1 {
  double lower = 0.0;
  double upper = 0.0;
};
ClosedFormQ1 closed_form_q1(int num_spins, double p);

/// b^N_N(p) = 2^{-N} ((1+p)^N - (1-p)^N).
SignedLog closed_form_qn(int num_spins, double p);

/// b^N_{N-1}(p) = (2^{1-N}/N) ((1-p)^{N-1}(1+p-N) - (1+p)^{N-1}(1-p-N)).
SignedLog closed_form_qnm1(int num_spins, double p);

/// Large-N log-domain approximations of both bounds: the tail sums over
/// manifolds j >= ceil(q/2) (the k ~ q/2 selection boundary). Even N only.
struct AsymptoticBounds {
  double log_lower = 0.0;
  double log_upper = 0.0;
};
AsymptoticBounds asymptotic_bounds(int num_spins, int q, double p);

enum class BoundSide { lower, upper };

/// Smallest q whose bound has fallen below half its q = 1 plateau
/// (p for the lower bound, 2p for the upper). Coarse-grid monotonicity
/// check, then bisection; linear scan if the pre-check fails. Empty when
/// the bound never decays below half in [1, N].
std::optional<int> half_decay_order(const BoundEvaluator& eval, BoundSide side);
std::optional<int> half_decay_order(int num_spins, double p, BoundSide side);

/// (half_decay_order(upper) - half_decay_order(lower)) / N, floored at 0.
std::optional<double> transition_width(int num_spins, double p);

struct TransitionReport {
  int num_spins = 0;
  double p = 0.0;
  std::optional<int> q_half_lower;
  std::optional<int> q_half_upper;
  std::optional<double> width;
  double q_c_model = 0.0;  // p * N
  double q_c_cap = 0.0;    // 2p/(1+p^2) * N
};
TransitionReport transition_report(int num_spins, double p);

/// Gaussian(0, (1-p)N) convolved with uniform(-pN, +pN), in CDF-difference
/// form; unnormalized, symmetric in q. p = 1 degenerates to the indicator
/// of |q| <= pN.
double convolution_profile(int num_spins, double p, double q);

/// 2 sqrt(6 N (1-p)), the model's transition-region width.
double model_transition_width(int num_spins, double p);

/// K_obs ~ Np + sqrt(6N(1-p)), the largest observable cluster size.
double observable_cluster_limit(int num_spins, double p);

/// Averaged single-shot SNR needed to see order q: eta ~ exp(q^2/N) for
/// q > Np, flagged eta = 1 inside the observable region.
struct SnrRequirement {
  double eta = 1.0;
  double log_eta = 0.0;
  bool inside_observable = false;
};
SnrRequirement snr_requirement(int num_spins, int q, double p);

/// N ~ 2/(1-p), where b^N_N(p) crosses p/e; +inf at p = 1.
double one_over_e_crossing(double p);

}  // namespace mqc
