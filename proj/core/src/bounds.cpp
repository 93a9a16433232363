#include "mqc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mqc {

namespace {

void validate_nqp(int num_spins, int q, double p) {
  if (num_spins < 1) throw std::domain_error("bounds: N must be positive");
  if (q < 1 || q > num_spins) throw std::domain_error("bounds: q must satisfy 1 <= q <= N");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("bounds: p must lie in [0, 1]");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

BoundEvaluator::BoundEvaluator(int num_spins, double p)
    : num_spins_(num_spins),
      p_(p),
      pz_(pz_spectrum(num_spins)),
      sigma_(sigma_spectrum(num_spins, p)),
      row_(binomial_row(num_spins)) {}

BigCount BoundEvaluator::rank(int q) const {
  return max_rank_from_row(row_, num_spins_, q);
}

namespace {

SignedLog lower_for_rank(const DegenerateSpectrum& pz, const DegenerateSpectrum& sigma,
                         const BigCount& full_rank) {
  return aligned_dot(pz, sigma, full_rank / 2);
}

// The alignment bound pairs the full maximal rank R^N_q of eigenvalues in
// each factor; at q = 1 this makes the product term >= 2p for every N, so
// the min reproduces B^N_1(p) = 2p exactly.
SignedLog upper_for_rank(const DegenerateSpectrum& pz, const DegenerateSpectrum& sigma,
                         const BigCount& full_rank, double p) {
  const SignedLog product =
      paired_diff_norm(pz, full_rank) * paired_diff_norm(sigma, full_rank);
  const SignedLog m_term = product.ldexp2(-1);
  const SignedLog cap = SignedLog::from_value(2.0 * p);
  return value_less(m_term, cap) ? m_term : cap;
}

}  // namespace

SignedLog BoundEvaluator::lower(int q) const {
  validate_nqp(num_spins_, q, p_);
  return lower_for_rank(pz_, sigma_, rank(q));
}

SignedLog BoundEvaluator::upper(int q) const {
  validate_nqp(num_spins_, q, p_);
  return upper_for_rank(pz_, sigma_, rank(q), p_);
}

BoundResult BoundEvaluator::evaluate(int q) const {
  validate_nqp(num_spins_, q, p_);
  const BigCount full_rank = rank(q);
  BoundResult result;
  result.num_spins = num_spins_;
  result.q = q;
  result.p = p_;
  result.r = full_rank / 2;
  const SignedLog lo = lower_for_rank(pz_, sigma_, full_rank);
  const SignedLog hi = upper_for_rank(pz_, sigma_, full_rank, p_);
  result.lower = lo.to_double();
  result.upper = hi.to_double();
  result.log_lower = lo.log_mag();
  result.log_upper = hi.log_mag();
  return result;
}

BoundResult compute_bounds(int num_spins, int q, double p) {
  return BoundEvaluator(num_spins, p).evaluate(q);
}

double lower_bound(int num_spins, int q, double p) {
  return BoundEvaluator(num_spins, p).lower(q).to_double();
}

double upper_bound(int num_spins, int q, double p) {
  return BoundEvaluator(num_spins, p).upper(q).to_double();
}

ClosedFormQ1 closed_form_q1(int num_spins, double p) {
  validate_nqp(num_spins, 1, p);
  return {p, 2.0 * p};
}

SignedLog closed_form_qn(int num_spins, double p) {
  validate_nqp(num_spins, num_spins, p);
  const SignedLog plus = pow_nonneg((1.0 + p) / 2.0, num_spins);
  const SignedLog minus = pow_nonneg((1.0 - p) / 2.0, num_spins);
  return plus - minus;
}

SignedLog closed_form_qnm1(int num_spins, double p) {
  if (num_spins < 2) throw std::domain_error("closed_form_qnm1: N must be at least 2");
  validate_nqp(num_spins, num_spins - 1, p);
  const int n = num_spins;
  const SignedLog term_a =
      pow_nonneg(1.0 - p, n - 1) * SignedLog::from_value(1.0 + p - n);
  const SignedLog term_b =
      pow_nonneg(1.0 + p, n - 1) * SignedLog::from_value(1.0 - p - n);
  const SignedLog scale =
      SignedLog::from_log((1 - n) * std::numbers::ln2 - std::log(static_cast<double>(n)));
  return (term_a - term_b) * scale;
}

AsymptoticBounds asymptotic_bounds(int num_spins, int q, double p) {
  if (num_spins % 2 != 0) {
    throw std::domain_error("asymptotic_bounds: derived for even N only");
  }
  validate_nqp(num_spins, q, p);
  const auto row = binomial_row(num_spins);
  const int half = num_spins / 2;
  const int k = (q + 1) / 2;

  // Tail sums over manifolds j >= k ~ q/2, the selection boundary implied by
  // ln r ~ ln g_{q/2}. All three accumulate in the log domain.
  SignedLog lower_sum = SignedLog::zero();
  SignedLog sigma_norm_sq = SignedLog::zero();
  SignedLog oz_norm_sq = SignedLog::zero();
  const double log_up = std::log((1.0 + p) / 2.0);
  const double log_down = std::log((1.0 - p) / 2.0);
  for (int j = k; j <= half; ++j) {
    const SignedLog g = SignedLog::from_big(row[static_cast<std::size_t>(half + j)]);
    SignedLog sig_plus;
    SignedLog sig_minus;
    if (p == 1.0) {
      sig_plus = j == half ? SignedLog::one() : SignedLog::zero();
      sig_minus = SignedLog::zero();
    } else {
      sig_plus = SignedLog::from_log((half + j) * log_up + (half - j) * log_down);
      sig_minus = SignedLog::from_log((half - j) * log_up + (half + j) * log_down);
    }
    const SignedLog oz = SignedLog::from_value(2.0 * j / num_spins);
    lower_sum = lower_sum + g * (sig_plus * oz + sig_minus * (-oz));
    const SignedLog half_weight = g.ldexp2(-1);
    sigma_norm_sq = sigma_norm_sq + half_weight * (sig_plus - sig_minus).squared();
    oz_norm_sq = oz_norm_sq + half_weight * (oz - (-oz)).squared();
  }

  AsymptoticBounds result;
  result.log_lower = lower_sum.log_mag();
  const double log_cap = p == 0.0 ? -std::numeric_limits<double>::infinity()
                                  : std::log(2.0 * p);
  const double log_m = 0.5 * sigma_norm_sq.log_mag() + 0.5 * oz_norm_sq.log_mag();
  result.log_upper = std::min(log_cap, log_m);
  return result;
}

namespace {

double log_bound(const BoundEvaluator& eval, BoundSide side, int q) {
  return side == BoundSide::lower ? eval.lower(q).log_mag() : eval.upper(q).log_mag();
}

std::optional<int> linear_scan(const BoundEvaluator& eval, BoundSide side, double target) {
  for (int q = 1; q <= eval.num_spins(); ++q) {
    if (log_bound(eval, side, q) < target) return q;
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> half_decay_order(const BoundEvaluator& eval, BoundSide side) {
  const double p = eval.p();
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("half_decay_order: p must lie strictly in (0, 1)");
  }
  const int n = eval.num_spins();
  const double plateau = side == BoundSide::lower ? std::log(p) : std::log(2.0 * p);
  const double target = plateau - std::numbers::ln2;

  // Coarse grid: confirm the decay is monotone for this (N, p), then bisect
  // for the smallest q below half plateau. Monotonicity is an empirical
  // property of these bounds, so a failed pre-check falls back to scanning.
  const int grid_points = std::min(n, 33);
  std::vector<int> grid(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        1 + static_cast<int>(std::llround(static_cast<double>(i) * (n - 1) /
                                          std::max(1, grid_points - 1)));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> values;
  values.reserve(grid.size());
  for (int q : grid) values.push_back(log_bound(eval, side, q));

  constexpr double kMonotoneSlack = 1e-9;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + kMonotoneSlack) return linear_scan(eval, side, target);
  }

  std::size_t first_below = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < target) {
      first_below = i;
      break;
    }
  }
  if (first_below == values.size()) return std::nullopt;
  if (first_below == 0) return grid.front();  // q = 1 already below (cannot happen)

  int lo = grid[first_below - 1];  // bound(lo) >= target
  int hi = grid[first_below];      // bound(hi) < target
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (log_bound(eval, side, mid) < target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::optional<int> half_decay_order(int num_spins, double p, BoundSide side) {
  return half_decay_order(BoundEvaluator(num_spins, p), side);
}

std::optional<double> transition_width(int num_spins, double p) {
  const BoundEvaluator eval(num_spins, p);
  const auto lower = half_decay_order(eval, BoundSide::lower);
  const auto upper = half_decay_order(eval, BoundSide::upper);
  if (!lower || !upper) return std::nullopt;
  const double width = static_cast<double>(*upper - *lower) / num_spins;
  return std::max(0.0, width);
}

TransitionReport transition_report(int num_spins, double p) {
  TransitionReport report;
  report.num_spins = num_spins;
  report.p = p;
  const BoundEvaluator eval(num_spins, p);
  report.q_half_lower = half_decay_order(eval, BoundSide::lower);
  report.q_half_upper = half_decay_order(eval, BoundSide::upper);
  if (report.q_half_lower && report.q_half_upper) {
    report.width = std::max(
        0.0, static_cast<double>(*report.q_half_upper - *report.q_half_lower) / num_spins);
  }
  report.q_c_model = p * num_spins;
  report.q_c_cap = 2.0 * p / (1.0 + p * p) * num_spins;
  return report;
}

double convolution_profile(int num_spins, double p, double q) {
  if (num_spins < 1) throw std::domain_error("convolution_profile: N must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("convolution_profile: p must lie in [0, 1]");
  }
  const double box = p * num_spins;
  if (p == 1.0) return std::abs(q) <= box ? 1.0 : 0.0;
  const double sigma = std::sqrt((1.0 - p) * num_spins);
  return normal_cdf((box - q) / sigma) - normal_cdf((-box - q) / sigma);
}

double model_transition_width(int num_spins, double p) {
  return 2.0 * std::sqrt(6.0 * num_spins * (1.0 - p));
}

double observable_cluster_limit(int num_spins, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("observable_cluster_limit: p must lie in [0, 1]");
  }
  return num_spins * p + std::sqrt(6.0 * num_spins * (1.0 - p));
}

SnrRequirement snr_requirement(int num_spins, int q, double p) {
  validate_nqp(num_spins, q, p);
  SnrRequirement req;
  if (q <= num_spins * p) {
    req.inside_observable = true;
    return req;
  }
  req.log_eta = static_cast<double>(q) * q / num_spins;
  req.eta = std::exp(req.log_eta);
  return req;
}

double one_over_e_crossing(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error("one_over_e_crossing: p must lie in (0, 1]");
  }
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 / (1.0 - p);
}

}  // namespace mqc
