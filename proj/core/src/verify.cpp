#include "mqc/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mqc/bounds.hpp"
#include "mqc/combinatorics.hpp"
#include "mqc/oracle.hpp"

namespace mqc {

namespace {

using oracle::DenseOperator;
using oracle::SpinOperators;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t check_id, int n, int q) {
  const std::uint64_t mixed = seed * 0x9E3779B97F4A7C15ULL + check_id * 0x100000001B3ULL +
                              static_cast<std::uint64_t>(n) * 1000003ULL +
                              static_cast<std::uint64_t>(q + 64) * 101ULL;
  return std::mt19937_64(mixed);
}

double max_abs(const DenseOperator& a) { return a.cwiseAbs().maxCoeff(); }

struct Suite {
  std::vector<CheckRecord>& records;

  void add(std::string name, std::string params, double residual, double tol) {
    records.push_back({std::move(name), std::move(params), residual <= tol, residual});
  }
};

std::string nq_params(int n, int q) {
  std::ostringstream os;
  os << "N=" << n << " q=" << q;
  return os.str();
}

std::string nqp_params(int n, int q, double p) {
  std::ostringstream os;
  os << "N=" << n << " q=" << q << " p=" << p;
  return os.str();
}

void check_ladder(Suite& suite, const SpinOperators& ops) {
  const DenseOperator residual =
      ops.i_z * ops.i_plus - ops.i_plus * ops.i_z - ops.i_plus;
  std::ostringstream os;
  os << "N=" << ops.num_spins;
  suite.add("spin_ladder_algebra", os.str(), max_abs(residual), 1e-12);
}

void check_decomposition(Suite& suite, const SpinOperators& ops, std::uint64_t seed) {
  auto rng = make_rng(seed, 1, ops.num_spins, 0);
  double recon_residual = 0.0;
  double commutator_residual = 0.0;
  constexpr int kSamples = 500;
  const int dim = ops.dim();
  for (int s = 0; s < kSamples; ++s) {
    const DenseOperator a = oracle::random_hermitian(rng, dim);
    const auto decomp = oracle::decompose_coherence(ops, a);
    DenseOperator sum = DenseOperator::Zero(dim, dim);
    for (const auto& [q, comp] : decomp.components) {
      sum += comp;
      const DenseOperator comm =
          ops.i_z * comp - comp * ops.i_z - static_cast<double>(q) * comp;
      commutator_residual = std::max(commutator_residual, max_abs(comm));
    }
    recon_residual = std::max(recon_residual, max_abs(sum - a));
  }
  std::ostringstream os;
  os << "N=" << ops.num_spins << " samples=" << kSamples;
  suite.add("coherence_reconstruction", os.str(), recon_residual, 1e-12);
  suite.add("coherence_commutator", os.str(), commutator_residual, 1e-12);
}

void check_projector_fourier(Suite& suite, const SpinOperators& ops, int q,
                             std::uint64_t seed) {
  auto rng = make_rng(seed, 2, ops.num_spins, q);
  double residual = 0.0;
  for (int s = 0; s < 5; ++s) {
    const DenseOperator a = oracle::random_hermitian(rng, ops.dim());
    const DenseOperator direct =
        coherence_project(ops, a, q) + coherence_project(ops, a, -q);
    residual = std::max(residual, max_abs(projector_fourier(ops, a, q) - direct));
  }
  suite.add("projector_fourier_equivalence", nq_params(ops.num_spins, q), residual, 1e-10);
}

void check_ranks(Suite& suite, const SpinOperators& ops, int q, std::uint64_t seed) {
  const int expected = max_rank(ops.num_spins, q).convert_to<int>();
  const DenseOperator zigzag = oracle::zigzag_max_rank_operator(ops, q);
  const int zigzag_rank = oracle::numerical_rank(zigzag);
  {
    std::ostringstream os;
    os << nq_params(ops.num_spins, q) << " rank=" << zigzag_rank
       << " expected=" << expected;
    suite.add("zigzag_rank", os.str(), std::abs(zigzag_rank - expected), 0.5);
  }

  auto rng = make_rng(seed, 3, ops.num_spins, q);
  constexpr int kSamples = 1000;
  int worst_excess = 0;
  double pairing_residual = 0.0;
  double rotation_residual = 0.0;
  const DenseOperator rot = ops.r_z(std::numbers::pi / q);
  for (int s = 0; s < kSamples; ++s) {
    const DenseOperator op = oracle::random_coherence_operator(ops, q, rng);
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(op, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd vals = solver.eigenvalues();  // ascending
    const double top = vals.cwiseAbs().maxCoeff();
    if (top > 0.0) {
      const int rank = static_cast<int>((vals.cwiseAbs().array() > 1e-10 * top).count());
      worst_excess = std::max(worst_excess, rank - expected);
      // Eigenvalues of a +-q coherence operator come in +- pairs.
      const Eigen::Index d = vals.size();
      for (Eigen::Index i = 0; i < d / 2; ++i) {
        pairing_residual =
            std::max(pairing_residual, std::abs(vals(i) + vals(d - 1 - i)) / top);
      }
    }
    if (s < 25) {
      rotation_residual =
          std::max(rotation_residual, max_abs(rot * op * rot.adjoint() + op));
    }
  }
  std::ostringstream os;
  os << nq_params(ops.num_spins, q) << " samples=" << kSamples;
  suite.add("random_rank_bound", os.str(), worst_excess, 0.5);
  suite.add("spectral_pairing", os.str(), pairing_residual, 1e-10);
  suite.add("rotational_antisymmetry", nq_params(ops.num_spins, q), rotation_residual,
            1e-10);
}

void check_alignment(Suite& suite, int dim, std::uint64_t seed, const char* label) {
  auto rng = make_rng(seed, 4, dim, 0);
  const DenseOperator a = oracle::random_hermitian(rng, dim);
  const DenseOperator b = oracle::random_hermitian(rng, dim);
  const auto overlap = oracle::max_overlap(a, b);

  const double realized =
      (b * overlap.unitary * a * overlap.unitary.adjoint()).trace().real();
  std::ostringstream os;
  os << label << " dim=" << dim;
  suite.add("alignment_trace_identity", os.str(), std::abs(realized - overlap.value),
            1e-10);

  double worst = 0.0;
  constexpr int kUnitaries = 1000;
  for (int s = 0; s < kUnitaries; ++s) {
    const DenseOperator v = oracle::haar_unitary(rng, dim);
    const double value = (b * v * a * v.adjoint()).trace().real();
    worst = std::max(worst, value - overlap.value);
  }
  std::ostringstream os2;
  os2 << label << " dim=" << dim << " unitaries=" << kUnitaries;
  suite.add("alignment_dominance", os2.str(), std::max(0.0, worst), 1e-10);
}

void check_achievability(Suite& suite, const SpinOperators& ops, double p) {
  BoundEvaluator eval(ops.num_spins, p);
  for (int q = 1; q <= ops.num_spins; ++q) {
    const auto achieved = oracle::achievable_signal(ops, q, p);
    const double expected = eval.lower(q).to_double();
    suite.add("achievable_equals_lower", nqp_params(ops.num_spins, q, p),
              std::abs(achieved.value - expected), 1e-9);
  }
}

void check_phase_cycle(Suite& suite, const SpinOperators& ops, double p,
                       std::uint64_t seed) {
  BoundEvaluator eval(ops.num_spins, p);
  const int dim = ops.dim();
  for (int q = 1; q <= ops.num_spins; ++q) {
    auto rng = make_rng(seed, 5, ops.num_spins, q);
    const double upper = eval.upper(q).to_double();
    double equivalence_residual = 0.0;
    double overshoot = 0.0;
    double cap_overshoot = 0.0;
    constexpr int kPairs = 200;
    for (int s = 0; s < kPairs; ++s) {
      const DenseOperator u = oracle::haar_unitary(rng, dim);
      const DenseOperator v = oracle::haar_unitary(rng, dim);
      const double signal = oracle::phase_cycle_experiment(ops, q, p, u, v);
      if (s < 10) {
        const double projected = oracle::projected_signal(ops, q, p, u, v);
        equivalence_residual = std::max(equivalence_residual, std::abs(signal - projected));
      }
      overshoot = std::max(overshoot, signal - upper);
      cap_overshoot = std::max(cap_overshoot, std::abs(signal) - 2.0 * p);
    }
    std::ostringstream os;
    os << nqp_params(ops.num_spins, q, p) << " pairs=" << kPairs;
    suite.add("phase_cycle_projection_equivalence", nqp_params(ops.num_spins, q, p),
              equivalence_residual, 1e-10);
    suite.add("phase_cycle_below_upper", os.str(), std::max(0.0, overshoot), 1e-9);
    suite.add("phase_cycle_trivial_cap", os.str(), std::max(0.0, cap_overshoot), 1e-9);
  }
}

}  // namespace

VerifyReport run_verification(int max_spins, std::uint64_t seed) {
  if (max_spins < 1 || max_spins > 8) {
    throw std::domain_error("run_verification: max_spins must satisfy 1 <= max_n <= 8");
  }
  VerifyReport report;
  report.max_spins = max_spins;
  report.seed = seed;
  Suite suite{report.checks};

  for (int n = 1; n <= max_spins; ++n) {
    const SpinOperators ops = oracle::build_spin_operators(n);
    check_ladder(suite, ops);
    check_decomposition(suite, ops, seed);
    for (int q = 0; q <= n; ++q) check_projector_fourier(suite, ops, q, seed);
    for (int q = 1; q <= n; ++q) check_ranks(suite, ops, q, seed);
    check_alignment(suite, ops.dim(), seed, "spin-register");

    if (n <= 4) {
      for (const double p : {0.25, 0.5, 0.75, 1.0}) {
        check_achievability(suite, ops, p);
        check_phase_cycle(suite, ops, p, seed);
      }
    }
  }
  check_alignment(suite, 16, seed + 1, "reference");

  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              return std::tie(a.name, a.params) < std::tie(b.name, b.params);
            });
  report.overall_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                    [](const CheckRecord& r) { return r.pass; });
  return report;
}

}  // namespace mqc
