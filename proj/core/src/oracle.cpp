#include "mqc/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mqc::oracle {

namespace {

using Complex = std::complex<double>;
constexpr Complex kImag(0.0, 1.0);

void check_hermitian(const DenseOperator& a, const char* what) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::domain_error(std::string(what) + ": operator is not Hermitian");
  }
}

void check_unitary(const DenseOperator& u, const char* what) {
  const DenseOperator residual =
      u * u.adjoint() - DenseOperator::Identity(u.rows(), u.cols());
  if (residual.cwiseAbs().maxCoeff() > 1e-12) {
    throw std::domain_error(std::string(what) + ": operator is not unitary");
  }
}

// Basis states grouped by popcount, ascending within each group.
std::vector<std::vector<int>> states_by_level(int num_spins) {
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(num_spins) + 1);
  const int dim = 1 << num_spins;
  for (int b = 0; b < dim; ++b) {
    levels[static_cast<std::size_t>(std::popcount(static_cast<unsigned>(b)))].push_back(b);
  }
  return levels;
}

}  // namespace

DenseOperator SpinOperators::r_z(double phi) const {
  const int d = dim();
  DenseOperator rot = DenseOperator::Zero(d, d);
  for (int b = 0; b < d; ++b) {
    rot(b, b) = std::exp(-kImag * phi * magnetic_numbers(b));
  }
  return rot;
}

DenseOperator SpinOperators::r_x(double theta) const {
  const DenseOperator i_x = 0.5 * (i_plus + i_minus);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(i_x);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    phases(i) = std::exp(-kImag * theta * vals(i));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

SpinOperators build_spin_operators(int num_spins) {
  if (num_spins < 1 || num_spins > 8) {
    throw std::domain_error("build_spin_operators: dense oracle is limited to 1 <= N <= 8");
  }
  SpinOperators ops;
  ops.num_spins = num_spins;
  const int dim = 1 << num_spins;
  ops.magnetic_numbers.resize(dim);
  ops.i_z = DenseOperator::Zero(dim, dim);
  ops.i_plus = DenseOperator::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const double m = std::popcount(static_cast<unsigned>(b)) - num_spins / 2.0;
    ops.magnetic_numbers(b) = m;
    ops.i_z(b, b) = m;
    for (int j = 0; j < num_spins; ++j) {
      if ((b & (1 << j)) == 0) ops.i_plus(b | (1 << j), b) += 1.0;
    }
  }
  ops.i_minus = ops.i_plus.adjoint();
  ops.p_z = (2.0 / num_spins) * ops.i_z;
  return ops;
}

DenseOperator sigma_dense(const SpinOperators& ops, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sigma_dense: p must lie in [0, 1]");
  const int dim = ops.dim();
  DenseOperator sigma = DenseOperator::Zero(dim, dim);
  const double up = (1.0 + p) / 2.0;
  const double down = (1.0 - p) / 2.0;
  for (int b = 0; b < dim; ++b) {
    const int pop = std::popcount(static_cast<unsigned>(b));
    sigma(b, b) = std::pow(up, pop) * std::pow(down, ops.num_spins - pop);
  }
  return sigma;
}

DenseOperator coherence_project(const SpinOperators& ops, const DenseOperator& a, int q) {
  const int dim = ops.dim();
  DenseOperator out = DenseOperator::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const int diff = static_cast<int>(std::lround(ops.magnetic_numbers(i) -
                                                    ops.magnetic_numbers(j)));
      if (diff == q) out(i, j) = a(i, j);
    }
  }
  return out;
}

CoherenceDecomposition decompose_coherence(const SpinOperators& ops, const DenseOperator& a) {
  CoherenceDecomposition decomp;
  for (int q = -ops.num_spins; q <= ops.num_spins; ++q) {
    decomp.components[q] = coherence_project(ops, a, q);
  }
  return decomp;
}

DenseOperator projector_fourier(const SpinOperators& ops, const DenseOperator& a, int q) {
  if (std::abs(q) > ops.num_spins) {
    throw std::domain_error("projector_fourier: |q| must not exceed N");
  }
  const int scans = 2 * ops.num_spins + 1;
  const int dim = ops.dim();
  DenseOperator sum = DenseOperator::Zero(dim, dim);
  for (int k = 0; k < scans; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / scans;
    const double weight = std::cos(2.0 * std::numbers::pi * k * q / scans);
    const DenseOperator rot = ops.r_z(phi);
    sum += weight * (rot * a * rot.adjoint());
  }
  return (2.0 / scans) * sum;
}

std::vector<std::pair<int, int>> zigzag_pairs(int num_spins, int q) {
  if (num_spins < 1 || num_spins > 8) {
    throw std::domain_error("zigzag_pairs: dense oracle is limited to 1 <= N <= 8");
  }
  if (q < 1 || q > num_spins) {
    throw std::domain_error("zigzag_pairs: q must satisfy 1 <= q <= N");
  }
  const auto levels = states_by_level(num_spins);
  std::vector<std::pair<int, int>> pairs;
  // Walk each Zeeman chain (levels congruent mod q) upward, matching states
  // of the current manifold against unmatched states of the previous one.
  // Leftovers two manifolds back can never be reached again.
  for (int residue = 0; residue < q; ++residue) {
    std::vector<int> carry;
    for (int level = residue; level <= num_spins; level += q) {
      const auto& current = levels[static_cast<std::size_t>(level)];
      const std::size_t matched = std::min(carry.size(), current.size());
      for (std::size_t i = 0; i < matched; ++i) {
        pairs.emplace_back(carry[i], current[i]);
      }
      carry.assign(current.begin() + static_cast<std::ptrdiff_t>(matched), current.end());
    }
  }
  return pairs;
}

DenseOperator zigzag_max_rank_operator(const SpinOperators& ops, int q) {
  const int dim = ops.dim();
  DenseOperator op = DenseOperator::Zero(dim, dim);
  for (const auto& [low, high] : zigzag_pairs(ops.num_spins, q)) {
    op(high, low) = 1.0;
    op(low, high) = 1.0;
  }
  return op;
}

int numerical_rank(const DenseOperator& a, double rel_tol) {
  check_hermitian(a, "numerical_rank");
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd mags = solver.eigenvalues().cwiseAbs();
  const double top = mags.maxCoeff();
  if (top == 0.0) return 0;
  return static_cast<int>((mags.array() > rel_tol * top).count());
}

OverlapResult max_overlap(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::domain_error("max_overlap: dimension mismatch");
  }
  check_hermitian(a, "max_overlap");
  check_hermitian(b, "max_overlap");
  Eigen::SelfAdjointEigenSolver<DenseOperator> sa(a);
  Eigen::SelfAdjointEigenSolver<DenseOperator> sb(b);
  OverlapResult result;
  result.value = sa.eigenvalues().dot(sb.eigenvalues());
  // Maps the sorted eigenbasis of A onto that of B, so U A U^dag is diagonal
  // in B's eigenbasis with aligned eigenvalue order.
  result.unitary = sb.eigenvectors() * sa.eigenvectors().adjoint();
  return result;
}

AchievableSignal achievable_signal(const SpinOperators& ops, int q, double p) {
  if (ops.num_spins > 6) {
    throw std::domain_error("achievable_signal: limited to N <= 6");
  }
  if (q < 1 || q > ops.num_spins) {
    throw std::domain_error("achievable_signal: q must satisfy 1 <= q <= N");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("achievable_signal: p must lie in [0, 1]");
  }
  if (p == 0.0) return {0.0, true};

  const int dim = ops.dim();
  const DenseOperator sigma = sigma_dense(ops, p);

  // Weighted zigzag target: weights proportional to the paired differences
  // of sigma's sorted spectrum saturate the alignment inequality.
  Eigen::VectorXd sigma_sorted(dim);
  for (int b = 0; b < dim; ++b) sigma_sorted(b) = sigma(b, b).real();
  std::sort(sigma_sorted.data(), sigma_sorted.data() + dim);

  const auto pairs = zigzag_pairs(ops.num_spins, q);
  const int r = static_cast<int>(pairs.size());
  Eigen::VectorXd weights(r);
  for (int i = 0; i < r; ++i) {
    weights(i) = sigma_sorted(dim - 1 - i) - sigma_sorted(i);
  }
  const double norm = std::sqrt(2.0 * weights.squaredNorm());
  if (norm == 0.0) return {0.0, true};
  weights /= norm;

  DenseOperator target = DenseOperator::Zero(dim, dim);
  for (int i = 0; i < r; ++i) {
    target(pairs[static_cast<std::size_t>(i)].second,
           pairs[static_cast<std::size_t>(i)].first) = weights(i);
    target(pairs[static_cast<std::size_t>(i)].first,
           pairs[static_cast<std::size_t>(i)].second) = weights(i);
  }

  const DenseOperator u_p = max_overlap(sigma, target).unitary;
  const DenseOperator excited = u_p * sigma * u_p.adjoint();
  const DenseOperator projected =
      coherence_project(ops, excited, q) + coherence_project(ops, excited, -q);
  const double projected_norm = projected.norm();
  if (projected_norm < 1e-300) return {0.0, true};

  const DenseOperator x_p = projected / projected_norm;
  const DenseOperator v = max_overlap(x_p, ops.p_z).unitary;
  const double signal = (ops.p_z * v * projected * v.adjoint()).trace().real();
  return {signal, false};
}

double phase_cycle_experiment(const SpinOperators& ops, int q, double p,
                              const DenseOperator& u, const DenseOperator& v) {
  if (ops.num_spins > 6) {
    throw std::domain_error("phase_cycle_experiment: limited to N <= 6");
  }
  if (std::abs(q) > ops.num_spins) {
    throw std::domain_error("phase_cycle_experiment: |q| must not exceed N");
  }
  check_unitary(u, "phase_cycle_experiment U");
  check_unitary(v, "phase_cycle_experiment V");
  const DenseOperator state = u * sigma_dense(ops, p) * u.adjoint();
  const int scans = 2 * ops.num_spins + 1;
  double signal = 0.0;
  for (int k = 0; k < scans; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / scans;
    const DenseOperator rot = ops.r_z(phi);
    const DenseOperator encoded = v * rot * state * rot.adjoint() * v.adjoint();
    signal += std::cos(2.0 * std::numbers::pi * k * q / scans) *
              (ops.p_z * encoded).trace().real();
  }
  // Real Fourier transform: the DC channel is halved, so q = 0 reports
  // Tr(P_z sigma_p) rather than twice it.
  const double dc = q == 0 ? 0.5 : 1.0;
  return dc * 2.0 / scans * signal;
}

double projected_signal(const SpinOperators& ops, int q, double p,
                        const DenseOperator& u, const DenseOperator& v) {
  check_unitary(u, "projected_signal U");
  check_unitary(v, "projected_signal V");
  const DenseOperator state = u * sigma_dense(ops, p) * u.adjoint();
  const DenseOperator projected = projector_fourier(ops, state, q);
  const double dc = q == 0 ? 0.5 : 1.0;
  return dc * (ops.p_z * v * projected * v.adjoint()).trace().real();
}

DenseOperator random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseOperator g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return 0.5 * (g + g.adjoint());
}

DenseOperator haar_unitary(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseOperator g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<DenseOperator> qr(g);
  DenseOperator q_mat = qr.householderQ();
  const DenseOperator r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const Complex d = r_mat(i, i);
    q_mat.col(i) *= d / std::abs(d);
  }
  return q_mat;
}

DenseOperator random_coherence_operator(const SpinOperators& ops, int q,
                                        std::mt19937_64& rng) {
  const DenseOperator h = random_hermitian(rng, ops.dim());
  const DenseOperator filtered =
      coherence_project(ops, h, q) + coherence_project(ops, h, -q);
  return 0.5 * (filtered + filtered.adjoint());
}

}  // namespace mqc::oracle
