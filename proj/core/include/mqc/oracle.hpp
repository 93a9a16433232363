#pragma once

#include <Eigen/Dense>

#include <map>
#include <random>
#include <utility>
#include <vector>

namespace mqc::oracle {

/// Explicit 2^N x 2^N operator in the computational bitstring basis
/// (spin-up = bit set, I_z eigenvalue = popcount - N/2).
using DenseOperator = Eigen::MatrixXcd;

struct SpinOperators {
  int num_spins = 0;
  Eigen::VectorXd magnetic_numbers;  // I_z eigenvalue per basis state
  DenseOperator i_z;
  DenseOperator i_plus;
  DenseOperator i_minus;
  DenseOperator p_z;  // (2/N) I_z

  int dim() const { return 1 << num_spins; }
  DenseOperator r_z(double phi) const;    // exp(-i phi I_z), diagonal
  DenseOperator r_x(double theta) const;  // exp(-i theta I_x)
};

/// 1 <= N <= 8; larger N is a resource guard error.
SpinOperators build_spin_operators(int num_spins);

/// Diagonal sigma_p = (1/2 + p I_z)^{tensor N}.
DenseOperator sigma_dense(const SpinOperators& ops, double p);

/// Coherence-order filter: keeps entries (i, j) with m_i - m_j = q.
DenseOperator coherence_project(const SpinOperators& ops, const DenseOperator& a, int q);

struct CoherenceDecomposition {
  std::map<int, DenseOperator> components;  // q in [-N, N]
};

/// Splits A into coherence components; they sum back to A exactly and each
/// satisfies [I_z, A_q] = q A_q.
CoherenceDecomposition decompose_coherence(const SpinOperators& ops, const DenseOperator& a);

/// P_{+-q} as the phase-cycling Fourier sum
///   (2/(2N+1)) sum_k cos(2 pi k q/(2N+1)) R_z(phi_k) A R_z(-phi_k),
/// phi_k = 2 pi k/(2N+1). Equals coherence_project(A, q) + coherence_project(A, -q).
DenseOperator projector_fourier(const SpinOperators& ops, const DenseOperator& a, int q);

/// Matched basis-state pairs (lower manifold, upper manifold) of the
/// maximum-rank construction: Zeeman chains M = jq + k, identity entries
/// covering the smaller zigzag side. R^N_q / 2 pairs in total.
std::vector<std::pair<int, int>> zigzag_pairs(int num_spins, int q);

/// Hermitian operator of pure coherence order +-q whose rank is R^N_q;
/// eigenvalues come in +- pairs.
DenseOperator zigzag_max_rank_operator(const SpinOperators& ops, int q);

/// Rank by Hermitian eigenvalues above rel_tol * max |eigenvalue|.
int numerical_rank(const DenseOperator& a, double rel_tol = 1e-10);

/// max over unitaries of Tr(B U A U^dag) = sorted-eigenvalue dot product,
/// with the aligning unitary realizing it.
struct OverlapResult {
  double value = 0.0;
  DenseOperator unitary;
};
OverlapResult max_overlap(const DenseOperator& a, const DenseOperator& b);

/// Constructive realization of the lower bound: weighted zigzag target,
/// alignment of sigma_p onto it, projection onto +-q, alignment of the
/// result onto P_z. Equals lower_bound(N, q, p). N <= 6.
struct AchievableSignal {
  double value = 0.0;
  bool degenerate = false;  // p = 0: zero projection, nothing to align
};
AchievableSignal achievable_signal(const SpinOperators& ops, int q, double p);

/// The 2N+1 scan protocol: I^N_q = (2/(2N+1)) sum_k cos(2 pi k q/(2N+1))
/// Tr{P_z V R_z(phi_k) U sigma_p U^dag R_z(-phi_k) V^dag}. N <= 6, U and V
/// unitary.
double phase_cycle_experiment(const SpinOperators& ops, int q, double p,
                              const DenseOperator& u, const DenseOperator& v);

/// Projection form Tr{P_z V P_{+-q}(U sigma_p U^dag) V^dag} of the same signal.
double projected_signal(const SpinOperators& ops, int q, double p,
                        const DenseOperator& u, const DenseOperator& v);

DenseOperator random_hermitian(std::mt19937_64& rng, int dim);
DenseOperator haar_unitary(std::mt19937_64& rng, int dim);

/// Gaussian-random Hermitian filtered to coherence orders +-q.
DenseOperator random_coherence_operator(const SpinOperators& ops, int q,
                                        std::mt19937_64& rng);

}  // namespace mqc::oracle
