#pragma once

#include <vector>

#include "mqc/big_count.hpp"
#include "mqc/signed_log.hpp"

namespace mqc {

/// One degenerate eigenvalue block: magnetic quantum number n (stored as 2n
/// to stay exact for odd N), eigenvalue, multiplicity g_n.
struct SpectrumBlock {
  int twice_n = 0;
  SignedLog value;
  BigCount mult;

  double n() const { return twice_n / 2.0; }
};

/// Degeneracy-compressed spectrum of a collective operator: N+1 blocks
/// sorted ascending by eigenvalue, multiplicities summing to 2^N. Selection
/// and accumulation never enumerate individual eigenvalues, so N = 10^4
/// costs O(N) block operations.
struct DegenerateSpectrum {
  int num_spins = 0;
  std::vector<SpectrumBlock> blocks;

  BigCount total_multiplicity() const;
};

/// Spectrum of sigma_p = (1/2 + p I_z)^{tensor N}: block n has eigenvalue
/// (1+p)^{N/2+n} (1-p)^{N/2-n} / 2^N with multiplicity g_n, strictly
/// increasing in n for 0 < p < 1. p = 1 leaves a single nonzero block
/// (n = N/2, value 1); all-zero blocks carry sign 0, never log(0).
DegenerateSpectrum sigma_spectrum(int num_spins, double p);

/// Spectrum of P_z = (2/N) sum_j I_jz: block n has eigenvalue 2n/N,
/// multiplicity g_n; symmetric about zero, extremes exactly +-1.
DegenerateSpectrum pz_spectrum(int num_spins);

struct TakenBlock {
  int twice_n = 0;
  SignedLog value;
  BigCount count;  // <= block multiplicity
};

/// The first r eigenvalues from the top and from the bottom of a spectrum.
/// At most one partially taken block per side.
struct ExtremeSelection {
  BigCount r;
  std::vector<TakenBlock> top_blocks;     // descending eigenvalue order
  std::vector<TakenBlock> bottom_blocks;  // ascending eigenvalue order
};

/// Greedy cumulative-multiplicity walk; 1 <= r <= 2^N.
ExtremeSelection select_extremes(const DegenerateSpectrum& spec, const BigCount& r);

/// || Lambda_up_r(A) - Lambda_down_r(A) ||_2: the 2-norm of elementwise
/// differences between the descending-first-r and ascending-first-r
/// eigenvalue vectors, accumulated in the log domain. Sign +1, or 0 when
/// every difference vanishes.
SignedLog paired_diff_norm(const DegenerateSpectrum& spec, const BigCount& r);

/// Lambda_up_r(A).Lambda_up_r(B) + Lambda_down_r(A).Lambda_down_r(B):
/// bottom-r pairing plus top-r pairing of co-sorted spectra sharing N.
SignedLog aligned_dot(const DegenerateSpectrum& a, const DegenerateSpectrum& b,
                      const BigCount& r);

}  // namespace mqc
