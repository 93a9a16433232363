#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mqc {

struct CheckRecord {
  std::string name;
  std::string params;
  bool pass = false;
  double max_residual = 0.0;
};

struct VerifyReport {
  int max_spins = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;  // sorted by (name, params)
  bool overall_pass = false;
};

/// Runs the full dense-oracle invariant suite up to max_spins (<= 8):
/// ladder algebra, coherence reconstruction and commutator law, Fourier vs
/// direct projector, zigzag and random-operator ranks, spectral +- pairing,
/// rotational antisymmetry, alignment dominance, achievability of the lower
/// bound, and phase-cycle signals against the upper bound and the 2p cap.
VerifyReport run_verification(int max_spins, std::uint64_t seed);

}  // namespace mqc
