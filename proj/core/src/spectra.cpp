#include "mqc/spectra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mqc/combinatorics.hpp"

namespace mqc {

namespace {

// Yields (top value, bottom value, shared count) for the index pairing of
// the descending-first-r against the ascending-first-r eigenvalue vectors.
template <typename Fn>
void for_each_mirror_pair(const DegenerateSpectrum& spec, const BigCount& r, Fn&& fn) {
  const auto& blocks = spec.blocks;
  std::size_t bottom = 0;
  std::size_t top = blocks.size();  // one past; walks downward
  BigCount bottom_used(0);
  BigCount top_used(0);
  BigCount remaining = r;
  while (remaining > 0) {
    if (bottom >= blocks.size() || top == 0) {
      throw std::domain_error("select walk exhausted the spectrum before r");
    }
    const SpectrumBlock& lo = blocks[bottom];
    const SpectrumBlock& hi = blocks[top - 1];
    BigCount take = lo.mult - bottom_used;
    const BigCount hi_left = hi.mult - top_used;
    if (hi_left < take) take = hi_left;
    if (remaining < take) take = remaining;
    fn(hi.value, lo.value, take);
    bottom_used += take;
    top_used += take;
    remaining -= take;
    if (bottom_used == lo.mult) {
      ++bottom;
      bottom_used = 0;
    }
    if (top_used == hi.mult) {
      --top;
      top_used = 0;
    }
  }
}

// Same-rank pairing of two co-sorted spectra, from the bottom or the top.
template <typename Fn>
void for_each_aligned_pair(const DegenerateSpectrum& a, const DegenerateSpectrum& b,
                           const BigCount& r, bool from_top, Fn&& fn) {
  const std::size_t size_a = a.blocks.size();
  const std::size_t size_b = b.blocks.size();
  std::size_t ia = 0;
  std::size_t ib = 0;
  BigCount used_a(0);
  BigCount used_b(0);
  BigCount remaining = r;
  auto block = [from_top](const DegenerateSpectrum& s, std::size_t i) -> const SpectrumBlock& {
    return from_top ? s.blocks[s.blocks.size() - 1 - i] : s.blocks[i];
  };
  while (remaining > 0) {
    if (ia >= size_a || ib >= size_b) {
      throw std::domain_error("aligned walk exhausted a spectrum before r");
    }
    const SpectrumBlock& ba = block(a, ia);
    const SpectrumBlock& bb = block(b, ib);
    BigCount take = ba.mult - used_a;
    const BigCount left_b = bb.mult - used_b;
    if (left_b < take) take = left_b;
    if (remaining < take) take = remaining;
    fn(ba.value, bb.value, take);
    used_a += take;
    used_b += take;
    remaining -= take;
    if (used_a == ba.mult) {
      ++ia;
      used_a = 0;
    }
    if (used_b == bb.mult) {
      ++ib;
      used_b = 0;
    }
  }
}

void validate_selection_count(const DegenerateSpectrum& spec, const BigCount& r) {
  if (r < 1) throw std::domain_error("selection count r must be at least 1");
  if (r > pow2_big(spec.num_spins)) {
    throw std::domain_error("selection count r exceeds the spectrum size 2^N");
  }
}

}  // namespace

BigCount DegenerateSpectrum::total_multiplicity() const {
  BigCount total(0);
  for (const auto& block : blocks) total += block.mult;
  return total;
}

DegenerateSpectrum sigma_spectrum(int num_spins, double p) {
  if (num_spins < 1) throw std::domain_error("sigma_spectrum: N must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("sigma_spectrum: p must lie in [0, 1]");
  }
  const auto row = binomial_row(num_spins);
  DegenerateSpectrum spec;
  spec.num_spins = num_spins;
  spec.blocks.reserve(static_cast<std::size_t>(num_spins) + 1);
  const double log_up = std::log((1.0 + p) / 2.0);
  const double log_down = std::log((1.0 - p) / 2.0);  // -inf at p = 1
  for (int level = 0; level <= num_spins; ++level) {
    SpectrumBlock block;
    block.twice_n = 2 * level - num_spins;
    block.mult = row[static_cast<std::size_t>(level)];
    const int down = num_spins - level;
    if (p == 0.0) {
      // All eigenvalues equal 2^-N; keep the logs bitwise identical so
      // paired differences cancel exactly.
      block.value = SignedLog::from_log(-num_spins * std::numbers::ln2);
    } else if (p == 1.0 && down > 0) {
      block.value = SignedLog::zero();
    } else {
      // down == 0 must not touch log_down: it is -inf at p = 1.
      double log_mag = level * log_up;
      if (down > 0) log_mag += down * log_down;
      block.value = SignedLog::from_log(log_mag);
    }
    spec.blocks.push_back(block);
  }
  return spec;
}

DegenerateSpectrum pz_spectrum(int num_spins) {
  if (num_spins < 1) throw std::domain_error("pz_spectrum: N must be positive");
  const auto row = binomial_row(num_spins);
  DegenerateSpectrum spec;
  spec.num_spins = num_spins;
  spec.blocks.reserve(static_cast<std::size_t>(num_spins) + 1);
  for (int level = 0; level <= num_spins; ++level) {
    SpectrumBlock block;
    block.twice_n = 2 * level - num_spins;
    block.mult = row[static_cast<std::size_t>(level)];
    block.value = SignedLog::from_value(block.twice_n / static_cast<double>(num_spins));
    spec.blocks.push_back(block);
  }
  return spec;
}

ExtremeSelection select_extremes(const DegenerateSpectrum& spec, const BigCount& r) {
  validate_selection_count(spec, r);
  ExtremeSelection sel;
  sel.r = r;
  BigCount remaining = r;
  for (auto it = spec.blocks.rbegin(); it != spec.blocks.rend() && remaining > 0; ++it) {
    const BigCount take = it->mult < remaining ? it->mult : remaining;
    sel.top_blocks.push_back({it->twice_n, it->value, take});
    remaining -= take;
  }
  remaining = r;
  for (auto it = spec.blocks.begin(); it != spec.blocks.end() && remaining > 0; ++it) {
    const BigCount take = it->mult < remaining ? it->mult : remaining;
    sel.bottom_blocks.push_back({it->twice_n, it->value, take});
    remaining -= take;
  }
  return sel;
}

SignedLog paired_diff_norm(const DegenerateSpectrum& spec, const BigCount& r) {
  validate_selection_count(spec, r);
  SignedLog sum_sq = SignedLog::zero();
  for_each_mirror_pair(spec, r, [&](const SignedLog& top, const SignedLog& bottom,
                                    const BigCount& count) {
    const SignedLog diff = top - bottom;
    if (diff.is_zero()) return;
    sum_sq = sum_sq + diff.squared() * SignedLog::from_big(count);
  });
  return sum_sq.sqrt();
}

SignedLog aligned_dot(const DegenerateSpectrum& a, const DegenerateSpectrum& b,
                      const BigCount& r) {
  if (a.num_spins != b.num_spins) {
    throw std::domain_error("aligned_dot: spectra must share N");
  }
  validate_selection_count(a, r);
  // Bottom and top pairings accumulate separately; their final signed sum
  // cancels exactly for mirror-symmetric inputs (e.g. P_z against flat sigma).
  SignedLog bottom = SignedLog::zero();
  for_each_aligned_pair(a, b, r, /*from_top=*/false,
                        [&](const SignedLog& va, const SignedLog& vb, const BigCount& count) {
                          const SignedLog term = va * vb;
                          if (term.is_zero()) return;
                          bottom = bottom + term * SignedLog::from_big(count);
                        });
  SignedLog top = SignedLog::zero();
  for_each_aligned_pair(a, b, r, /*from_top=*/true,
                        [&](const SignedLog& va, const SignedLog& vb, const BigCount& count) {
                          const SignedLog term = va * vb;
                          if (term.is_zero()) return;
                          top = top + term * SignedLog::from_big(count);
                        });
  return bottom + top;
}

}  // namespace mqc
