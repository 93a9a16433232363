#include "mqc/combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace mqc {

BigCount binomial_exact(long long n, long long k) {
  if (n < 0) throw std::domain_error("binomial_exact: n must be non-negative");
  if (k < 0 || k > n) return BigCount(0);
  if (k > n - k) k = n - k;
  BigCount result(1);
  // Multiplicative form; each division is exact because C(n, i) is integral.
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::vector<BigCount> binomial_row(int n) {
  if (n < 0) throw std::domain_error("binomial_row: n must be non-negative");
  std::vector<BigCount> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (int k = 0; k < n; ++k) {
    row[k + 1] = row[k] * (n - k) / (k + 1);
  }
  return row;
}

BigCount degeneracy_twice(int num_spins, int twice_n) {
  if (num_spins < 1) throw std::domain_error("degeneracy: N must be positive");
  if ((num_spins + twice_n) % 2 != 0) {
    throw std::domain_error("degeneracy: N/2 + n must be integral");
  }
  const long long level = (static_cast<long long>(num_spins) + twice_n) / 2;
  return binomial_exact(num_spins, level);
}

BigCount degeneracy(int num_spins, double n) {
  const double twice = 2.0 * n;
  const int twice_n = static_cast<int>(std::llround(twice));
  if (twice != static_cast<double>(twice_n)) {
    throw std::domain_error("degeneracy: n must be integer or half-integer");
  }
  return degeneracy_twice(num_spins, twice_n);
}

BigCount max_rank_from_row(const std::vector<BigCount>& row, int num_spins, int q) {
  if (q < 1 || q > num_spins) {
    throw std::domain_error("max_rank: q must satisfy 1 <= q <= N");
  }
  BigCount total(0);
  for (int j = 0; j < q; ++j) {
    BigCount rows_side(0);
    BigCount cols_side(0);
    // Iterate m until the binomial argument leaves [0, N]; the printed
    // ceiling upper limit is immaterial once out-of-range terms are zero.
    for (long long idx = num_spins - j; idx >= 0; idx -= 2LL * q) {
      rows_side += row[static_cast<std::size_t>(idx)];
    }
    for (long long idx = num_spins - j - q; idx >= 0; idx -= 2LL * q) {
      cols_side += row[static_cast<std::size_t>(idx)];
    }
    total += rows_side < cols_side ? rows_side : cols_side;
  }
  return 2 * total;
}

BigCount max_rank(int num_spins, int q) {
  if (num_spins < 1) throw std::domain_error("max_rank: N must be positive");
  return max_rank_from_row(binomial_row(num_spins), num_spins, q);
}

BigCount max_rank_even(int num_spins, int q) {
  if (num_spins < 1 || num_spins % 2 != 0 || q % 2 != 0) {
    throw std::domain_error("max_rank_even: N and q must both be even");
  }
  if (q < 1 || q > num_spins) {
    throw std::domain_error("max_rank_even: q must satisfy 1 <= q <= N");
  }
  const auto row = binomial_row(num_spins);
  const int half = num_spins / 2;
  BigCount total(0);
  // One Zeeman chain per k: manifolds M = jq + k with |M| <= N/2, split by
  // the parity of j.
  for (int k = -q / 2 + 1; k <= q / 2; ++k) {
    BigCount odd_side(0);
    BigCount even_side(0);
    const int j_min = -(half + k) / q - 2;
    const int j_max = (half - k) / q + 2;
    for (int j = j_min; j <= j_max; ++j) {
      const long long m = static_cast<long long>(j) * q + k;
      if (m < -half || m > half) continue;
      const BigCount& g = row[static_cast<std::size_t>(half + m)];
      if (j % 2 == 0) {
        even_side += g;
      } else {
        odd_side += g;
      }
    }
    total += odd_side < even_side ? odd_side : even_side;
  }
  return 2 * total;
}

RankReport rank_report(int num_spins) {
  if (num_spins < 1) throw std::domain_error("rank_report: N must be positive");
  const auto row = binomial_row(num_spins);
  RankReport report;
  report.num_spins = num_spins;
  report.entries.reserve(static_cast<std::size_t>(num_spins));
  for (int q = 1; q <= num_spins; ++q) {
    RankEntry entry;
    entry.q = q;
    entry.rank = max_rank_from_row(row, num_spins, q);
    entry.half_rank = entry.rank / 2;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace mqc
