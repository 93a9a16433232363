#pragma once

#include <vector>

#include "mqc/big_count.hpp"

namespace mqc {

/// C(n, k), exact. Out-of-range k (k < 0 or k > n) is zero, not an error;
/// n < 0 is a domain error.
BigCount binomial_exact(long long n, long long k);

/// Full Pascal row {C(n,0), ..., C(n,n)}.
std::vector<BigCount> binomial_row(int n);

/// Dimension g_n = C(N, N/2 + n) of the Zeeman manifold with magnetic
/// quantum number n. n must make N/2 + n integral (integer n for even N,
/// half-integer for odd N); |n| > N/2 gives zero.
BigCount degeneracy(int num_spins, double n);

/// Same with n passed as 2n to stay exact.
BigCount degeneracy_twice(int num_spins, int twice_n);

/// Largest matrix rank R^N_q among operators of coherence order q,
/// R^N_q = 2 sum_{j=0}^{q-1} min{ sum_m C(N, N-j-2mq), sum_m C(N, N-j-2mq-q) },
/// with out-of-range binomials dropped. Valid for 1 <= q <= N.
BigCount max_rank(int num_spins, int q);

/// max_rank against a precomputed binomial_row(num_spins); the row is reused
/// across q in sweeps.
BigCount max_rank_from_row(const std::vector<BigCount>& row, int num_spins, int q);

/// Even-N/even-q chain form: R^N_q = 2 sum_{k=-q/2+1}^{q/2}
/// min{ sum_{j odd} g_{jq+k}, sum_{j even} g_{jq+k} } over |jq+k| <= N/2.
/// Equals max_rank on the shared domain.
BigCount max_rank_even(int num_spins, int q);

struct RankEntry {
  int q = 0;
  BigCount rank;       // R^N_q, even
  BigCount half_rank;  // r = R^N_q / 2
};

struct RankReport {
  int num_spins = 0;
  std::vector<RankEntry> entries;  // q = 1..N
};

RankReport rank_report(int num_spins);

}  // namespace mqc
