#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mqc/bounds.hpp"
#include "mqc/combinatorics.hpp"
#include "mqc/oracle.hpp"
#include "mqc/verify.hpp"

using namespace mqc::oracle;

namespace {

double max_abs(const DenseOperator& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spin operator construction") {
  const auto one = build_spin_operators(1);
  CHECK(one.i_z(0, 0).real() == doctest::Approx(-0.5));
  CHECK(one.i_z(1, 1).real() == doctest::Approx(0.5));

  const auto two = build_spin_operators(2);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(two.p_z);
  CHECK(solver.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(solver.eigenvalues()(1) == doctest::Approx(0.0));
  CHECK(solver.eigenvalues()(2) == doctest::Approx(0.0));
  CHECK(solver.eigenvalues()(3) == doctest::Approx(1.0));

  for (int n = 1; n <= 5; ++n) {
    const auto ops = build_spin_operators(n);
    const DenseOperator ladder = ops.i_z * ops.i_plus - ops.i_plus * ops.i_z - ops.i_plus;
    CHECK(max_abs(ladder) <= 1e-12);
  }
  CHECK_THROWS_AS(build_spin_operators(0), std::domain_error);
  CHECK_THROWS_AS(build_spin_operators(9), std::domain_error);
}

TEST_CASE("coherence projection") {
  const auto ops = build_spin_operators(3);
  const DenseOperator i_x = 0.5 * (ops.i_plus + ops.i_minus);
  CHECK(max_abs(coherence_project(ops, i_x, 1) - 0.5 * ops.i_plus) <= 1e-14);

  const DenseOperator sigma = sigma_dense(ops, 0.7);
  CHECK(max_abs(coherence_project(ops, sigma, 0) - sigma) <= 1e-14);
  for (int q = 1; q <= 3; ++q) CHECK(max_abs(coherence_project(ops, sigma, q)) == 0.0);

  std::mt19937_64 rng(11);
  const DenseOperator a = random_hermitian(rng, ops.dim());
  const auto decomp = decompose_coherence(ops, a);
  DenseOperator sum = DenseOperator::Zero(ops.dim(), ops.dim());
  for (const auto& [q, comp] : decomp.components) {
    sum += comp;
    const DenseOperator comm = ops.i_z * comp - comp * ops.i_z;
    CHECK(max_abs(comm - static_cast<double>(q) * comp) <= 1e-12);
  }
  CHECK(max_abs(sum - a) == 0.0);  // entries partition exactly
}

TEST_CASE("Fourier projector equals the direct filter") {
  const auto one = build_spin_operators(1);
  const DenseOperator i_x = 0.5 * (one.i_plus + one.i_minus);
  CHECK(max_abs(projector_fourier(one, i_x, 1) - i_x) <= 1e-12);

  std::mt19937_64 rng(23);
  for (int n = 1; n <= 5; ++n) {
    const auto ops = build_spin_operators(n);
    CHECK(max_abs(projector_fourier(ops, sigma_dense(ops, 0.4), 1)) <= 1e-12);
    const DenseOperator a = random_hermitian(rng, ops.dim());
    for (int q = 0; q <= n; ++q) {
      const DenseOperator direct =
          coherence_project(ops, a, q) + coherence_project(ops, a, -q);
      CHECK(max_abs(projector_fourier(ops, a, q) - direct) <= 1e-10);
    }
  }
}

TEST_CASE("zigzag operators achieve the maximal rank") {
  const auto two = build_spin_operators(2);
  const DenseOperator flip = zigzag_max_rank_operator(two, 2);
  // |up,up><down,down| + h.c. : the single two-quantum chain.
  CHECK(flip(3, 0) == std::complex<double>(1.0, 0.0));
  CHECK(flip(0, 3) == std::complex<double>(1.0, 0.0));
  CHECK(max_abs(flip) == 1.0);
  CHECK(numerical_rank(flip) == 2);

  for (int n = 1; n <= 6; ++n) {
    const auto ops = build_spin_operators(n);
    for (int q = 1; q <= n; ++q) {
      const DenseOperator zigzag = zigzag_max_rank_operator(ops, q);
      CHECK(numerical_rank(zigzag) == mqc::max_rank(n, q).convert_to<int>());
      CHECK(max_abs(coherence_project(ops, zigzag, q) +
                    coherence_project(ops, zigzag, -q) - zigzag) == 0.0);
      // Eigenvalues pair as +-lambda.
      Eigen::SelfAdjointEigenSolver<DenseOperator> solver(zigzag, Eigen::EigenvaluesOnly);
      const auto& vals = solver.eigenvalues();
      for (Eigen::Index i = 0; i < vals.size() / 2; ++i) {
        CHECK(vals(i) + vals(vals.size() - 1 - i) == doctest::Approx(0.0).scale(1.0));
      }
    }
  }

  const auto eight = build_spin_operators(8);
  CHECK(numerical_rank(zigzag_max_rank_operator(eight, 8)) == 2);
}

TEST_CASE("max_overlap alignment") {
  DenseOperator sigma_z(2, 2), sigma_x(2, 2);
  sigma_z << 1, 0, 0, -1;
  sigma_x << 0, 1, 1, 0;
  CHECK(max_overlap(sigma_z, sigma_z).value == doctest::Approx(2.0));
  CHECK(max_overlap(sigma_z, sigma_x).value == doctest::Approx(2.0));

  std::mt19937_64 rng(5);
  const DenseOperator a = random_hermitian(rng, 16);
  const DenseOperator b = random_hermitian(rng, 16);
  const auto overlap = max_overlap(a, b);
  const double realized = (b * overlap.unitary * a * overlap.unitary.adjoint()).trace().real();
  CHECK(realized == doctest::Approx(overlap.value).epsilon(1e-10));
  for (int trial = 0; trial < 1000; ++trial) {
    const DenseOperator v = haar_unitary(rng, 16);
    const double value = (b * v * a * v.adjoint()).trace().real();
    CHECK(value <= overlap.value + 1e-10);
  }

  DenseOperator skew(2, 2);
  skew << 0, 1, 0, 0;
  CHECK_THROWS_AS(max_overlap(skew, sigma_z), std::domain_error);
}

TEST_CASE("achievable signal realizes the lower bound") {
  const auto two = build_spin_operators(2);
  const auto at_half = achievable_signal(two, 2, 0.5);
  CHECK(!at_half.degenerate);
  CHECK(at_half.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(at_half.value ==
        doctest::Approx(mqc::lower_bound(2, 2, 0.5)).epsilon(1e-9));

  for (int n = 1; n <= 4; ++n) {
    const auto ops = build_spin_operators(n);
    for (int q = 1; q <= n; ++q) {
      CHECK(achievable_signal(ops, q, 1.0).value == doctest::Approx(1.0).epsilon(1e-10));
      const auto degenerate = achievable_signal(ops, q, 0.0);
      CHECK(degenerate.degenerate);
      CHECK(degenerate.value == 0.0);
    }
  }
}

TEST_CASE("phase cycling") {
  const auto one = build_spin_operators(1);
  SUBCASE("single spin x-rotation anchors") {
    for (double p : {0.25, 0.8, 1.0}) {
      const double signal =
          phase_cycle_experiment(one, 1, p, one.r_x(std::numbers::pi / 2),
                                 one.r_x(-std::numbers::pi / 2));
      CHECK(signal == doctest::Approx(p).epsilon(1e-10));
    }
  }
  SUBCASE("diagonal states have no coherence above order zero") {
    for (int n : {1, 2, 4}) {
      const auto ops = build_spin_operators(n);
      const DenseOperator id = DenseOperator::Identity(ops.dim(), ops.dim());
      for (int q = 1; q <= n; ++q) {
        CHECK(std::abs(phase_cycle_experiment(ops, q, 0.6, id, id)) <= 1e-12);
      }
      CHECK(phase_cycle_experiment(ops, 0, 0.6, id, id) == doctest::Approx(0.6).epsilon(1e-12));
    }
  }
  SUBCASE("agrees with the projection form and respects the caps") {
    std::mt19937_64 rng(17);
    for (int n : {2, 3}) {
      const auto ops = build_spin_operators(n);
      mqc::BoundEvaluator eval(n, 0.75);
      for (int q = 1; q <= n; ++q) {
        const double upper = eval.upper(q).to_double();
        for (int trial = 0; trial < 25; ++trial) {
          const DenseOperator u = haar_unitary(rng, ops.dim());
          const DenseOperator v = haar_unitary(rng, ops.dim());
          const double fourier = phase_cycle_experiment(ops, q, 0.75, u, v);
          CHECK(fourier == doctest::Approx(projected_signal(ops, q, 0.75, u, v)).epsilon(1e-10));
          CHECK(fourier <= upper + 1e-9);
          CHECK(std::abs(fourier) <= 2.0 * 0.75 + 1e-9);
        }
      }
    }
  }
  SUBCASE("rejects non-unitary transforms") {
    DenseOperator bad = DenseOperator::Identity(2, 2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(phase_cycle_experiment(one, 1, 0.5, bad, bad), std::domain_error);
  }
}

TEST_CASE("verification report is structured and canonical") {
  const auto report = mqc::run_verification(2, 0);
  CHECK(report.overall_pass);
  CHECK(report.max_spins == 2);
  REQUIRE(!report.checks.empty());
  for (std::size_t i = 1; i < report.checks.size(); ++i) {
    const auto& a = report.checks[i - 1];
    const auto& b = report.checks[i];
    CHECK((a.name < b.name || (a.name == b.name && a.params <= b.params)));
  }
  CHECK_THROWS_AS(mqc::run_verification(9, 0), std::domain_error);
}
