#include <stdexcept>
#include <cmath>
#include <random>

#include "diffbasis/fourier.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using diffbasis::MomentSequence;
using diffbasis::PrefixMatch;

namespace {

MomentSequence nu_sequence(int K, double theta) {
  std::vector<double> c(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) c[k] = diffbasis::nu_hat(k, theta);
  return MomentSequence::from_real(c);
}

}  // namespace

TEST_CASE("theta star solves tan t = t") {
  const auto ctx = diffbasis::theta_star();
  CHECK(ctx.theta > M_PI);
  CHECK(ctx.theta < 1.5 * M_PI);
  CHECK(std::abs(std::tan(ctx.theta) - ctx.theta) < 1e-9);
  CHECK(ctx.sinc_min == doctest::Approx(std::sin(ctx.theta) / ctx.theta).epsilon(1e-15));
  CHECK(ctx.alpha_leech == doctest::Approx(-2.0 * ctx.sinc_min));
  CHECK(ctx.beta == doctest::Approx(std::sqrt(ctx.alpha_leech / (2.0 + ctx.alpha_leech))));
  CHECK(ctx.gamma == doctest::Approx(-ctx.beta / (1.0 - ctx.beta)));
  const auto loose = diffbasis::theta_star(1e-6);
  CHECK(std::abs(loose.theta - ctx.theta) < 1e-6);
  CHECK_THROWS_AS(diffbasis::theta_star(0.0), std::domain_error);
  CHECK_THROWS_AS(diffbasis::theta_star(1e-3), std::domain_error);
}

TEST_CASE("sinc is minimised at theta star") {
  const auto ctx = diffbasis::theta_star();
  for (double t = 0.5; t < 20.0; t += 1e-3) CHECK(std::sin(t) / t >= ctx.sinc_min - 1e-15);
}

TEST_CASE("printed constants") {
  const auto ctx = diffbasis::theta_star();
  CHECK(diffbasis::check_printed_prefix(ctx.theta, "4.4934") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(ctx.sinc_min, "-0.2172") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(diffbasis::leech_rr_bound(), "2.4344") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(diffbasis::redei_renyi_bound(), "2.4244") == PrefixMatch::truncated);
  CHECK(diffbasis::redei_renyi_bound() == doctest::Approx(2.0 + 4.0 / (3.0 * M_PI)));
}

TEST_CASE("digit prefix convention") {
  CHECK(diffbasis::check_printed_prefix(0.07005, "0.0700") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(-1.5558978, "-1.5559") == PrefixMatch::rounded);
  CHECK(diffbasis::check_printed_prefix(-1.5558978, "-1.5558") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(0.4344, "-0.4344") == PrefixMatch::mismatch);
  CHECK(diffbasis::check_printed_prefix(0.4356, "0.4344") == PrefixMatch::mismatch);
  CHECK(diffbasis::check_printed_prefix(0.41, "0.4") == PrefixMatch::truncated);
  CHECK_THROWS_AS(diffbasis::check_printed_prefix(1.0, "abc"), std::invalid_argument);
}

TEST_CASE("nu_hat matches quadrature") {
  const auto ctx = diffbasis::theta_star();
  CHECK(diffbasis::nu_hat(0, ctx.theta) == 1.0);
  for (long k = 1; k <= 8; ++k) {
    CAPTURE(k);
    CHECK(std::abs(diffbasis::nu_hat(k, ctx.theta) - oracles::simpson_nu_hat(k, ctx.theta)) <= 1e-9);
    CHECK(diffbasis::nu_hat(-k, ctx.theta) == diffbasis::nu_hat(k, ctx.theta));
  }
  CHECK(diffbasis::nu_hat(1, ctx.theta) == doctest::Approx(ctx.sinc_min));
}

TEST_CASE("moment sequences") {
  CHECK_THROWS_AS(MomentSequence(std::vector<std::complex<double>>{{0.9, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MomentSequence(std::vector<std::complex<double>>{}), std::invalid_argument);
  const MomentSequence s({{1.0, 0.0}, {0.2, 0.3}});
  CHECK(s.order() == 1);
  CHECK(s.at(-1) == std::complex<double>(0.2, -0.3));
  CHECK(s.valid());
  CHECK_FALSE(MomentSequence({{1.0, 0.0}, {1.2, 0.0}}).valid());
}

TEST_CASE("nu truncations are positive semidefinite") {
  const auto ctx = diffbasis::theta_star();
  for (int K = 0; K <= 8; ++K) {
    CAPTURE(K);
    const auto seq = nu_sequence(K, ctx.theta);
    CHECK(diffbasis::toeplitz_psd(seq).psd);
    CHECK(diffbasis::real_toeplitz_psd(seq).psd);
  }
}

TEST_CASE("non-moment sequences are rejected") {
  const auto bad = diffbasis::toeplitz_psd(MomentSequence::from_real({1.0, 1.01}));
  CHECK_FALSE(bad.psd);
  CHECK(bad.reason == "some |c_k| exceeds 1");
  const auto neg = diffbasis::toeplitz_psd(MomentSequence::from_real({1.0, 0.9, -0.9}));
  CHECK_FALSE(neg.psd);
  CHECK(neg.reason == "negative eigenvalue");
  CHECK(neg.min_eigenvalue < 0.0);
  CHECK(diffbasis::toeplitz_psd(MomentSequence::from_real({1.0, 1.0, 1.0})).psd);
  CHECK(diffbasis::toeplitz_psd(MomentSequence::from_real({1.0, -1.0, 1.0})).psd);
  CHECK(diffbasis::toeplitz_psd(MomentSequence({{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}})).psd);
}

TEST_CASE("property: moments of random measures are accepted") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int K = 1 + trial % 8;
    const int atoms = 1 + trial % 9;
    const MomentSequence seq(oracles::random_measure_moments(rng, atoms, K));
    CHECK(diffbasis::toeplitz_psd(seq).psd);
    CHECK(diffbasis::real_toeplitz_psd(seq).psd);
  }
}

TEST_CASE("property: order one and order two criteria") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::complex<double> c1(u(rng), u(rng));
    if (std::abs(std::abs(c1) - 1.0) < 1e-6) continue;
    CHECK(diffbasis::toeplitz_psd(MomentSequence({{1.0, 0.0}, c1})).psd == (std::abs(c1) <= 1.0));
  }
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    // [1 a b; a 1 a; b a 1] is PSD iff 2a^2 - 1 <= b.
    const double a = v(rng);
    const double b = v(rng);
    if (std::abs(b - (2 * a * a - 1)) < 1e-6) continue;
    CHECK(diffbasis::toeplitz_psd(MomentSequence::from_real({1.0, a, b})).psd == (b >= 2 * a * a - 1));
  }
}

TEST_CASE("toeplitz matrices") {
  const MomentSequence s({{1.0, 0.0}, {0.5, 0.25}, {0.1, 0.0}});
  const auto h = diffbasis::hermitian_toeplitz(s);
  CHECK(h.rows() == 3);
  CHECK(h(0, 1) == std::complex<double>(0.5, 0.25));
  CHECK(h(1, 0) == std::complex<double>(0.5, -0.25));
  CHECK(h(0, 2) == std::complex<double>(0.1, 0.0));
  const auto r = diffbasis::real_toeplitz(s);
  CHECK(r(1, 0) == 0.5);
  CHECK(r(2, 0) == 0.1);
}

TEST_CASE("quadratic root intervals") {
  const auto ctx = diffbasis::theta_star();
  const auto x = diffbasis::quadratic_root_interval(2, ctx);
  REQUIRE(x);
  CHECK(diffbasis::check_printed_prefix(x->lo, "-1.5384") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(x->hi, "0.0755") == PrefixMatch::truncated);
  const auto y = diffbasis::quadratic_root_interval(3, ctx);
  REQUIRE(y);
  CHECK(diffbasis::check_printed_prefix(y->hi, "0.0929") == PrefixMatch::truncated);
  CHECK(diffbasis::check_printed_prefix(y->lo, "-1.5559") == PrefixMatch::rounded);
  // Both endpoints solve (1 - beta) t^2 + 2 beta t = (1 + beta) nu_hat(k).
  for (long k = 2; k <= 6; ++k) {
    const auto iv = diffbasis::quadratic_root_interval(k, ctx);
    REQUIRE(iv);
    const double rhs = (1.0 + ctx.beta) * diffbasis::nu_hat(k, ctx.theta);
    for (double t : {iv->lo, iv->hi}) {
      CHECK((1.0 - ctx.beta) * t * t + 2.0 * ctx.beta * t == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(diffbasis::quadratic_root_interval(1, ctx), std::domain_error);
}
