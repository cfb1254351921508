#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>

#include "diffbasis/certifier.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using diffbasis::RefuteOptions;
using diffbasis::RefuteStatus;

namespace {

const diffbasis::ThetaContext& ctx() {
  static const auto c = diffbasis::theta_star();
  return c;
}

}  // namespace

TEST_CASE("contradiction chain") {
  const auto r = diffbasis::paper_chain(ctx());
  CHECK(r.contradiction);
  CHECK(r.all_steps_pass());
  REQUIRE(r.steps.size() == 12);
  const std::vector<std::string> names = {"theta",          "sinc_min",       "alpha",   "beta",
                                          "gamma",          "2gamma^2-1",     "x_quadratic_lo",
                                          "x_quadratic_hi", "y1(0.1)",        "y2(0.1)",
                                          "y_quadratic_lo", "y_quadratic_hi"};
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(r.steps[i].name == names[i]);
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  CHECK(r.x_interval.lo == doctest::Approx(r.two_gamma_sq_minus_1));
  CHECK(r.x_interval.hi == doctest::Approx(r.x_quadratic.hi));
  CHECK(r.x_interval.lo > 0.0);
  CHECK(r.x_interval.hi < 0.1);
  CHECK(r.y_lower_from_psd == doctest::Approx(r.y1_at_x_max));
  CHECK(r.y_lower_from_psd > r.y_interval_quadratic.hi);
}

TEST_CASE("a perturbed context breaks the chain visibly") {
  auto bad = ctx();
  bad.theta += 1e-3;
  const auto r = diffbasis::paper_chain(bad);
  CHECK_FALSE(r.all_steps_pass());
  const auto it = std::find_if(r.steps.begin(), r.steps.end(), [](const auto& s) { return s.name == "theta"; });
  REQUIRE(it != r.steps.end());
  CHECK_FALSE(it->pass);
}

TEST_CASE("determinant factorisations match numeric determinants") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const double g = u(rng);
    CHECK(std::abs(diffbasis::det3_closed_form(x, g) - oracles::numeric_det({1.0, g, x})) <= 1e-10);
    CHECK(std::abs(diffbasis::det4_closed_form(x, y, g) - oracles::numeric_det({1.0, g, x, y})) <= 1e-10);
  }
}

TEST_CASE("y bounds decrease on [0, 0.1]") {
  const double g = ctx().gamma;
  for (double x = 0.0; x < 0.1; x += 1e-3) {
    CHECK(diffbasis::y1_bound(x + 1e-3, g) < diffbasis::y1_bound(x, g));
    CHECK(diffbasis::y2_bound(x + 1e-3, g) < diffbasis::y2_bound(x, g));
  }
}

TEST_CASE("refutation at alpha_leech, order 3") {
  const auto r = diffbasis::refute_alpha(ctx().alpha_leech, 3);
  CHECK(r.status == RefuteStatus::refuted);
  CHECK(r.pinned);
  CHECK(std::abs(r.zeta1_pinned - 1.0) <= 1e-9);
  CHECK(r.c1_radius <= 1e-9);
  CHECK(r.trace_complete);
  CHECK(r.boxes_pruned == r.trace.size());
  CHECK(diffbasis::verify_refutation(r));
}

TEST_CASE("refutation below alpha_leech at order 1") {
  const auto r = diffbasis::refute_alpha(0.40, 1);
  CHECK(r.status == RefuteStatus::refuted);
  CHECK(diffbasis::verify_refutation(r));
  REQUIRE(r.trace.size() == 1);
}

TEST_CASE("order 3 does not close the gap above alpha_leech") {
  const auto r = diffbasis::refute_alpha(0.65, 3);
  CHECK(r.status == RefuteStatus::unknown);
  REQUIRE(r.feasible_point);
  CHECK(diffbasis::point_satisfies(0.65, *r.feasible_point, 1e-9));
  CHECK(diffbasis::feasibility_search(0.65, 3));
}

TEST_CASE("tampered traces fail verification") {
  auto r = diffbasis::refute_alpha(ctx().alpha_leech, 3);
  REQUIRE(r.status == RefuteStatus::refuted);
  REQUIRE(r.trace.size() > 2);

  auto dropped = r;
  dropped.trace.pop_back();
  CHECK_FALSE(diffbasis::verify_refutation(dropped));

  auto overlapping = r;
  overlapping.trace.back() = overlapping.trace.front();
  CHECK_FALSE(diffbasis::verify_refutation(overlapping));

  auto wrong_reason = r;
  for (auto& b : wrong_reason.trace) b.reason = diffbasis::Condition::disk;
  CHECK_FALSE(diffbasis::verify_refutation(wrong_reason));

  auto unknown = r;
  unknown.status = RefuteStatus::unknown;
  CHECK_FALSE(diffbasis::verify_refutation(unknown));
}

TEST_CASE("refuter domain checks and budget") {
  CHECK_THROWS_AS(diffbasis::refute_alpha(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(diffbasis::refute_alpha(-1.0, 3), std::domain_error);
  CHECK_THROWS_AS(diffbasis::refute_alpha(0.5, 0), std::domain_error);
  RefuteOptions tiny;
  tiny.box_budget = 10;
  const auto r = diffbasis::refute_alpha(ctx().alpha_leech + 1e-6, 3, tiny);
  CHECK(r.status == RefuteStatus::unknown);
  CHECK(r.boxes_explored <= 10 + r.domain.size());
}

TEST_CASE("refutation is deterministic across workers") {
  RefuteOptions one;
  RefuteOptions many;
  many.workers = 4;
  const auto a = diffbasis::refute_alpha(ctx().alpha_leech, 4, one);
  const auto b = diffbasis::refute_alpha(ctx().alpha_leech, 4, many);
  REQUIRE(a.trace.size() == b.trace.size());
  CHECK(a.boxes_explored == b.boxes_explored);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].reason == b.trace[i].reason);
    CHECK(a.trace[i].box == b.trace[i].box);
  }
}

TEST_CASE("feasibility witnesses") {
  CHECK(diffbasis::point_satisfies(1.0, {{0.0, 0.0}, {0.0, 0.0}}, 1e-12));
  const auto w = diffbasis::feasibility_search(1.0, 2);
  REQUIRE(w);
  CHECK(diffbasis::toeplitz_psd(w->mu).psd);
  CHECK(diffbasis::toeplitz_psd(w->zeta).psd);
  CHECK(diffbasis::refute_alpha(1.0, 2).status == RefuteStatus::unknown);
  CHECK_FALSE(diffbasis::feasibility_search(ctx().alpha_leech, 3));
  CHECK_THROWS_AS(diffbasis::feasibility_search(0.0, 2), std::domain_error);
}

TEST_CASE("feasibility search is reproducible for a fixed seed") {
  diffbasis::FeasibilityOptions opts;
  opts.seed = 99;
  const auto a = diffbasis::feasibility_search(0.9, 4, opts);
  const auto b = diffbasis::feasibility_search(0.9, 4, opts);
  REQUIRE(a.has_value() == b.has_value());
  if (a) CHECK(a->mu.coeffs() == b->mu.coeffs());
}

TEST_CASE("property: no alpha is both refuted and witnessed") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> alpha(0.3, 1.2);
  RefuteOptions opts;
  opts.box_budget = 20'000;
  opts.record_trace = false;
  for (int i = 0; i < 12; ++i) {
    const double a = alpha(rng);
    const int K = 1 + i % 4;
    CAPTURE(a);
    CAPTURE(K);
    const auto r = diffbasis::refute_alpha(a, K, opts);
    const auto w = diffbasis::feasibility_search(a, K);
    CHECK_FALSE((r.status == RefuteStatus::refuted && w.has_value()));
    if (w) {
      std::vector<std::complex<double>> c(w->mu.coeffs().begin() + 1, w->mu.coeffs().end());
      CHECK(diffbasis::point_satisfies(a, c, 1e-9));
    }
  }
}

TEST_CASE("improved bound certificate") {
  diffbasis::ImproveOptions opts;
  opts.refute.box_budget = 5'000;
  const auto c3 = diffbasis::improved_bound(3, opts);
  CHECK_FALSE(c3.degenerate);
  CHECK(c3.epsilon_over_leech >= 0.0);
  CHECK(c3.implied_lower_bound >= diffbasis::leech_rr_bound() - 1e-12);
  CHECK(c3.implied_lower_bound == doctest::Approx(2.0 + c3.alpha_max_refuted));
  CHECK(c3.alpha_min_unknown > c3.alpha_max_refuted);
  CHECK(c3.settings.refute.box_budget == 5'000);
  const auto c4 = diffbasis::improved_bound(4, opts);
  CHECK(c4.alpha_max_refuted >= c3.alpha_max_refuted - 1e-12);
  CHECK_THROWS_AS(diffbasis::improved_bound(2, opts), std::domain_error);
}

TEST_CASE("degenerate certificate when alpha_leech is out of budget") {
  diffbasis::ImproveOptions opts;
  opts.refute.box_budget = 1;
  const auto c = diffbasis::improved_bound(3, opts);
  CHECK(c.degenerate);
  CHECK_FALSE(c.warning.empty());
  CHECK(c.implied_lower_bound == doctest::Approx(diffbasis::leech_rr_bound()));
  CHECK(c.epsilon_over_leech == 0.0);
}
