#include <algorithm>
#include <cmath>

#include "diffbasis/certifier.hpp"

namespace diffbasis {

double det3_closed_form(double x, double gamma) { return (x - 1.0) * (-x + 2.0 * gamma * gamma - 1.0); }

double det4_closed_form(double x, double y, double gamma) {
  const double g = gamma;
  return ((-1.0 - g) * y + x * x + 2.0 * g * x + g * g - g - 1.0) *
         ((1.0 - g) * y + x * x - 2.0 * g * x + g * g + g - 1.0);
}

double y1_bound(double x, double gamma) {
  return (x * x + 2.0 * gamma * x + gamma * gamma - gamma - 1.0) / (gamma + 1.0);
}

double y2_bound(double x, double gamma) {
  return (x * x - 2.0 * gamma * x + gamma * gamma + gamma - 1.0) / (gamma - 1.0);
}

bool ProofChainReport::all_steps_pass() const {
  return std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) { return s.pass; }) &&
         std::all_of(checks.begin(), checks.end(), [](const ChainCheck& c) { return c.pass; });
}

ProofChainReport paper_chain(const ThetaContext& ctx) {
  constexpr double kXCap = 0.1;
  constexpr double kYFloor = 0.4;

  ProofChainReport r;
  r.ctx = ctx;
  const double g = ctx.gamma;
  const double b = ctx.beta;

  auto step = [&r](std::string name, std::string claimed, double computed) {
    ChainStep s{std::move(name), std::move(claimed), computed};
    s.match = check_printed_prefix(computed, s.claimed);
    s.pass = s.match != PrefixMatch::mismatch;
    r.steps.push_back(std::move(s));
  };
  auto check = [&r](std::string name, bool pass) { r.checks.push_back({std::move(name), pass}); };

  // Constants.
  step("theta", "4.4934", ctx.theta);
  step("sinc_min", "-0.2172", ctx.sinc_min);
  step("alpha", "0.4344", ctx.alpha_leech);
  step("beta", "0.4224", b);
  step("gamma", "-0.7314", g);
  // mu_hat(1) = (1 - beta) eta_hat(1) + beta must vanish.
  check("mu_hat(1) = (1-beta) gamma + beta = 0", std::fabs((1.0 - b) * g + b) < 1e-12);

  // x = Re eta_hat(2): quadratic band, then det A >= 0.
  const auto xq = quadratic_root_interval(2, ctx);
  check("x band nonempty", xq.has_value());
  r.x_quadratic = xq.value_or(Interval{1.0, 0.0});
  r.two_gamma_sq_minus_1 = 2.0 * g * g - 1.0;
  step("2gamma^2-1", "0.0700", r.two_gamma_sq_minus_1);
  step("x_quadratic_lo", "-1.5384", r.x_quadratic.lo);
  step("x_quadratic_hi", "0.0755", r.x_quadratic.hi);
  r.x_interval = intersect(r.x_quadratic, Interval{r.two_gamma_sq_minus_1, 1.0});
  check("2gamma^2-1 > 0", r.two_gamma_sq_minus_1 > 0.0);
  check("0 < x < 0.1", !r.x_interval.empty() && r.x_interval.lo > 0.0 && r.x_interval.hi < kXCap);

  // y between y1(x) and y2(x); both decrease on [0, 0.1].
  check("y1 decreasing on [0, 0.1] (gamma+1 > 0, vertex -gamma >= 0.1)",
        g + 1.0 > 0.0 && -g >= kXCap);
  check("y2 decreasing on [0, 0.1] (gamma-1 < 0, vertex gamma <= 0)", g - 1.0 < 0.0 && g <= 0.0);
  r.y1_at_x_max = y1_bound(kXCap, g);
  r.y2_at_x_max = y2_bound(kXCap, g);
  step("y1(0.1)", "0.4848", r.y1_at_x_max);
  step("y2(0.1)", "0.6007", r.y2_at_x_max);
  r.y_lower_from_psd = std::min(r.y1_at_x_max, r.y2_at_x_max);
  check("y > 0.4 from det M >= 0", r.y_lower_from_psd > kYFloor);

  // y = Re eta_hat(3): quadratic band.
  const auto yq = quadratic_root_interval(3, ctx);
  check("y band nonempty", yq.has_value());
  r.y_interval_quadratic = yq.value_or(Interval{1.0, 0.0});
  step("y_quadratic_lo", "-1.5559", r.y_interval_quadratic.lo);
  step("y_quadratic_hi", "0.0929", r.y_interval_quadratic.hi);
  check("y < 0.1 from the k = 3 band", yq && r.y_interval_quadratic.hi < kXCap);

  r.contradiction = yq.has_value() && r.y_lower_from_psd > r.y_interval_quadratic.hi;
  check("bands disjoint", r.contradiction);
  return r;
}

}  // namespace diffbasis
