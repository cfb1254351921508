#include <cmath>
#include <random>
#include <stdexcept>

#include "diffbasis/certifier.hpp"

namespace diffbasis {

namespace {

using cplx = std::complex<double>;

double min_eigenvalue_hermitian(const std::vector<cplx>& entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx c = entries[static_cast<std::size_t>(j > i ? j - i : i - j)];
      m(i, j) = j >= i ? c : std::conj(c);
    }
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

double positive_part_sq(double v) { return v > 0.0 ? v * v : 0.0; }

// Squared violation of every refuter condition, each tightened by `margin`.
class Penalty {
 public:
  Penalty(double alpha, int K, double margin) : alpha_(alpha), K_(K), margin_(margin) {
    const double theta = theta_star().theta;
    for (int k = 0; k <= K; ++k) nu_.push_back(nu_hat(k, theta));
    pinned_ = 2.0 * nu_[1] + alpha <= 0.0;
    beta_ = std::sqrt(alpha / (2.0 + alpha));
    if (pinned_) {
      for (int k = 0; k <= K; ++k) {
        radius_.push_back(std::sqrt(std::max(0.0, (2.0 * nu_[static_cast<std::size_t>(k)] + alpha) / (2.0 + alpha))));
      }
    }
  }

  bool pinned() const { return pinned_; }
  std::size_t dims() const { return pinned_ ? static_cast<std::size_t>(K_ - 1) : static_cast<std::size_t>(2 * K_); }

  // Pinned mode varies only the phases of c_2..c_K; |c_k| is forced.
  std::vector<cplx> coefficients(const std::vector<double>& v) const {
    std::vector<cplx> c;
    for (int k = 1; k <= K_; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if (pinned_) {
        c.push_back(k == 1 ? cplx(0.0) : std::polar(radius_[i], v[i - 2]));
      } else {
        c.emplace_back(v[2 * i - 2], v[2 * i - 1]);
      }
    }
    return c;
  }

  double operator()(const std::vector<double>& v) const {
    const std::vector<cplx> c = coefficients(v);
    const double m = margin_;
    double p = 0.0;
    std::vector<cplx> mu{1.0}, zeta{1.0}, eta{1.0};
    for (int k = 1; k <= K_; ++k) {
      const cplx ck = c[static_cast<std::size_t>(k - 1)];
      const double sq = std::norm(ck);
      const double z = ((2.0 + alpha_) * sq - 2.0 * nu_[static_cast<std::size_t>(k)]) / alpha_;
      p += positive_part_sq(sq - (1.0 - m));
      if (pinned_) {
        p += positive_part_sq(z - 1.0 - 1e-12);
        p += positive_part_sq(1.0 - 1e-12 - z);
        const cplx ek = (ck - beta_) / (1.0 - beta_);
        p += positive_part_sq(std::norm(ek) - (1.0 - m));
        eta.push_back(ek);
      } else {
        p += positive_part_sq(z - (1.0 - m));
        p += positive_part_sq(-(1.0 - m) - z);
      }
      mu.push_back(ck);
      zeta.push_back(z);
    }
    p += positive_part_sq(m - min_eigenvalue_hermitian(mu));
    if (pinned_) {
      p += positive_part_sq(m - min_eigenvalue_hermitian(eta));
    } else {
      p += positive_part_sq(m - min_eigenvalue_hermitian(zeta));
    }
    return p;
  }

 private:
  double alpha_;
  int K_;
  double margin_;
  std::vector<double> nu_;
  std::vector<double> radius_;
  bool pinned_ = false;
  double beta_ = 0.0;
};

// Hooke-Jeeves coordinate pattern search.
std::vector<double> pattern_search(const Penalty& f, std::vector<double> x, int max_iterations) {
  double fx = f(x);
  double step = 0.25;
  for (int it = 0; it < max_iterations && fx > 0.0 && step > 1e-12; ++it) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size() && fx > 0.0; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += dir * step;
        const double fy = f(y);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

}  // namespace

std::optional<FeasibilityWitness> feasibility_search(double alpha, int K,
                                                     const FeasibilityOptions& options) {
  if (!(alpha > 0.0)) throw std::domain_error("feasibility_search needs alpha > 0");
  if (K < 1) throw std::domain_error("feasibility_search needs K >= 1");
  const Penalty penalty(alpha, K, options.margin);
  if (penalty.pinned() && -2.0 * nu_hat(1, theta_star().theta) / alpha > 1.0 + 1e-12) {
    return std::nullopt;  // zeta_hat(1) > 1 at the only admissible c_1 = 0
  }

  std::mt19937_64 rng(options.seed);
  const double span = penalty.pinned() ? 3.14159265358979 : 1.0;
  std::uniform_real_distribution<double> coord(-span, span);
  for (int start = 0; start < options.starts; ++start) {
    std::vector<double> x(penalty.dims(), 0.0);
    if (start > 0) {
      for (double& v : x) v = coord(rng);
    }
    x = pattern_search(penalty, std::move(x), options.max_iterations);
    if (penalty(x) > 0.0) continue;

    const std::vector<cplx> c = penalty.coefficients(x);
    if (!point_satisfies(alpha, c, 1e-9)) continue;
    std::vector<cplx> mu{1.0};
    std::vector<double> zeta{1.0};
    const double theta = theta_star().theta;
    for (int k = 1; k <= K; ++k) {
      const cplx ck = c[static_cast<std::size_t>(k - 1)];
      mu.push_back(ck);
      zeta.push_back(((2.0 + alpha) * std::norm(ck) - 2.0 * nu_hat(k, theta)) / alpha);
    }
    FeasibilityWitness w{MomentSequence(mu), MomentSequence::from_real(zeta)};
    if (toeplitz_psd(w.mu).psd && real_toeplitz_psd(w.zeta).psd && w.zeta.valid()) return w;
  }
  return std::nullopt;
}

BoundCertificate improved_bound(int K, const ImproveOptions& options) {
  if (K < 3) throw std::domain_error("improved_bound needs K >= 3");
  const ThetaContext ctx = theta_star();

  BoundCertificate cert;
  cert.K = K;
  cert.settings = options;
  RefuteOptions refute = options.refute;
  refute.record_trace = false;

  auto refuted = [&](double alpha) {
    ++cert.probes;
    if (options.feasibility_shortcut && feasibility_search(alpha, K, options.feasibility)) return false;
    return refute_alpha(alpha, K, refute).status == RefuteStatus::refuted;
  };

  double lo = ctx.alpha_leech;
  cert.alpha_max_refuted = lo;
  if (!refuted(lo)) {
    cert.degenerate = true;
    cert.warning = "alpha_leech not refuted within the box budget; bound falls back to 2 + alpha_leech";
    cert.alpha_min_unknown = lo;
  } else {
    // Walk up until a probe stays unrefuted, then bisect. Each probe is
    // independent; the result is only the largest refuted probe.
    double step = options.initial_step;
    double hi = lo + step;
    while (hi < 4.0 && refuted(hi)) {
      lo = hi;
      step *= 2.0;
      hi = lo + step;
    }
    for (int i = 0; i < options.max_bisections && hi - lo > options.resolution; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (refuted(mid)) lo = mid; else hi = mid;
    }
    cert.alpha_max_refuted = lo;
    cert.alpha_min_unknown = hi;
  }
  cert.implied_lower_bound = 2.0 + cert.alpha_max_refuted;
  cert.epsilon_over_leech = cert.alpha_max_refuted - ctx.alpha_leech;
  return cert;
}

}  // namespace diffbasis
