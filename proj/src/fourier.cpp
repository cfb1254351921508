#include "diffbasis/fourier.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diffbasis {

namespace {

double tan_minus_identity(double t) { return std::tan(t) - t; }

template <typename Matrix>
double min_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

template <typename Matrix>
PsdReport psd_report(const MomentSequence& seq, const Matrix& a, std::optional<double> tol) {
  PsdReport report;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  report.tolerance = tol ? *tol : 1e-10 * norm1;
  report.min_eigenvalue = min_eigenvalue(a);
  if (!seq.valid(report.tolerance)) {
    report.reason = "some |c_k| exceeds 1";
    return report;
  }
  report.psd = report.min_eigenvalue >= -report.tolerance;
  if (!report.psd) report.reason = "negative eigenvalue";
  return report;
}

}  // namespace

ThetaContext theta_star(double tol) {
  if (!(tol > 0.0) || tol > 1e-6) throw std::domain_error("theta_star tolerance must be in (0, 1e-6]");
  constexpr double pi = std::numbers::pi;
  double lo = pi + 0.1;         // tan t - t < 0
  double hi = 1.5 * pi - 0.01;  // tan t - t > 0
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (tan_minus_identity(mid) < 0.0) lo = mid; else hi = mid;
  }
  // d/dt (tan t - t) = tan^2 t, about 20 here; bisection alone leaves a
  // residual of order 20 tol.
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double tn = std::tan(t);
    const double step = (tn - t) / (tn * tn);
    if (!std::isfinite(step)) break;
    t -= step;
  }

  ThetaContext ctx;
  ctx.theta = t;
  ctx.sinc_min = nu_hat(1, t);
  ctx.alpha_leech = -2.0 * ctx.sinc_min;
  ctx.beta = std::sqrt(ctx.alpha_leech / (2.0 + ctx.alpha_leech));
  ctx.gamma = -ctx.beta / (1.0 - ctx.beta);
  return ctx;
}

double nu_hat(long k, double theta) {
  if (theta == 0.0) throw std::domain_error("nu_hat needs theta != 0");
  if (k == 0) return 1.0;
  const double x = static_cast<double>(k) * theta;
  return std::sin(x) / x;
}

double leech_rr_bound() { return 2.0 + theta_star().alpha_leech; }

double redei_renyi_bound() { return 2.0 + 4.0 / (3.0 * std::numbers::pi); }

MomentSequence::MomentSequence(std::vector<std::complex<double>> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("moment sequence needs c_0");
  if (std::abs(coeffs_[0] - 1.0) > 1e-12) {
    throw std::invalid_argument("moment sequence must have c_0 = 1");
  }
}

MomentSequence MomentSequence::from_real(const std::vector<double>& coeffs) {
  return MomentSequence(std::vector<std::complex<double>>(coeffs.begin(), coeffs.end()));
}

std::complex<double> MomentSequence::at(long k) const {
  const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
  if (idx >= coeffs_.size()) throw std::out_of_range("moment index beyond order");
  return k < 0 ? std::conj(coeffs_[idx]) : coeffs_[idx];
}

bool MomentSequence::valid(double tol) const {
  for (const auto& c : coeffs_) {
    if (std::abs(c) > 1.0 + tol) return false;
  }
  return true;
}

Eigen::MatrixXcd hermitian_toeplitz(const MomentSequence& seq) {
  const int n = seq.order() + 1;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = seq.at(j - i);
  }
  return a;
}

Eigen::MatrixXd real_toeplitz(const MomentSequence& seq) {
  return hermitian_toeplitz(seq).real();
}

PsdReport toeplitz_psd(const MomentSequence& seq, std::optional<double> tol) {
  return psd_report(seq, hermitian_toeplitz(seq), tol);
}

PsdReport real_toeplitz_psd(const MomentSequence& seq, std::optional<double> tol) {
  return psd_report(seq, real_toeplitz(seq), tol);
}

std::optional<Interval> quadratic_root_interval(long k, const ThetaContext& ctx) {
  if (k < 2) throw std::domain_error("quadratic_root_interval needs k >= 2");
  const double b = ctx.beta;
  // Roots of (1-b) t^2 + 2 b t - (1+b) v, halved discriminant b^2 + (1-b^2) v.
  const double disc = b * b + (1.0 - b * b) * nu_hat(k, ctx.theta);
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  return Interval{(-b - root) / (1.0 - b), (-b + root) / (1.0 - b)};
}

PrefixMatch check_printed_prefix(double computed, std::string_view printed) {
  bool negative = false;
  std::string_view digits = printed;
  if (!digits.empty() && digits.front() == '-') {
    negative = true;
    digits.remove_prefix(1);
  }
  const auto dot = digits.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(digits.size() - dot - 1);
  std::string plain(digits);
  if (dot != std::string_view::npos) plain.erase(dot, 1);
  long long scaled_printed = 0;
  const auto [end, ec] = std::from_chars(plain.data(), plain.data() + plain.size(), scaled_printed);
  if (ec != std::errc{} || end != plain.data() + plain.size()) {
    throw std::invalid_argument("malformed printed constant: " + std::string(printed));
  }
  if ((computed < 0.0) != negative && computed != 0.0) return PrefixMatch::mismatch;

  const long double scaled = std::fabs(static_cast<long double>(computed)) *
                             std::pow(10.0L, static_cast<long double>(decimals));
  if (static_cast<long long>(std::floor(scaled)) == scaled_printed) return PrefixMatch::truncated;
  if (static_cast<long long>(std::floor(scaled + 0.5L)) == scaled_printed) return PrefixMatch::rounded;
  return PrefixMatch::mismatch;
}

std::string to_string(PrefixMatch match) {
  switch (match) {
    case PrefixMatch::truncated: return "truncated";
    case PrefixMatch::rounded: return "rounded";
    case PrefixMatch::mismatch: return "mismatch";
  }
  return "mismatch";
}

}  // namespace diffbasis
