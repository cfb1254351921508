#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "diffbasis/interval.hpp"

namespace diffbasis {

/// The minimiser of sin(t)/t and the constants derived from it.
struct ThetaContext {
  double theta = 0.0;        // root of tan t = t in (pi, 3pi/2)
  double sinc_min = 0.0;     // sin(theta)/theta
  double alpha_leech = 0.0;  // -2 sinc_min
  double beta = 0.0;         // sqrt(alpha / (2 + alpha))
  double gamma = 0.0;        // -beta / (1 - beta)
};

/// Bisection on tan t - t over [pi + 0.1, 3pi/2 - 0.01] down to `tol`, then
/// Newton polishing. Throws std::domain_error unless tol is in (0, 1e-6].
ThetaContext theta_star(double tol = 1e-12);

/// Fourier coefficients of the uniform measure on the arc exp(i theta a),
/// a in [-1, 1]: 1 at k = 0, sin(k theta)/(k theta) otherwise.
double nu_hat(long k, double theta);

/// 2 - 2 min sin(t)/t.
double leech_rr_bound();
/// 2 + 4/(3 pi).
double redei_renyi_bound();

/// Truncated Fourier coefficients c_0..c_K of a circle measure, c_0 = 1.
/// Negative indices resolve to conjugates.
class MomentSequence {
 public:
  /// Throws std::invalid_argument if coeffs is empty or c_0 != 1.
  explicit MomentSequence(std::vector<std::complex<double>> coeffs);
  static MomentSequence from_real(const std::vector<double>& coeffs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::complex<double> at(long k) const;
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

  /// |c_k| <= 1 + tol for every k.
  bool valid(double tol = 1e-12) const;

 private:
  std::vector<std::complex<double>> coeffs_;
};

/// A(i, j) = c_{j-i}.
Eigen::MatrixXcd hermitian_toeplitz(const MomentSequence& seq);
/// A(i, j) = Re c_{j-i}.
Eigen::MatrixXd real_toeplitz(const MomentSequence& seq);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;  // threshold actually applied
  std::string reason;      // empty when psd
};

/// Smallest eigenvalue of the Hermitian Toeplitz matrix against -tol. When
/// tol is not given, 1e-10 times the matrix 1-norm is used. A sequence with
/// some |c_k| > 1 + tol is rejected with a reason.
PsdReport toeplitz_psd(const MomentSequence& seq, std::optional<double> tol = std::nullopt);
/// Same check on the real-part Toeplitz matrix.
PsdReport real_toeplitz_psd(const MomentSequence& seq, std::optional<double> tol = std::nullopt);

/// Solutions t of (1-beta) t^2 + 2 beta t - (1+beta) nu_hat(k, theta) <= 0,
/// or nullopt when the discriminant is negative. Throws std::domain_error
/// for k < 2.
std::optional<Interval> quadratic_root_interval(long k, const ThetaContext& ctx);

/// How a printed constant like "-0.2172" relates to a computed value.
enum class PrefixMatch { truncated, rounded, mismatch };

/// `printed` with d decimals matches if it is the d-decimal truncation of
/// `computed` (digits are a literal prefix), or failing that its d-decimal
/// rounding.
PrefixMatch check_printed_prefix(double computed, std::string_view printed);
std::string to_string(PrefixMatch match);

}  // namespace diffbasis
