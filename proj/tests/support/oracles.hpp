#pragma once

// Independent reference computations used only by tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

// nu is the normalised arc length on [-theta, theta] wrapped onto the
// circle; nu_hat(k) = (1 / 2 theta) * integral of cos(k t), by Simpson's rule.
inline double simpson_nu_hat(long k, double theta, int panels = 20000) {
  if (panels % 2) ++panels;
  const double a = -theta;
  const double h = 2.0 * theta / panels;
  double sum = std::cos(k * a) + std::cos(k * theta);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 ? 4.0 : 2.0) * std::cos(k * (a + i * h));
  }
  return sum * h / 3.0 / (2.0 * theta);
}

// Symmetric Toeplitz matrix with first row r.
inline Eigen::MatrixXd toeplitz(const std::vector<double>& r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = r[static_cast<std::size_t>(std::abs(i - j))];
  return m;
}

inline double numeric_det(const std::vector<double>& r) { return toeplitz(r).partialPivLu().determinant(); }

// Moments of a random discrete probability measure on the circle.
inline std::vector<std::complex<double>> random_measure_moments(std::mt19937_64& rng, int atoms, int K) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(atoms));
  std::vector<double> x(static_cast<std::size_t>(atoms));
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    w[i] = unit(rng);
    x[i] = 2.0 * M_PI * unit(rng);
    total += w[i];
  }
  std::vector<std::complex<double>> c(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) {
    for (int i = 0; i < atoms; ++i) c[k] += w[i] / total * std::polar(1.0, -k * x[i]);
  }
  c[0] = 1.0;
  return c;
}

}  // namespace oracles
