#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffbasis/fourier.hpp"
#include "diffbasis/interval.hpp"

namespace diffbasis {

// ---------------------------------------------------------------------------
// The contradiction chain at alpha = alpha_leech.
//
// With tightness, mu has a single atom of mass beta; after rotating it to 1,
// mu = (1 - beta) eta + beta delta_1 with eta_hat(1) = gamma. Writing
// x = Re eta_hat(2) and y = Re eta_hat(3), the moment identities give
// quadratic bands for x and y while positivity of the 3x3 and 4x4 real
// Toeplitz matrices of eta forces x >= 2 gamma^2 - 1 and y >= min(y1, y2).
// ---------------------------------------------------------------------------

struct ChainStep {
  std::string name;
  std::string claimed;  // printed constant, e.g. "-0.2172"
  double computed = 0.0;
  PrefixMatch match = PrefixMatch::mismatch;
  bool pass = false;
};

struct ChainCheck {
  std::string name;
  bool pass = false;
};

struct ProofChainReport {
  ThetaContext ctx;
  Interval x_quadratic;           // band for x from the k = 2 moment identity
  Interval x_interval;            // x_quadratic ∩ [2 gamma^2 - 1, 1]
  Interval y_interval_quadratic;  // band for y from the k = 3 moment identity
  double two_gamma_sq_minus_1 = 0.0;
  double y1_at_x_max = 0.0;
  double y2_at_x_max = 0.0;
  double y_lower_from_psd = 0.0;
  bool contradiction = false;
  std::vector<ChainStep> steps;
  std::vector<ChainCheck> checks;

  bool all_steps_pass() const;
};

ProofChainReport paper_chain(const ThetaContext& ctx);

// Closed forms used by the chain.
double det3_closed_form(double x, double gamma);
double det4_closed_form(double x, double y, double gamma);
double y1_bound(double x, double gamma);
double y2_bound(double x, double gamma);

// ---------------------------------------------------------------------------
// Per-alpha refutation over truncated moment sequences.
//
// Unknowns c_k = mu_hat(k), k = 1..K. The convolution identity gives
// zeta_hat(k) = ((2 + alpha)|c_k|^2 - 2 nu_hat(k)) / alpha. A candidate is
// discarded if |c_k| > 1, |zeta_hat(k)| > 1, or a Toeplitz matrix of mu or
// zeta fails to be PSD.
//
// When 2 nu_hat(1) + alpha <= 0 the k = 1 identity forces c_1 = 0 and
// zeta_hat(1) = 1 (or is infeasible), so zeta = delta_1, every zeta_hat(k)
// is 1, and mu has a unique atom of mass beta = sqrt(alpha / (2 + alpha)).
// Rotating it to 1, eta_hat(k) = (c_k - beta)/(1 - beta) must also be the
// moment sequence of a probability measure. This "pinned" mode carries the
// contradiction chain above into the box search.
// ---------------------------------------------------------------------------

enum class Condition {
  disk,               // |c_k| <= 1
  zeta_band,          // -1 <= zeta_hat(k) <= 1
  zeta_pinned,        // zeta_hat(k) = 1 (pinned mode)
  mu_real_psd,        // [Re c_{j-i}] PSD
  mu_hermitian_psd,   // [c_{j-i}] PSD
  zeta_psd,           // [zeta_hat(j-i)] PSD
  eta_disk,           // |eta_hat(k)| <= 1 (pinned mode)
  eta_real_psd,       // [Re eta_hat(j-i)] PSD (pinned mode)
  eta_hermitian_psd,  // [eta_hat(j-i)] PSD (pinned mode)
};

std::string to_string(Condition condition);

struct RefuteOptions {
  std::uint64_t box_budget = 1'000'000;
  // Subdivisions per free real dimension of the starting grid; reduced so
  // the grid uses at most an eighth of the budget.
  int initial_grid = 4;
  // Outward slack on every elimination test.
  double slack = 1e-9;
  unsigned workers = 1;
  bool record_trace = true;
  std::size_t trace_limit = 200'000;
};

struct EliminatedBox {
  std::vector<Interval> box;  // free real coordinates, see RefutationResult
  Condition reason = Condition::disk;
  int index = 0;  // coefficient k, or the Toeplitz size for PSD conditions
  // Test vector w with max over the box of w* T w < -slack (PSD conditions
  // only). Complex vectors are stored as interleaved (re, im).
  std::vector<double> certificate;
};

enum class RefuteStatus { refuted, unknown };
std::string to_string(RefuteStatus status);

struct RefutationResult {
  double alpha = 0.0;
  int order = 0;
  RefuteStatus status = RefuteStatus::unknown;
  std::uint64_t boxes_explored = 0;
  std::uint64_t boxes_pruned = 0;
  // Pinned mode: c_1 = 0, zeta_hat(1) = zeta1_pinned, atom mass beta.
  bool pinned = false;
  double zeta1_pinned = 0.0;
  double c1_radius = 0.0;  // sqrt(max(0, (2 nu_hat(1) + alpha)/(2 + alpha)))
  // Free coordinates: (Re c_k, Im c_k) for k = first_free..K, except that
  // away from pinned mode c_1 is rotated onto [0, 1] and has no Im slot.
  int first_free = 1;
  std::vector<Interval> domain;
  double slack = 0.0;
  std::vector<EliminatedBox> trace;
  bool trace_complete = true;
  std::string unknown_reason;
  std::optional<std::vector<std::complex<double>>> feasible_point;  // c_1..c_K
};

/// Throws std::domain_error if alpha <= 0 or K < 1.
RefutationResult refute_alpha(double alpha, int K, const RefuteOptions& options = {});

/// Re-checks a refutation: every trace box violates its stated condition
/// (using the stored certificates) and the boxes tile the domain.
bool verify_refutation(const RefutationResult& result);

/// All conditions at one point c_1..c_K, within `slack`.
bool point_satisfies(double alpha, const std::vector<std::complex<double>>& c, double slack);

// ---------------------------------------------------------------------------
// Feasibility side and the alpha scan.
// ---------------------------------------------------------------------------

struct FeasibilityOptions {
  int starts = 32;
  std::uint64_t seed = 1;
  int max_iterations = 4000;
  double margin = 1e-7;  // conditions are targeted with this much room
};

struct FeasibilityWitness {
  MomentSequence mu;    // c_0..c_K
  MomentSequence zeta;  // zeta_hat(0..K), real
};

/// Multi-start pattern search for c_1..c_K meeting every refuter condition.
/// Returns a witness only if both sequences pass toeplitz_psd.
std::optional<FeasibilityWitness> feasibility_search(double alpha, int K,
                                                     const FeasibilityOptions& options = {});

struct ImproveOptions {
  RefuteOptions refute;
  FeasibilityOptions feasibility;
  double initial_step = 0.05;
  int max_bisections = 40;
  double resolution = 1e-9;
  // Skip the box search at a probe where a feasibility witness exists.
  bool feasibility_shortcut = true;
};

struct BoundCertificate {
  double alpha_max_refuted = 0.0;
  double implied_lower_bound = 0.0;
  int K = 0;
  double epsilon_over_leech = 0.0;
  double alpha_min_unknown = 0.0;  // smallest probe left unrefuted
  int probes = 0;
  bool degenerate = false;  // alpha_leech itself was not refuted
  std::string warning;
  ImproveOptions settings;
};

/// Throws std::domain_error for K < 3.
BoundCertificate improved_bound(int K, const ImproveOptions& options = {});

}  // namespace diffbasis
