#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "diffbasis/certifier.hpp"

namespace diffbasis {

namespace {

using Box = std::vector<Interval>;
using cplx = std::complex<double>;

// Fixed data of one (alpha, K) system and the layout of its free coordinates.
struct System {
  double alpha = 0.0;
  int K = 0;
  double slack = 0.0;
  bool pinned = false;
  double beta = 0.0;
  std::vector<double> nu;       // nu_hat(k), k = 0..K
  std::vector<int> re_slot;     // coordinate of Re c_k, or -1 when fixed at 0
  std::vector<int> im_slot;     // coordinate of Im c_k, or -1 when fixed at 0
  Box domain;
  int first_free = 1;

  System(double a, int order, double s) : alpha(a), K(order), slack(s) {
    const double theta = theta_star().theta;
    nu.resize(static_cast<std::size_t>(K + 1));
    for (int k = 0; k <= K; ++k) nu[static_cast<std::size_t>(k)] = nu_hat(k, theta);
    pinned = 2.0 * nu[1] + alpha <= 0.0;
    beta = std::sqrt(alpha / (2.0 + alpha));
    re_slot.assign(static_cast<std::size_t>(K + 1), -1);
    im_slot.assign(static_cast<std::size_t>(K + 1), -1);
    first_free = pinned ? 2 : 1;
    for (int k = first_free; k <= K; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      re_slot[uk] = static_cast<int>(domain.size());
      // Rotation puts c_1 on [0, 1]; conjugation then allows Im >= 0 for the
      // next free coefficient.
      domain.push_back(k == 1 ? Interval{0.0, 1.0} : Interval{-1.0, 1.0});
      if (k == 1) continue;
      im_slot[uk] = static_cast<int>(domain.size());
      domain.push_back(k == 2 ? Interval{0.0, 1.0} : Interval{-1.0, 1.0});
    }
  }

  Interval coord(const Box& box, int slot) const {
    return slot < 0 ? Interval{0.0, 0.0} : box[static_cast<std::size_t>(slot)];
  }
};

// Interval ranges and centre values of the Toeplitz entries 0..K of one
// matrix family. Entry 0 is always exactly 1.
struct Entries {
  std::vector<Interval> re, im;
  std::vector<double> re_mid, im_mid;
  bool complex = false;
};

enum class Family { mu, zeta, eta };

Entries build_entries(const System& sys, const Box& box, Family family) {
  const auto n = static_cast<std::size_t>(sys.K + 1);
  Entries e;
  e.re.assign(n, Interval{1.0, 1.0});
  e.im.assign(n, Interval{0.0, 0.0});
  e.re_mid.assign(n, 1.0);
  e.im_mid.assign(n, 0.0);
  e.complex = family != Family::zeta;
  const double a = sys.alpha;
  const double b = sys.beta;
  for (int k = 1; k <= sys.K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const Interval re = sys.coord(box, sys.re_slot[uk]);
    const Interval im = sys.coord(box, sys.im_slot[uk]);
    switch (family) {
      case Family::mu:
        e.re[uk] = re;
        e.im[uk] = im;
        e.re_mid[uk] = re.mid();
        e.im_mid[uk] = im.mid();
        break;
      case Family::zeta: {
        const Interval sq = square(re) + square(im);
        e.re[uk] = (1.0 / a) * ((2.0 + a) * sq - 2.0 * sys.nu[uk]);
        const double sq_mid = re.mid() * re.mid() + im.mid() * im.mid();
        e.re_mid[uk] = ((2.0 + a) * sq_mid - 2.0 * sys.nu[uk]) / a;
        break;
      }
      case Family::eta:
        e.re[uk] = (1.0 / (1.0 - b)) * (re - b);
        e.im[uk] = (1.0 / (1.0 - b)) * im;
        e.re_mid[uk] = (re.mid() - b) / (1.0 - b);
        e.im_mid[uk] = im.mid() / (1.0 - b);
        break;
    }
  }
  return e;
}

// max over the box of w^T T w for real w, T(i, j) = entry |j - i|.
double real_form_upper(const Entries& e, const std::vector<double>& w) {
  const std::size_t n = w.size();
  double total = 0.0;
  for (double wi : w) total += wi * wi;
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) s += w[i] * w[i + k];
    total += 2.0 * std::max(s * e.re[k].lo, s * e.re[k].hi);
  }
  return total;
}

// max over the box of w* T w, T(i, j) = c_{j-i}; w interleaved (re, im).
double hermitian_form_upper(const Entries& e, const std::vector<double>& w) {
  const std::size_t n = w.size() / 2;
  auto at = [&](std::size_t i) { return cplx(w[2 * i], w[2 * i + 1]); };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::norm(at(i));
  for (std::size_t k = 1; k < n; ++k) {
    cplx h = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) h += std::conj(at(i)) * at(i + k);
    total += 2.0 * (std::max(h.real() * e.re[k].lo, h.real() * e.re[k].hi) +
                    std::max(-h.imag() * e.im[k].lo, -h.imag() * e.im[k].hi));
  }
  return total;
}

// The eigenvector for the smallest eigenvalue of the centre matrix of the
// given size, if it proves the whole box non-PSD.
std::optional<std::vector<double>> psd_cut(const Entries& e, int size, bool hermitian,
                                           double slack) {
  const auto n = static_cast<Eigen::Index>(size);
  if (hermitian) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j > i ? j - i : i - j);
        const cplx c(e.re_mid[k], e.im_mid[k]);
        m(i, j) = j >= i ? c : std::conj(c);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.eigenvalues()(0) >= -slack) return std::nullopt;
    std::vector<double> w(static_cast<std::size_t>(2 * n));
    for (Eigen::Index i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(2 * i)] = solver.eigenvectors()(i, 0).real();
      w[static_cast<std::size_t>(2 * i + 1)] = solver.eigenvectors()(i, 0).imag();
    }
    if (hermitian_form_upper(e, w) < -slack) return w;
    return std::nullopt;
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = e.re_mid[static_cast<std::size_t>(j > i ? j - i : i - j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.eigenvalues()(0) >= -slack) return std::nullopt;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, 0);
  if (real_form_upper(e, w) < -slack) return w;
  return std::nullopt;
}

Interval squared_modulus(const System& sys, const Box& box, int k) {
  const auto uk = static_cast<std::size_t>(k);
  return square(sys.coord(box, sys.re_slot[uk])) + square(sys.coord(box, sys.im_slot[uk]));
}

Interval zeta_range(const System& sys, const Box& box, int k) {
  const double a = sys.alpha;
  return (1.0 / a) * ((2.0 + a) * squared_modulus(sys, box, k) - 2.0 * sys.nu[static_cast<std::size_t>(k)]);
}

// Per-coefficient tests; true if the condition proves the box empty.
bool scalar_violated(const System& sys, const Box& box, Condition cond, int k) {
  const double s = sys.slack;
  switch (cond) {
    case Condition::disk:
      return squared_modulus(sys, box, k).lo > 1.0 + s;
    case Condition::zeta_band: {
      const Interval z = zeta_range(sys, box, k);
      return z.lo > 1.0 + s || z.hi < -1.0 - s;
    }
    case Condition::zeta_pinned: {
      const Interval z = zeta_range(sys, box, k);
      return z.lo > 1.0 + s || z.hi < 1.0 - s;
    }
    case Condition::eta_disk: {
      const auto uk = static_cast<std::size_t>(k);
      const Interval d = square(sys.coord(box, sys.re_slot[uk]) - sys.beta) +
                         square(sys.coord(box, sys.im_slot[uk]));
      return d.lo > (1.0 - sys.beta) * (1.0 - sys.beta) + s;
    }
    default:
      return false;
  }
}

struct PsdFamily {
  Condition cond;
  Family family;
  bool hermitian;
};

std::vector<PsdFamily> psd_families(const System& sys) {
  std::vector<PsdFamily> out{{Condition::mu_real_psd, Family::mu, false},
                             {Condition::mu_hermitian_psd, Family::mu, true}};
  if (sys.pinned) {
    out.push_back({Condition::eta_real_psd, Family::eta, false});
    out.push_back({Condition::eta_hermitian_psd, Family::eta, true});
  } else {
    out.push_back({Condition::zeta_psd, Family::zeta, false});
  }
  return out;
}

std::optional<EliminatedBox> try_eliminate(const System& sys, const Box& box) {
  auto scalar = [&](Condition cond, int k) -> std::optional<EliminatedBox> {
    if (!scalar_violated(sys, box, cond, k)) return std::nullopt;
    return EliminatedBox{box, cond, k, {}};
  };
  for (int k = 1; k <= sys.K; ++k) {
    if (auto hit = scalar(Condition::disk, k)) return hit;
  }
  for (int k = 1; k <= sys.K; ++k) {
    if (auto hit = scalar(sys.pinned ? Condition::zeta_pinned : Condition::zeta_band, k)) return hit;
  }
  if (sys.pinned) {
    for (int k = 2; k <= sys.K; ++k) {
      if (auto hit = scalar(Condition::eta_disk, k)) return hit;
    }
  }
  // Full size first, then the leading principal blocks, so every lower-order
  // condition is also tried.
  for (const auto& f : psd_families(sys)) {
    const Entries e = build_entries(sys, box, f.family);
    for (int size = sys.K + 1; size >= 2; --size) {
      if (auto w = psd_cut(e, size, f.hermitian, sys.slack)) {
        return EliminatedBox{box, f.cond, size, std::move(*w)};
      }
    }
  }
  return std::nullopt;
}

double min_eig(const Entries& e, int size, bool hermitian) {
  const auto n = static_cast<Eigen::Index>(size);
  if (hermitian) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j > i ? j - i : i - j);
        const cplx c(e.re_mid[k], e.im_mid[k]);
        m(i, j) = j >= i ? c : std::conj(c);
      }
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = e.re_mid[static_cast<std::size_t>(j > i ? j - i : i - j)];
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

// Every condition at the single point given by a degenerate box.
bool point_ok(const System& sys, const Box& point) {
  for (int k = 1; k <= sys.K; ++k) {
    if (scalar_violated(sys, point, Condition::disk, k)) return false;
    if (scalar_violated(sys, point, sys.pinned ? Condition::zeta_pinned : Condition::zeta_band, k)) {
      return false;
    }
    if (sys.pinned && k >= 2 && scalar_violated(sys, point, Condition::eta_disk, k)) return false;
  }
  for (const auto& f : psd_families(sys)) {
    if (min_eig(build_entries(sys, point, f.family), sys.K + 1, f.hermitian) < -sys.slack) return false;
  }
  return true;
}

Box centre_of(const Box& box) {
  Box c;
  c.reserve(box.size());
  for (const auto& iv : box) c.push_back({iv.mid(), iv.mid()});
  return c;
}

std::vector<cplx> coefficients_at(const System& sys, const Box& point) {
  std::vector<cplx> c;
  for (int k = 1; k <= sys.K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    c.emplace_back(sys.coord(point, sys.re_slot[uk]).lo, sys.coord(point, sys.im_slot[uk]).lo);
  }
  return c;
}

int grid_per_dim(const RefuteOptions& options, std::size_t dims) {
  if (dims == 0) return 1;
  const double cap = std::max(1.0, static_cast<double>(options.box_budget) / 8.0);
  int g = std::max(1, options.initial_grid);
  while (g > 1 && std::pow(static_cast<double>(g), static_cast<double>(dims)) > cap) --g;
  return g;
}

std::vector<Box> initial_grid(const Box& domain, int g) {
  std::vector<Box> boxes{Box{}};
  for (const auto& iv : domain) {
    std::vector<Box> next;
    next.reserve(boxes.size() * static_cast<std::size_t>(g));
    for (const auto& b : boxes) {
      for (int i = 0; i < g; ++i) {
        Box nb = b;
        const double lo = iv.lo + iv.width() * i / g;
        const double hi = i + 1 == g ? iv.hi : iv.lo + iv.width() * (i + 1) / g;
        nb.push_back({lo, hi});
        next.push_back(std::move(nb));
      }
    }
    boxes = std::move(next);
  }
  return boxes;
}

struct Verdict {
  enum Kind { eliminated, feasible, split, stuck } kind = split;
  std::optional<EliminatedBox> elim;
};

Verdict judge(const System& sys, const Box& box) {
  if (auto e = try_eliminate(sys, box)) return {Verdict::eliminated, std::move(e)};
  if (point_ok(sys, centre_of(box))) return {Verdict::feasible, std::nullopt};
  if (box.empty()) return {Verdict::stuck, std::nullopt};
  return {Verdict::split, std::nullopt};
}

std::pair<Box, Box> bisect(const Box& box) {
  std::size_t widest = 0;
  for (std::size_t i = 1; i < box.size(); ++i) {
    if (box[i].width() > box[widest].width()) widest = i;
  }
  Box a = box, b = box;
  const double mid = box[widest].mid();
  a[widest].hi = mid;
  b[widest].lo = mid;
  return {std::move(a), std::move(b)};
}

bool condition_holds(const System& sys, const EliminatedBox& e) {
  switch (e.reason) {
    case Condition::disk:
    case Condition::zeta_band:
    case Condition::zeta_pinned:
    case Condition::eta_disk:
      return scalar_violated(sys, e.box, e.reason, e.index);
    default: break;
  }
  Family family = Family::mu;
  bool hermitian = false;
  switch (e.reason) {
    case Condition::mu_real_psd: break;
    case Condition::mu_hermitian_psd: hermitian = true; break;
    case Condition::zeta_psd: family = Family::zeta; break;
    case Condition::eta_real_psd: family = Family::eta; break;
    case Condition::eta_hermitian_psd: family = Family::eta; hermitian = true; break;
    default: return false;
  }
  if ((family == Family::eta) != sys.pinned || (family == Family::zeta && sys.pinned)) return false;
  const std::size_t expected = static_cast<std::size_t>(e.index) * (hermitian ? 2 : 1);
  if (e.index < 2 || e.index > sys.K + 1 || e.certificate.size() != expected) return false;
  const Entries entries = build_entries(sys, e.box, family);
  const double upper = hermitian ? hermitian_form_upper(entries, e.certificate)
                                 : real_form_upper(entries, e.certificate);
  // The form must be negative for the certificate direction itself.
  double norm = 0.0;
  for (double v : e.certificate) norm += v * v;
  return norm > 0.5 && upper < -sys.slack;
}

double volume(const Box& box) {
  double v = 1.0;
  for (const auto& iv : box) v *= iv.width();
  return v;
}

}  // namespace

std::string to_string(Condition condition) {
  switch (condition) {
    case Condition::disk: return "disk";
    case Condition::zeta_band: return "zeta_band";
    case Condition::zeta_pinned: return "zeta_pinned";
    case Condition::mu_real_psd: return "mu_real_psd";
    case Condition::mu_hermitian_psd: return "mu_hermitian_psd";
    case Condition::zeta_psd: return "zeta_psd";
    case Condition::eta_disk: return "eta_disk";
    case Condition::eta_real_psd: return "eta_real_psd";
    case Condition::eta_hermitian_psd: return "eta_hermitian_psd";
  }
  return "unknown";
}

std::string to_string(RefuteStatus status) {
  return status == RefuteStatus::refuted ? "refuted" : "unknown";
}

RefutationResult refute_alpha(double alpha, int K, const RefuteOptions& options) {
  if (!(alpha > 0.0)) throw std::domain_error("refute_alpha needs alpha > 0");
  if (K < 1) throw std::domain_error("refute_alpha needs K >= 1");
  const System sys(alpha, K, options.slack);

  RefutationResult result;
  result.alpha = alpha;
  result.order = K;
  result.pinned = sys.pinned;
  result.zeta1_pinned = -2.0 * sys.nu[1] / alpha;
  result.c1_radius = std::sqrt(std::max(0.0, (2.0 * sys.nu[1] + alpha) / (2.0 + alpha)));
  result.first_free = sys.first_free;
  result.domain = sys.domain;
  result.slack = options.slack;

  std::vector<Box> frontier = initial_grid(sys.domain, grid_per_dim(options, sys.domain.size()));
  const unsigned workers = std::max(1U, options.workers);

  while (!frontier.empty()) {
    std::size_t take = frontier.size();
    bool budget_hit = false;
    if (result.boxes_explored + take > options.box_budget) {
      take = static_cast<std::size_t>(options.box_budget - result.boxes_explored);
      budget_hit = true;
    }

    std::vector<Verdict> verdicts(take);
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) verdicts[i] = judge(sys, frontier[i]);
    };
    if (workers == 1 || take < 64) {
      work(0, take);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (take + workers - 1) / workers;
      for (std::size_t begin = 0; begin < take; begin += chunk) {
        pool.emplace_back(work, begin, std::min(take, begin + chunk));
      }
    }

    std::vector<Box> next;
    for (std::size_t i = 0; i < take; ++i) {
      ++result.boxes_explored;
      Verdict& v = verdicts[i];
      if (v.kind == Verdict::feasible) {
        result.unknown_reason = "box centre satisfies every condition";
        result.feasible_point = coefficients_at(sys, centre_of(frontier[i]));
        return result;
      }
      if (v.kind == Verdict::stuck) {
        result.unknown_reason = "degenerate domain admits no split";
        return result;
      }
      if (v.kind == Verdict::eliminated) {
        ++result.boxes_pruned;
        if (options.record_trace) {
          if (result.trace.size() < options.trace_limit) {
            result.trace.push_back(std::move(*v.elim));
          } else {
            result.trace_complete = false;
          }
        }
        continue;
      }
      auto [a, b] = bisect(frontier[i]);
      next.push_back(std::move(a));
      next.push_back(std::move(b));
    }
    if (budget_hit) {
      result.unknown_reason = "box budget exhausted";
      return result;
    }
    frontier = std::move(next);
  }
  result.status = RefuteStatus::refuted;
  if (!options.record_trace) result.trace_complete = false;
  return result;
}

bool verify_refutation(const RefutationResult& result) {
  if (result.status != RefuteStatus::refuted || !result.trace_complete) return false;
  const System sys(result.alpha, result.order, result.slack);
  if (sys.domain != result.domain || sys.pinned != result.pinned) return false;
  double covered = 0.0;
  for (const auto& e : result.trace) {
    if (e.box.size() != sys.domain.size()) return false;
    for (std::size_t i = 0; i < e.box.size(); ++i) {
      if (e.box[i].lo < sys.domain[i].lo || e.box[i].hi > sys.domain[i].hi || e.box[i].empty()) {
        return false;
      }
    }
    if (!condition_holds(sys, e)) return false;
    covered += volume(e.box);
  }
  const double total = volume(sys.domain);
  if (std::fabs(covered - total) > 1e-12 * std::max(1.0, total)) return false;
  // Equal total volume plus pairwise disjoint interiors means the boxes tile
  // the domain. The quadratic check is only run on modest traces.
  if (result.trace.size() <= 4000) {
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
      for (std::size_t j = i + 1; j < result.trace.size(); ++j) {
        bool overlap = true;
        for (std::size_t d = 0; d < sys.domain.size() && overlap; ++d) {
          const auto& a = result.trace[i].box[d];
          const auto& b = result.trace[j].box[d];
          overlap = std::min(a.hi, b.hi) > std::max(a.lo, b.lo);
        }
        if (overlap && !sys.domain.empty()) return false;
      }
    }
  }
  return true;
}

bool point_satisfies(double alpha, const std::vector<cplx>& c, double slack) {
  if (!(alpha > 0.0) || c.empty()) throw std::domain_error("point_satisfies needs alpha > 0, K >= 1");
  const System sys(alpha, static_cast<int>(c.size()), slack);
  // Evaluate without the rotation/conjugation normalisation: all conditions
  // depend on c only through |c_k| and the Toeplitz spectra.
  System free = sys;
  free.domain.clear();
  Box point;
  for (int k = 1; k <= sys.K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const cplx ck = c[uk - 1];
    if (sys.pinned && k == 1) {
      if (std::abs(ck) > slack) return false;
      free.re_slot[uk] = free.im_slot[uk] = -1;
      continue;
    }
    free.re_slot[uk] = static_cast<int>(point.size());
    point.push_back({ck.real(), ck.real()});
    free.im_slot[uk] = static_cast<int>(point.size());
    point.push_back({ck.imag(), ck.imag()});
  }
  return point_ok(free, point);
}

}  // namespace diffbasis
