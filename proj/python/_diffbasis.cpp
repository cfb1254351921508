#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "diffbasis/certifier.hpp"
#include "diffbasis/cli.hpp"
#include "diffbasis/constructions.hpp"
#include "diffbasis/exact_search.hpp"
#include "diffbasis/fourier.hpp"
#include "diffbasis/report_json.hpp"

namespace py = pybind11;
using namespace diffbasis;

// Structured results cross the boundary as JSON text; the Python side
// decodes them, so both languages share one schema.
PYBIND11_MODULE(_diffbasis, m) {
  m.doc() = "Difference bases and Fourier lower-bound certificates";

  m.def("theta_star", [] {
    const auto c = theta_star();
    return py::dict(py::arg("theta") = c.theta, py::arg("sinc_min") = c.sinc_min,
                    py::arg("alpha_leech") = c.alpha_leech, py::arg("beta") = c.beta,
                    py::arg("gamma") = c.gamma);
  });
  m.def("nu_hat", &nu_hat, py::arg("k"), py::arg("theta"));
  m.def("leech_rr_bound", &leech_rr_bound);
  m.def("redei_renyi_bound", &redei_renyi_bound);
  m.def("toeplitz_psd", [](const std::vector<std::complex<double>>& c) {
    const auto r = toeplitz_psd(MomentSequence(c));
    return py::make_tuple(r.psd, r.min_eigenvalue);
  }, py::arg("coeffs"));

  m.def("combinatorial_lower_bound", &combinatorial_lower_bound, py::arg("n"));
  m.def("trivial_basis", [](Mark n) {
    const auto r = trivial_basis(n);
    return std::vector<Mark>(r.marks().begin(), r.marks().end());
  }, py::arg("n"));
  m.def("covers", [](std::vector<Mark> marks, Mark n) { return coverage(Ruler(std::move(marks)), n).covered; },
        py::arg("marks"), py::arg("n"));

  m.def("_min_basis", [](Mark n, unsigned workers, double timeout) {
    SearchOptions opts;
    opts.workers = workers;
    opts.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000.0));
    SearchResult r;
    {
      py::gil_scoped_release release;
      r = min_basis(n, opts);
    }
    return to_json(r, false).dump();
  }, py::arg("n"), py::arg("workers") = 1, py::arg("timeout") = 60.0);
  m.def("_brute_force_min_basis", [](Mark n) { return to_json(brute_force_min_basis(n), false).dump(); },
        py::arg("n"));

  m.def("_paper_chain", [] { return to_json(paper_chain(theta_star())).dump(); });
  m.def("_refute_alpha", [](double alpha, int K, std::uint64_t budget, unsigned workers) {
    RefuteOptions opts;
    opts.box_budget = budget;
    opts.workers = workers;
    RefutationResult r;
    bool verified = false;
    {
      py::gil_scoped_release release;
      r = refute_alpha(alpha, K, opts);
      verified = r.status == RefuteStatus::refuted && verify_refutation(r);
    }
    Json j = to_json(r);
    j["verified"] = verified;
    return j.dump();
  }, py::arg("alpha"), py::arg("K"), py::arg("budget") = 1'000'000, py::arg("workers") = 1);
  m.def("_improved_bound", [](int K, std::uint64_t budget, std::uint64_t seed) {
    ImproveOptions opts;
    opts.refute.box_budget = budget;
    opts.feasibility.seed = seed;
    BoundCertificate c;
    {
      py::gil_scoped_release release;
      c = improved_bound(K, opts);
    }
    return to_json(c, true).dump();
  }, py::arg("K"), py::arg("budget") = 1'000'000, py::arg("seed") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));

}
