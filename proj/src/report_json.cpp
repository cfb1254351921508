#include "diffbasis/report_json.hpp"

namespace diffbasis {

namespace {

Json interval_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

Json header() {
  Json j;
  j["schema"] = kJsonSchema;
  return j;
}

Json context_json(const ThetaContext& ctx) {
  Json j;
  j["theta"] = ctx.theta;
  j["sinc_min"] = ctx.sinc_min;
  j["alpha_leech"] = ctx.alpha_leech;
  j["beta"] = ctx.beta;
  j["gamma"] = ctx.gamma;
  return j;
}

Json refute_options_json(const RefuteOptions& o) {
  Json j;
  j["box_budget"] = o.box_budget;
  j["initial_grid"] = o.initial_grid;
  j["slack"] = o.slack;
  j["trace_limit"] = o.trace_limit;
  return j;
}

}  // namespace

Json search_row(const SearchResult& r, bool stable) {
  Json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["witness"] = r.witness.marks();
  j["density"] = r.density;
  j["method"] = to_string(r.method);
  j["complete"] = r.complete;
  j["proven_lower"] = r.proven_lower;
  if (!stable) {
    j["nodes_explored"] = r.nodes_explored;
    j["elapsed_ms"] = r.elapsed_ms;
  }
  return j;
}

Json to_json(const SearchResult& r, bool stable) {
  Json j = header();
  j["kind"] = "search_result";
  j.update(search_row(r, stable));
  return j;
}

Json to_json(const ProofChainReport& r) {
  Json j = header();
  j["kind"] = "proof_chain";
  j["context"] = context_json(r.ctx);
  j["two_gamma_sq_minus_1"] = r.two_gamma_sq_minus_1;
  j["x_quadratic"] = interval_json(r.x_quadratic);
  j["x_interval"] = interval_json(r.x_interval);
  j["y1_at_x_max"] = r.y1_at_x_max;
  j["y2_at_x_max"] = r.y2_at_x_max;
  j["y_lower_from_psd"] = r.y_lower_from_psd;
  j["y_interval_quadratic"] = interval_json(r.y_interval_quadratic);
  j["contradiction"] = r.contradiction;
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"name", s.name},
                     {"claimed", s.claimed},
                     {"computed", s.computed},
                     {"match", to_string(s.match)},
                     {"pass", s.pass}});
  }
  j["steps"] = std::move(steps);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
  j["checks"] = std::move(checks);
  return j;
}

Json trace_line(const EliminatedBox& b) {
  Json j;
  Json box = Json::array();
  for (const auto& iv : b.box) box.push_back(interval_json(iv));
  j["box"] = std::move(box);
  j["reason"] = to_string(b.reason);
  j["index"] = b.index;
  if (!b.certificate.empty()) j["certificate"] = b.certificate;
  return j;
}

Json to_json(const RefutationResult& r) {
  Json j = header();
  j["kind"] = "refutation";
  j["alpha"] = r.alpha;
  j["order"] = r.order;
  j["status"] = to_string(r.status);
  j["boxes_explored"] = r.boxes_explored;
  j["boxes_pruned"] = r.boxes_pruned;
  j["pinned"] = r.pinned;
  if (r.pinned) j["zeta1_pinned"] = r.zeta1_pinned;
  j["c1_radius"] = r.c1_radius;
  j["first_free"] = r.first_free;
  Json domain = Json::array();
  for (const auto& iv : r.domain) domain.push_back(interval_json(iv));
  j["domain"] = std::move(domain);
  j["slack"] = r.slack;
  j["trace_boxes"] = r.trace.size();
  j["trace_complete"] = r.trace_complete;
  if (r.status == RefuteStatus::unknown) j["unknown_reason"] = r.unknown_reason;
  if (r.feasible_point) {
    Json point = Json::array();
    for (const auto& c : *r.feasible_point) point.push_back({c.real(), c.imag()});
    j["feasible_point"] = std::move(point);
  }
  return j;
}

Json to_json(const BoundCertificate& c, bool stable) {
  Json j = header();
  j["kind"] = "bound_certificate";
  j["K"] = c.K;
  j["alpha_max_refuted"] = c.alpha_max_refuted;
  j["implied_lower_bound"] = c.implied_lower_bound;
  j["epsilon_over_leech"] = c.epsilon_over_leech;
  j["alpha_min_unknown"] = c.alpha_min_unknown;
  j["probes"] = c.probes;
  j["degenerate"] = c.degenerate;
  if (!c.warning.empty()) j["warning"] = c.warning;
  Json s;
  s["refute"] = refute_options_json(c.settings.refute);
  s["feasibility"] = {{"starts", c.settings.feasibility.starts},
                      {"seed", c.settings.feasibility.seed},
                      {"max_iterations", c.settings.feasibility.max_iterations},
                      {"margin", c.settings.feasibility.margin}};
  s["initial_step"] = c.settings.initial_step;
  s["max_bisections"] = c.settings.max_bisections;
  s["resolution"] = c.settings.resolution;
  s["feasibility_shortcut"] = c.settings.feasibility_shortcut;
  if (!stable) s["workers"] = c.settings.refute.workers;
  j["settings"] = std::move(s);
  return j;
}

Json error_json(const std::string& message, int exit_code) {
  Json j = header();
  j["kind"] = "error";
  j["error"] = message;
  j["exit_code"] = exit_code;
  return j;
}

}  // namespace diffbasis
