#include "diffbasis/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "diffbasis/certifier.hpp"
#include "diffbasis/constructions.hpp"
#include "diffbasis/exact_search.hpp"
#include "diffbasis/fourier.hpp"
#include "diffbasis/report_json.hpp"

namespace diffbasis::cli {

namespace {

struct Config {
  bool json = false;
  bool stable = false;
  unsigned workers = 1;
  std::uint64_t seed = 1;

  Mark n = 0;
  std::string method = "bnb";
  double timeout_s = 60.0;
  Mark lo = 0;
  Mark hi = 0;
  std::string out_file;
  std::string cache_dir;

  double alpha = 0.0;
  int order = 3;
  std::uint64_t budget = 0;
  std::string trace_file;
};

class Command {
 public:
  Command(const Config& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int bounds();
  int ruler_find();
  int ruler_table();
  int certify_chain();
  int certify_refute();
  int certify_scan();

  int fail(const std::string& message, int code) {
    if (cfg_.json) out_ << error_json(message, code).dump() << '\n';
    else err_ << "error: " << message << '\n';
    return code;
  }

 private:
  SearchOptions search_options() const {
    SearchOptions opts;
    opts.workers = cfg_.workers;
    opts.timeout = std::chrono::milliseconds(static_cast<long long>(cfg_.timeout_s * 1000.0));
    return opts;
  }

  ImproveOptions improve_options(std::uint64_t budget) const {
    ImproveOptions opts;
    opts.refute.workers = cfg_.workers;
    opts.refute.box_budget = budget;
    opts.feasibility.seed = cfg_.seed;
    return opts;
  }

  std::unique_ptr<ResultCache> open_cache() {
    std::string dir = cfg_.cache_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("DIFFBASIS_CACHE_DIR")) dir = env;
    }
    if (dir.empty()) return nullptr;
    auto cache = std::make_unique<ResultCache>(dir);
    for (const auto& w : cache->warnings()) err_ << "warning: " << w << '\n';
    return cache;
  }

  void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

  const Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string fixed(double v, int decimals = 10) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

std::string prefix_status(double v, const char* printed) {
  return to_string(check_printed_prefix(v, printed));
}

int Command::bounds() {
  const double rr = redei_renyi_bound();
  const double lrr = leech_rr_bound();
  const std::uint64_t budget = cfg_.budget ? cfg_.budget : 20'000;
  const BoundCertificate cert = improved_bound(cfg_.order, improve_options(budget));

  struct Row {
    const char* side;
    const char* name;
    std::optional<double> value;
    const char* printed;
    std::string provenance;
  };
  const std::vector<Row> rows = {
      {"lower", "redei_renyi", rr, "2.4244", "computed 2 + 4/(3 pi), check " + prefix_status(rr, "2.4244")},
      {"lower", "leech_redei_renyi", lrr, "2.4344",
       "computed 2 - 2 sin(theta*)/theta*, check " + prefix_status(lrr, "2.4344")},
      {"lower", "moment_refuter", cert.implied_lower_bound, "",
       "computed 2 + alpha_max_refuted, K=" + std::to_string(cert.K) + " budget=" + std::to_string(budget) +
           (cert.degenerate ? " (degenerate)" : "")},
      {"upper", "golay", std::nullopt, "2.6458", "literature value (construction not implemented)"},
      {"upper", "leech", std::nullopt, "2.6646", "literature value (construction not implemented)"},
      {"upper", "redei_renyi", 8.0 / 3.0, "2.6666", "literature value (construction not implemented)"},
  };

  if (cfg_.json) {
    Json j;
    j["schema"] = kJsonSchema;
    j["kind"] = "bounds";
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["side"] = r.side;
      row["name"] = r.name;
      if (r.value) row["value"] = *r.value;
      row["printed"] = r.printed;
      row["provenance"] = r.provenance;
      arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    j["improved"] = to_json(cert, cfg_.stable);
    emit(j);
  } else {
    for (const auto& r : rows) {
      const std::string value = r.value ? fixed(*r.value) : std::string(r.printed) + "...";
      out_ << std::left << std::setw(6) << r.side << std::setw(20) << r.name << std::setw(14) << value
           << r.provenance << '\n';
    }
  }
  return cert.degenerate ? incomplete : ok;
}

int Command::ruler_find() {
  if (cfg_.n < 1) return fail("n must be at least 1", usage);
  SearchResult result;
  const SearchMethod method = parse_search_method(cfg_.method);
  if (method == SearchMethod::oracle) {
    if (cfg_.n > kOracleCap) {
      return fail("oracle supports n <= " + std::to_string(kOracleCap) + "; use --method bnb", usage);
    }
    result = brute_force_min_basis(cfg_.n);
  } else {
    auto cache = open_cache();
    std::optional<SearchResult> hit = cache ? cache->find(cfg_.n) : std::nullopt;
    if (hit) {
      result = *hit;
    } else {
      if (cfg_.n > kMaxSearchTarget) {
        return fail("bnb supports n <= " + std::to_string(kMaxSearchTarget), usage);
      }
      result = min_basis(cfg_.n, search_options());
      if (cache) cache->store(result);
    }
  }
  if (cfg_.json) {
    emit(to_json(result, cfg_.stable));
  } else {
    out_ << "n=" << result.n << " d=" << result.d << " witness=" << result.witness.to_string();
    if (!result.complete) out_ << " incomplete proven_lower=" << result.proven_lower;
    out_ << '\n';
  }
  return result.complete ? ok : incomplete;
}

int Command::ruler_table() {
  if (cfg_.lo < 1 || cfg_.hi < cfg_.lo) return fail("need 1 <= lo <= hi", usage);
  if (cfg_.hi > kMaxSearchTarget) return fail("bnb supports n <= " + std::to_string(kMaxSearchTarget), usage);
  auto cache = open_cache();
  const auto rows = density_table(cfg_.lo, cfg_.hi, search_options(), cache.get());
  bool complete = true;
  for (const auto& r : rows) complete = complete && r.complete;

  if (!cfg_.out_file.empty()) {
    std::ofstream file(cfg_.out_file, std::ios::binary);
    if (!file) return fail("cannot write " + cfg_.out_file, usage);
    file << table_to_csv(rows);
  }
  if (cfg_.json) {
    Json j;
    j["schema"] = kJsonSchema;
    j["kind"] = "density_table";
    j["lo"] = cfg_.lo;
    j["hi"] = cfg_.hi;
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(search_row(r, cfg_.stable));
    j["rows"] = std::move(arr);
    j["complete"] = complete;
    emit(j);
  } else if (cfg_.out_file.empty()) {
    out_ << table_to_csv(rows);
  } else {
    out_ << "wrote " << rows.size() << " rows to " << cfg_.out_file << '\n';
  }
  return complete ? ok : incomplete;
}

int Command::certify_chain() {
  const ProofChainReport report = paper_chain(theta_star());
  const bool pass = report.all_steps_pass() && report.contradiction;
  if (cfg_.json) {
    emit(to_json(report));
  } else {
    for (const auto& s : report.steps) {
      out_ << std::left << std::setw(18) << s.name << " claimed " << std::setw(8) << s.claimed << " computed "
           << std::setw(14) << fixed(s.computed) << ' ' << std::setw(10) << to_string(s.match)
           << (s.pass ? "PASS" : "FAIL") << '\n';
    }
    for (const auto& c : report.checks) {
      out_ << (c.pass ? "PASS" : "FAIL") << " check " << c.name << '\n';
    }
    out_ << "x in [" << fixed(report.x_interval.lo) << ", " << fixed(report.x_interval.hi) << "]\n";
    out_ << "y >= " << fixed(report.y_lower_from_psd) << " but y <= " << fixed(report.y_interval_quadratic.hi)
         << '\n';
    out_ << (pass ? "CONTRADICTION CERTIFIED" : "CHAIN FAILED") << '\n';
  }
  return pass ? ok : inconsistent;
}

int Command::certify_refute() {
  if (!(cfg_.alpha > 0.0)) return fail("--alpha must be positive", usage);
  if (cfg_.order < 1) return fail("--order must be at least 1", usage);
  RefuteOptions opts;
  opts.workers = cfg_.workers;
  if (cfg_.budget) opts.box_budget = cfg_.budget;
  opts.record_trace = true;
  const RefutationResult result = refute_alpha(cfg_.alpha, cfg_.order, opts);
  const bool refuted = result.status == RefuteStatus::refuted;
  const bool verified = refuted && verify_refutation(result);

  if (!cfg_.trace_file.empty()) {
    std::ofstream file(cfg_.trace_file, std::ios::binary);
    if (!file) return fail("cannot write " + cfg_.trace_file, usage);
    for (const auto& box : result.trace) file << trace_line(box).dump() << '\n';
  }
  if (cfg_.json) {
    Json j = to_json(result);
    if (refuted) j["verified"] = verified;
    emit(j);
  } else {
    out_ << "alpha=" << fixed(result.alpha) << " K=" << result.order << " status=" << to_string(result.status)
         << " boxes_explored=" << result.boxes_explored << " boxes_pruned=" << result.boxes_pruned
         << (result.pinned ? " pinned" : "") << '\n';
    if (refuted) out_ << "trace " << (verified ? "verified" : "FAILED verification") << '\n';
    else out_ << "reason: " << result.unknown_reason << '\n';
  }
  if (refuted) return verified ? ok : inconsistent;
  return result.unknown_reason == "box budget exhausted" ? incomplete : ok;
}

int Command::certify_scan() {
  if (cfg_.order < 3) return fail("--order must be at least 3", usage);
  const ImproveOptions opts = improve_options(cfg_.budget ? cfg_.budget : RefuteOptions{}.box_budget);
  const BoundCertificate cert = improved_bound(cfg_.order, opts);
  if (cfg_.json) {
    emit(to_json(cert, cfg_.stable));
  } else {
    out_ << "K=" << cert.K << " alpha_max_refuted=" << fixed(cert.alpha_max_refuted, 12)
         << " alpha_min_unknown=" << fixed(cert.alpha_min_unknown, 12) << '\n';
    out_ << "lower bound d* >= " << fixed(cert.implied_lower_bound, 12)
         << " epsilon_over_leech=" << std::scientific << std::setprecision(3) << cert.epsilon_over_leech
         << std::defaultfloat << " probes=" << cert.probes << '\n';
    if (cert.degenerate) out_ << "warning: " << cert.warning << '\n';
  }
  return cert.degenerate ? incomplete : ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Difference bases: exact search and Fourier lower-bound certificates", "diffbasis"};
  app.require_subcommand(1);
  app.add_flag("--json", cfg.json, "Emit JSON");
  app.add_flag("--stable", cfg.stable, "Omit timing and scheduling dependent fields");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", cfg.seed, "Seed for the multi-start feasibility search");

  auto* bounds = app.add_subcommand("bounds", "Known and computed bounds on d*");
  bounds->add_option("--order", cfg.order, "Moment order for the computed bound")->check(CLI::Range(3, 12));
  bounds->add_option("--budget", cfg.budget, "Box budget per probe (default 20000)");

  auto* ruler = app.add_subcommand("ruler", "Minimal difference bases");
  ruler->require_subcommand(1);
  auto* find = ruler->add_subcommand("find", "D(n) and a witness");
  find->add_option("n", cfg.n, "Target length")->required();
  find->add_option("--method", cfg.method, "oracle or bnb")->check(CLI::IsMember({"oracle", "bnb"}));
  find->add_option("--timeout", cfg.timeout_s, "Seconds")->check(CLI::PositiveNumber);
  find->add_option("--cache", cfg.cache_dir, "Result cache directory");
  auto* table = ruler->add_subcommand("table", "D(n) for a range of n");
  table->add_option("lo", cfg.lo)->required();
  table->add_option("hi", cfg.hi)->required();
  table->add_option("--out", cfg.out_file, "CSV output file");
  table->add_option("--cache", cfg.cache_dir, "Result cache directory");
  table->add_option("--timeout", cfg.timeout_s, "Seconds per n")->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify", "Lower-bound certificates");
  certify->require_subcommand(1);
  auto* chain = certify->add_subcommand("chain", "Replay the contradiction chain at alpha_leech");
  auto* refute = certify->add_subcommand("refute", "Branch-and-prune refutation at one alpha");
  refute->add_option("--alpha", cfg.alpha)->required();
  refute->add_option("--order", cfg.order)->required();
  refute->add_option("--budget", cfg.budget, "Box budget");
  refute->add_option("--trace", cfg.trace_file, "Write eliminated boxes as JSON lines");
  auto* scan = certify->add_subcommand("scan", "Largest refuted alpha above alpha_leech");
  scan->add_option("--order", cfg.order)->required();
  scan->add_option("--budget", cfg.budget, "Box budget per probe");

  for (auto* sub : {bounds, ruler, find, table, certify, chain, refute, scan}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0 && std::find(args.begin(), args.end(), "--json") != args.end()) {
      out << error_json(e.what(), usage).dump() << '\n';
      return usage;
    }
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  Command cmd(cfg, out, err);
  try {
    if (*bounds) return cmd.bounds();
    if (*find) return cmd.ruler_find();
    if (*table) return cmd.ruler_table();
    if (*chain) return cmd.certify_chain();
    if (*refute) return cmd.certify_refute();
    if (*scan) return cmd.certify_scan();
  } catch (const std::invalid_argument& e) {
    return cmd.fail(e.what(), usage);
  } catch (const std::domain_error& e) {
    return cmd.fail(e.what(), usage);
  } catch (const std::out_of_range& e) {
    return cmd.fail(e.what(), usage);
  } catch (const std::length_error& e) {
    return cmd.fail(e.what(), usage);
  } catch (const std::exception& e) {
    return cmd.fail(e.what(), inconsistent);
  }
  return usage;
}

}  // namespace diffbasis::cli
