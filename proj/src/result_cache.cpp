#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "diffbasis/constructions.hpp"
#include "diffbasis/exact_search.hpp"
#include "json.hpp"

namespace diffbasis {

namespace {

constexpr const char* kCacheFile = "difference_bases.jsonl";

std::string shortest_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

bool consistent(const SearchResult& r) {
  if (r.n < 1 || r.d < 1 || r.witness.size() != static_cast<std::size_t>(r.d)) return false;
  return is_canonical(r.witness) && coverage(r.witness, r.n).covered;
}

}  // namespace

std::string ResultCache::to_json_line(const SearchResult& result) {
  nlohmann::ordered_json j;
  j["n"] = result.n;
  j["d"] = result.d;
  j["witness"] = result.witness.to_string();
  j["method"] = to_string(result.method);
  return j.dump();
}

std::optional<SearchResult> ResultCache::from_json_line(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    SearchResult r;
    r.n = j.at("n").get<Mark>();
    r.d = j.at("d").get<int>();
    r.witness = Ruler::parse(j.at("witness").get<std::string>());
    r.method = parse_search_method(j.at("method").get<std::string>());
    if (r.n < 1 || r.n > kMaxTarget) return std::nullopt;
    r.density = static_cast<double>(r.d) * r.d / static_cast<double>(r.n);
    r.proven_lower = r.d;
    if (!consistent(r)) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ResultCache::ResultCache(std::filesystem::path dir) : file_(std::move(dir) / kCacheFile) {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  bool dirty = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto record = from_json_line(line);
    if (!record) {
      warnings_.push_back("cache line " + std::to_string(line_no) +
                          " is corrupt or inconsistent; dropped");
      dirty = true;
      continue;
    }
    records_[record->n] = std::move(*record);
  }
  in.close();
  if (dirty) {
    std::ofstream out(file_, std::ios::trunc);
    for (const auto& [n, r] : records_) out << to_json_line(r) << '\n';
    warnings_.push_back("cache rebuilt with " + std::to_string(records_.size()) +
                        " valid records");
  }
}

std::optional<SearchResult> ResultCache::find(Mark n) const {
  const auto it = records_.find(n);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::store(const SearchResult& result) {
  if (!result.complete) return;
  if (records_.contains(result.n)) return;
  std::filesystem::create_directories(file_.parent_path());
  std::ofstream out(file_, std::ios::app);
  if (!out) throw std::runtime_error("cannot write cache file " + file_.string());
  out << to_json_line(result) << '\n';
  records_[result.n] = result;
}

std::vector<SearchResult> density_table(Mark lo, Mark hi, const SearchOptions& options,
                                        ResultCache* cache) {
  if (lo < 1) throw std::domain_error("table range must start at n >= 1");
  if (lo > hi) throw std::domain_error("table range is empty (lo > hi)");
  std::vector<SearchResult> rows;
  int previous_d = 0;
  for (Mark n = lo; n <= hi; ++n) {
    std::optional<SearchResult> row;
    if (cache) row = cache->find(n);
    if (!row) {
      SearchOptions local = options;
      local.min_size_hint = std::max(local.min_size_hint, previous_d);
      row = min_basis(n, local);
      if (cache) cache->store(*row);
    }
    previous_d = row->complete ? row->d : 0;
    rows.push_back(std::move(*row));
  }
  return rows;
}

std::string table_to_csv(const std::vector<SearchResult>& rows) {
  std::string out = "n,d,density,witness\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.d) + ',' + shortest_double(r.density) +
           ",\"" + r.witness.to_string() + "\"\n";
  }
  return out;
}

std::vector<SearchResult> table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n,d,density,witness") {
    throw std::invalid_argument("CSV header must be 'n,d,density,witness'");
  }
  std::vector<SearchResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto c3 = line.find(',', c2 + 1);
    if (c3 == std::string::npos || line.size() < c3 + 3 || line[c3 + 1] != '"' ||
        line.back() != '"') {
      throw std::invalid_argument("malformed CSV row: " + line);
    }
    SearchResult r;
    r.n = std::stoll(line.substr(0, c1));
    r.d = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string density = line.substr(c2 + 1, c3 - c2 - 1);
    std::from_chars(density.data(), density.data() + density.size(), r.density);
    r.witness = Ruler::parse(std::string_view(line).substr(c3 + 2, line.size() - c3 - 3));
    r.proven_lower = r.d;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace diffbasis
