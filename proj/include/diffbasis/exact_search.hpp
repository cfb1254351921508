#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffbasis/ruler.hpp"

namespace diffbasis {

enum class SearchMethod { oracle, bnb, cache };

std::string to_string(SearchMethod method);
SearchMethod parse_search_method(std::string_view text);

struct SearchOptions {
  unsigned workers = 1;
  std::chrono::milliseconds timeout{60'000};
  // Depth of the alternating left/right decision tree at which the frontier
  // is cut into independent subtree tasks.
  int split_depth = 3;
  // Search starts at max(combinatorial bound, min_size_hint). Callers may
  // pass D(n-1), since a basis for n is also one for n-1.
  int min_size_hint = 0;
};

struct SearchResult {
  Mark n = 0;
  int d = 0;
  Ruler witness{std::vector<Mark>{0}};
  double density = 0.0;
  std::uint64_t nodes_explored = 0;
  SearchMethod method = SearchMethod::bnb;
  double elapsed_ms = 0.0;
  // False when the search timed out: d and witness then come from the
  // trivial construction and only proven_lower is a certified bound.
  bool complete = true;
  int proven_lower = 0;
};

/// ceil((1 + sqrt(1 + 8n)) / 2): the least m with m(m-1)/2 >= n.
int combinatorial_lower_bound(Mark n);

inline constexpr Mark kOracleCap = 25;
// Largest n the branch-and-bound accepts.
inline constexpr Mark kMaxSearchTarget = 4095;

/// Exhaustive enumeration of m-subsets of {0..n} containing 0, in
/// lexicographic order, for increasing m. Throws std::out_of_range above cap.
SearchResult brute_force_min_basis(Mark n, Mark cap = kOracleCap);

/// Smallest size of a subset of {0..n+extra} measuring 1..n, by exhaustive
/// enumeration. Used to probe the restriction of marks to {0..n}.
int widened_span_min_size(Mark n, Mark extra);

/// Branch-and-bound search for D(n) and the lexicographically least
/// canonical witness inside {0..n}. Deterministic for any worker count.
SearchResult min_basis(Mark n, const SearchOptions& options = {});

/// JSON-lines store of finished SearchResults keyed by n.
class ResultCache {
 public:
  /// Loads `dir/difference_bases.jsonl` if it exists. Malformed or
  /// inconsistent records are dropped and the file is rewritten; the
  /// returned warnings describe what was discarded.
  explicit ResultCache(std::filesystem::path dir);

  const std::vector<std::string>& warnings() const { return warnings_; }
  std::optional<SearchResult> find(Mark n) const;
  void store(const SearchResult& result);
  std::filesystem::path file() const { return file_; }

  static std::string to_json_line(const SearchResult& result);
  /// Parses and validates one record; nullopt if it is malformed or the
  /// witness does not cover n with exactly d marks.
  static std::optional<SearchResult> from_json_line(const std::string& line);

 private:
  std::filesystem::path file_;
  std::map<Mark, SearchResult> records_;
  std::vector<std::string> warnings_;
};

/// One SearchResult per n in [lo, hi]. Results already in the cache are
/// reused; new complete results are appended to it.
std::vector<SearchResult> density_table(Mark lo, Mark hi, const SearchOptions& options,
                                        ResultCache* cache = nullptr);

std::string table_to_csv(const std::vector<SearchResult>& rows);
std::vector<SearchResult> table_from_csv(const std::string& text);

}  // namespace diffbasis
