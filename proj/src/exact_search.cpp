#include "diffbasis/exact_search.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <stdexcept>
#include <thread>

#include "diffbasis/constructions.hpp"

namespace diffbasis {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SearchResult make_result(Mark n, Ruler witness, SearchMethod method) {
  SearchResult r;
  r.n = n;
  r.d = static_cast<int>(witness.size());
  r.density = static_cast<double>(r.d) * r.d / static_cast<double>(n);
  r.witness = std::move(witness);
  r.method = method;
  r.proven_lower = r.d;
  return r;
}

// Visits the m-subsets of {0..universe} that contain 0 in lexicographic order
// until `visit` returns true. Returns the number of subsets visited.
template <typename Visit>
std::uint64_t for_each_subset_with_zero(Mark universe, int m, Visit&& visit) {
  std::uint64_t visited = 0;
  if (m < 1 || m - 1 > universe) return visited;
  const int k = m - 1;
  std::vector<Mark> marks(static_cast<std::size_t>(m));
  marks[0] = 0;
  for (int i = 1; i <= k; ++i) marks[static_cast<std::size_t>(i)] = i;
  while (true) {
    ++visited;
    if (visit(marks)) return visited;
    int i = k;
    while (i >= 1 && marks[static_cast<std::size_t>(i)] == universe - (k - i)) --i;
    if (i < 1) return visited;
    ++marks[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= k; ++j) {
      marks[static_cast<std::size_t>(j)] = marks[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Depth-first search over rulers {0} ∪ interior ∪ {n} with m marks. Interior
// marks are chosen alternately from the left (next smallest) and the right
// (next largest), so every set arises from exactly one path. Bits bounds n.
template <std::size_t Bits>
class BranchAndBound {
 public:
  BranchAndBound(Mark n, int m, Clock::time_point deadline)
      : n_(n), interior_(m - 2), deadline_(deadline), count_(static_cast<std::size_t>(n + 1), 0) {
    for (Mark d = 1; d <= n; ++d) uncovered_.set(static_cast<std::size_t>(d));
    add_mark(0);
    add_mark(n);
    lp_ = 0;
    rq_ = n;
  }

  // Collects the pick sequences of all surviving nodes at `depth`.
  void collect_prefixes(int depth, std::vector<std::vector<Mark>>& out) {
    collect_depth_ = depth;
    collect_out_ = &out;
    descend(0);
    collect_out_ = nullptr;
  }

  // Replays a prefix, then searches the subtree below it.
  void run_from(const std::vector<Mark>& prefix) {
    std::size_t step = 0;
    for (Mark x : prefix) push(step++, x);
    if (!prefix.empty() && !feasible()) return;
    descend(step);
  }

  const std::optional<std::vector<Mark>>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }

 private:
  using Bitset = std::bitset<Bits>;

  static bool is_left_step(std::size_t step) { return step % 2 == 0; }
  static std::size_t bit(Mark v) { return static_cast<std::size_t>(v); }

  void add_mark(Mark x) {
    for (Mark s : marks_) {
      const Mark d = x > s ? x - s : s - x;
      if (count_[bit(d)]++ == 0) uncovered_.reset(bit(d));
    }
    marks_.push_back(x);
    mark_bits_.set(bit(x));
    reversed_bits_.set(bit(n_ - x));
  }

  void remove_last_mark() {
    const Mark x = marks_.back();
    marks_.pop_back();
    mark_bits_.reset(bit(x));
    reversed_bits_.reset(bit(n_ - x));
    for (Mark s : marks_) {
      const Mark d = x > s ? x - s : s - x;
      if (--count_[bit(d)] == 0) uncovered_.set(bit(d));
    }
  }

  void push(std::size_t step, Mark x) {
    add_mark(x);
    picks_.push_back(x);
    saved_.push_back({lp_, rq_});
    if (is_left_step(step)) lp_ = x; else rq_ = x;
  }

  void pop() {
    remove_last_mark();
    picks_.pop_back();
    std::tie(lp_, rq_) = saved_.back();
    saved_.pop_back();
  }

  // Interior marks in increasing order: left picks, then right picks reversed.
  std::vector<Mark> sorted_interior() const {
    std::vector<Mark> out;
    for (std::size_t i = 0; i < picks_.size(); i += 2) out.push_back(picks_[i]);
    std::vector<Mark> right;
    for (std::size_t i = 1; i < picks_.size(); i += 2) right.push_back(picks_[i]);
    out.insert(out.end(), right.rbegin(), right.rend());
    return out;
  }

  // Distances from a prospective mark x to every current mark.
  Bitset distances_from(Mark x) const {
    return (reversed_bits_ >> bit(n_ - x)) | (mark_bits_ >> bit(x));
  }

  bool feasible() {
    // Future marks lie strictly inside (lp, rq), so no future pair measures
    // max(rq, n - lp) or more: those distances must already be covered.
    const Mark threshold = std::max(rq_, n_ - lp_);
    if ((uncovered_ >> bit(threshold)).any()) return false;
    const long remaining = static_cast<long>(interior_) - static_cast<long>(picks_.size());
    if (remaining == 0) return uncovered_.none();
    const long existing = static_cast<long>(marks_.size());
    const auto uncovered = static_cast<long>(uncovered_.count());
    if (uncovered > remaining * existing + remaining * (remaining - 1) / 2) return false;

    // Distances >= rq - lp - 1 cannot come from two future marks, so each
    // needs a future mark paired with an existing one. Bound how many of
    // them the best r future positions can reach.
    const Mark far = std::max<Mark>(rq_ - lp_ - 1, 1);
    const Bitset far_uncovered = (uncovered_ >> bit(far)) << bit(far);
    const auto far_count = static_cast<long>(far_uncovered.count());
    if (far_count == 0) return true;
    if (far_count > remaining * existing) return false;
    gain_.clear();
    for (Mark x = lp_ + 1; x < rq_; ++x) {
      const auto g = static_cast<long>((distances_from(x) & far_uncovered).count());
      if (g) gain_.push_back(g);
    }
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(remaining), gain_.size());
    std::partial_sort(gain_.begin(), gain_.begin() + static_cast<long>(take), gain_.end(),
                      std::greater<>());
    long reach = 0;
    for (std::size_t i = 0; i < take; ++i) reach += gain_[i];
    return reach >= far_count;
  }

  // True if the left picks so far, extended by x, can still lead to a
  // solution lexicographically no greater than the best one.
  bool lex_admissible(Mark x) const {
    if (!best_) return true;
    const auto& best = *best_;
    std::size_t a = 0;
    for (std::size_t i = 0; i < picks_.size(); i += 2, ++a) {
      if (picks_[i] != best[a]) return picks_[i] < best[a];
    }
    return x <= best[a];
  }

  void record_solution() {
    std::vector<Mark> interior = sorted_interior();
    if (!best_ || interior < *best_) best_ = std::move(interior);
  }

  void descend(std::size_t step) {
    if (timed_out_) return;
    if (collect_out_ && static_cast<int>(step) == collect_depth_) {
      collect_out_->push_back(picks_);
      return;
    }
    const long remaining = static_cast<long>(interior_) - static_cast<long>(step);
    if (remaining == 0) {
      if (uncovered_.none()) record_solution();
      return;
    }
    const long after = remaining - 1;
    if ((++nodes_ & 0xFFF) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (is_left_step(step)) {
      for (Mark x = lp_ + 1; x <= rq_ - 1 - after; ++x) {
        if (!lex_admissible(x)) break;
        // Symmetry: the first gap may not exceed the last gap.
        if (step == 0 && interior_ == 1 && x > n_ - x) break;
        push(step, x);
        if (feasible()) descend(step + 1);
        pop();
        if (timed_out_) return;
      }
    } else {
      // Symmetry: the last gap n - y must be at least the first gap.
      const Mark top = step == 1 ? std::min(rq_ - 1, n_ - picks_.front()) : rq_ - 1;
      for (Mark y = top; y >= lp_ + 1 + after; --y) {
        push(step, y);
        if (feasible()) descend(step + 1);
        pop();
        if (timed_out_) return;
      }
    }
  }

  Mark n_;
  int interior_;
  Clock::time_point deadline_;
  std::vector<int> count_;
  Bitset uncovered_;
  Bitset mark_bits_;
  Bitset reversed_bits_;
  std::vector<Mark> marks_;
  std::vector<Mark> picks_;
  std::vector<std::pair<Mark, Mark>> saved_;
  std::vector<long> gain_;
  Mark lp_ = 0;
  Mark rq_ = 0;
  std::optional<std::vector<Mark>> best_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  int collect_depth_ = -1;
  std::vector<std::vector<Mark>>* collect_out_ = nullptr;
};

struct LevelOutcome {
  std::optional<std::vector<Mark>> best;
  std::uint64_t nodes = 0;
  bool timed_out = false;
};

template <std::size_t Bits>
LevelOutcome search_level_with(Mark n, int m, const SearchOptions& options,
                               Clock::time_point deadline) {
  LevelOutcome outcome;
  if (m == 2) {
    if (n == 1) outcome.best = std::vector<Mark>{};
    return outcome;
  }
  const int interior = m - 2;
  const int depth = std::clamp(options.split_depth, 0, interior);

  std::vector<std::vector<Mark>> prefixes;
  {
    BranchAndBound<Bits> splitter(n, m, deadline);
    splitter.collect_prefixes(depth, prefixes);
    outcome.nodes += splitter.nodes();
    outcome.timed_out = splitter.timed_out();
    // Shallow solutions are impossible: with depth <= interior every
    // complete ruler sits at or below the cut.
  }

  std::vector<LevelOutcome> per_task(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prefixes.size(); i = next++) {
      BranchAndBound<Bits> task(n, m, deadline);
      task.run_from(prefixes[i]);
      per_task[i] = {task.best(), task.nodes(), task.timed_out()};
    }
  };
  const unsigned workers = std::max(1U, options.workers);
  if (workers == 1 || prefixes.size() < 2) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, prefixes.size()); ++w) {
      pool.emplace_back(worker);
    }
  }
  for (auto& t : per_task) {
    outcome.nodes += t.nodes;
    outcome.timed_out = outcome.timed_out || t.timed_out;
    if (t.best && (!outcome.best || *t.best < *outcome.best)) outcome.best = t.best;
  }
  return outcome;
}

LevelOutcome search_level(Mark n, int m, const SearchOptions& options,
                          Clock::time_point deadline) {
  if (n < 128) return search_level_with<128>(n, m, options, deadline);
  if (n < 256) return search_level_with<256>(n, m, options, deadline);
  if (n < 1024) return search_level_with<1024>(n, m, options, deadline);
  return search_level_with<kMaxSearchTarget + 1>(n, m, options, deadline);
}

}  // namespace

std::string to_string(SearchMethod method) {
  switch (method) {
    case SearchMethod::oracle: return "oracle";
    case SearchMethod::bnb: return "bnb";
    case SearchMethod::cache: return "cache";
  }
  return "bnb";
}

SearchMethod parse_search_method(std::string_view text) {
  if (text == "oracle") return SearchMethod::oracle;
  if (text == "bnb") return SearchMethod::bnb;
  if (text == "cache") return SearchMethod::cache;
  throw std::invalid_argument("unknown search method '" + std::string(text) + "'");
}

int combinatorial_lower_bound(Mark n) {
  if (n < 1) throw std::domain_error("n must be at least 1");
  Mark m = 2;
  while (m * (m - 1) / 2 < n) ++m;
  return static_cast<int>(m);
}

SearchResult brute_force_min_basis(Mark n, Mark cap) {
  if (n < 1) throw std::domain_error("n must be at least 1");
  if (n > cap) {
    throw std::out_of_range("n = " + std::to_string(n) + " exceeds the oracle cap of " +
                            std::to_string(cap) + "; use the bnb method");
  }
  const auto start = Clock::now();
  std::uint64_t visited = 0;
  for (int m = combinatorial_lower_bound(n);; ++m) {
    std::optional<Ruler> found;
    visited += for_each_subset_with_zero(n, m, [&](const std::vector<Mark>& marks) {
      Ruler candidate(marks);
      if (!is_canonical(candidate) || !coverage(candidate, n).covered) return false;
      found = std::move(candidate);
      return true;
    });
    if (found) {
      SearchResult r = make_result(n, std::move(*found), SearchMethod::oracle);
      r.nodes_explored = visited;
      r.elapsed_ms = elapsed_ms_since(start);
      return r;
    }
  }
}

int widened_span_min_size(Mark n, Mark extra) {
  if (n < 1) throw std::domain_error("n must be at least 1");
  for (int m = combinatorial_lower_bound(n);; ++m) {
    bool found = false;
    for_each_subset_with_zero(n + extra, m, [&](const std::vector<Mark>& marks) {
      found = coverage(Ruler(marks), n).covered;
      return found;
    });
    if (found) return m;
  }
}

SearchResult min_basis(Mark n, const SearchOptions& options) {
  if (n < 1) throw std::domain_error("n must be at least 1");
  if (n > kMaxSearchTarget) {
    throw std::length_error("branch-and-bound supports n <= " + std::to_string(kMaxSearchTarget));
  }
  const auto start = Clock::now();
  const auto deadline = start + options.timeout;
  std::uint64_t nodes = 0;
  for (int m = std::max(combinatorial_lower_bound(n), options.min_size_hint);; ++m) {
    LevelOutcome level = search_level(n, m, options, deadline);
    nodes += level.nodes;
    if (level.best) {
      std::vector<Mark> marks{0};
      marks.insert(marks.end(), level.best->begin(), level.best->end());
      marks.push_back(n);
      SearchResult r = make_result(n, Ruler(std::move(marks)), SearchMethod::bnb);
      r.nodes_explored = nodes;
      r.elapsed_ms = elapsed_ms_since(start);
      // A timeout after a solution was found at this level still leaves the
      // size proven (lower levels finished), but not the least witness.
      r.complete = !level.timed_out;
      return r;
    }
    if (level.timed_out) {
      SearchResult r = make_result(n, canonicalize(trivial_basis(n)), SearchMethod::bnb);
      r.nodes_explored = nodes;
      r.elapsed_ms = elapsed_ms_since(start);
      r.complete = false;
      r.proven_lower = m;
      return r;
    }
  }
}

}  // namespace diffbasis
