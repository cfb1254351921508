#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diffbasis {

using Mark = std::int64_t;

// Largest target n (and ruler span) accepted anywhere in the library.
inline constexpr Mark kMaxTarget = Mark{1} << 31;

/// A finite, strictly increasing set of integer marks.
class Ruler {
 public:
  /// Throws std::invalid_argument unless marks are nonempty and strictly
  /// increasing, and std::length_error if the span exceeds kMaxTarget.
  explicit Ruler(std::vector<Mark> marks);

  /// Parses the text form `0,1,4,6` (no spaces, increasing order).
  static Ruler parse(std::string_view text);

  std::string to_string() const;

  std::span<const Mark> marks() const { return marks_; }
  std::size_t size() const { return marks_.size(); }
  Mark front() const { return marks_.front(); }
  Mark back() const { return marks_.back(); }
  Mark span() const { return marks_.back() - marks_.front(); }

  friend bool operator==(const Ruler&, const Ruler&) = default;
  friend auto operator<=>(const Ruler& a, const Ruler& b) {
    return a.marks_ <=> b.marks_;
  }

 private:
  std::vector<Mark> marks_;
};

/// Positive differences of a ruler as a bitset over 1..span.
class DifferenceSet {
 public:
  explicit DifferenceSet(Mark span);

  void insert(Mark d);
  bool contains(Mark d) const;
  std::size_t size() const { return count_; }
  Mark span() const { return span_; }

  /// Largest m such that 1..m are all present (0 if 1 is missing).
  Mark prefix_length() const;

  std::vector<Mark> to_vector() const;

  friend bool operator==(const DifferenceSet& a, const DifferenceSet& b) {
    return a.to_vector() == b.to_vector();
  }

 private:
  Mark span_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct CoverageReport {
  Mark n_target = 0;
  bool covered = false;
  std::vector<Mark> missing;  // sorted, within 1..n_target
  Mark max_covered = 0;
};

DifferenceSet differences(const Ruler& ruler);

/// Which of 1..n the ruler measures. Throws std::domain_error if n < 1.
CoverageReport coverage(const Ruler& ruler, Mark n);

/// Translate to start at 0; reflect if the first gap exceeds the last gap.
Ruler canonicalize(const Ruler& ruler);
bool is_canonical(const Ruler& ruler);

}  // namespace diffbasis
