#include "diffbasis/ruler.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace diffbasis {

Ruler::Ruler(std::vector<Mark> marks) : marks_(std::move(marks)) {
  if (marks_.empty()) throw std::invalid_argument("ruler needs at least one mark");
  for (std::size_t i = 1; i < marks_.size(); ++i) {
    if (marks_[i] <= marks_[i - 1]) {
      throw std::invalid_argument("ruler marks must be strictly increasing");
    }
  }
  // Compare without overflowing when the marks sit at opposite extremes.
  if (marks_.front() < 0 && marks_.back() > kMaxTarget + marks_.front()) {
    throw std::length_error("ruler span exceeds 2^31");
  }
  if (marks_.front() >= 0 && marks_.back() - marks_.front() > kMaxTarget) {
    throw std::length_error("ruler span exceeds 2^31");
  }
}

Ruler Ruler::parse(std::string_view text) {
  std::vector<Mark> marks;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view token =
        text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    Mark value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
      throw std::invalid_argument("malformed ruler text: '" + std::string(text) + "'");
    }
    marks.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Ruler(std::move(marks));
}

std::string Ruler::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < marks_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(marks_[i]);
  }
  return out;
}

DifferenceSet::DifferenceSet(Mark span)
    : span_(span), words_(static_cast<std::size_t>(span / 64 + 1), 0) {}

void DifferenceSet::insert(Mark d) {
  auto& word = words_[static_cast<std::size_t>(d >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (d & 63);
  if (!(word & bit)) {
    word |= bit;
    ++count_;
  }
}

bool DifferenceSet::contains(Mark d) const {
  if (d < 1 || d > span_) return false;
  return (words_[static_cast<std::size_t>(d >> 6)] >> (d & 63)) & 1U;
}

Mark DifferenceSet::prefix_length() const {
  // Bit 0 is never set, so look for the first zero bit after it.
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    if (w == 0) word |= 1U;
    if (word != ~std::uint64_t{0}) {
      const Mark first_zero = static_cast<Mark>(w * 64 + std::countr_one(word));
      return std::min(first_zero - 1, span_);
    }
  }
  return span_;
}

std::vector<Mark> DifferenceSet::to_vector() const {
  std::vector<Mark> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(static_cast<Mark>(w * 64 + std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

DifferenceSet differences(const Ruler& ruler) {
  const auto marks = ruler.marks();
  DifferenceSet diffs(ruler.span());
  for (std::size_t i = 0; i < marks.size(); ++i) {
    for (std::size_t j = i + 1; j < marks.size(); ++j) diffs.insert(marks[j] - marks[i]);
  }
  return diffs;
}

CoverageReport coverage(const Ruler& ruler, Mark n) {
  if (n < 1) throw std::domain_error("coverage target n must be at least 1");
  const DifferenceSet diffs = differences(ruler);
  CoverageReport report;
  report.n_target = n;
  for (Mark d = 1; d <= n; ++d) {
    if (!diffs.contains(d)) report.missing.push_back(d);
  }
  report.covered = report.missing.empty();
  report.max_covered = diffs.prefix_length();
  return report;
}

bool is_canonical(const Ruler& ruler) {
  const auto m = ruler.marks();
  if (m.front() != 0) return false;
  if (m.size() < 2) return true;
  return m[1] - m[0] <= m[m.size() - 1] - m[m.size() - 2];
}

Ruler canonicalize(const Ruler& ruler) {
  const auto m = ruler.marks();
  std::vector<Mark> out(m.begin(), m.end());
  const Mark lo = out.front();
  for (Mark& v : out) v -= lo;
  if (out.size() >= 2 && out[1] - out[0] > out[out.size() - 1] - out[out.size() - 2]) {
    const Mark hi = out.back();
    for (Mark& v : out) v = hi - v;
    std::reverse(out.begin(), out.end());
  }
  return Ruler(std::move(out));
}

}  // namespace diffbasis
