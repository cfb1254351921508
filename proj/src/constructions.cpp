#include "diffbasis/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace diffbasis {

Mark ceil_sqrt(Mark n) {
  if (n <= 0) return 0;
  auto k = static_cast<Mark>(std::sqrt(static_cast<double>(n)));
  while (k * k < n) ++k;
  while (k > 0 && (k - 1) * (k - 1) >= n) --k;
  return k;
}

Ruler trivial_basis(Mark n) {
  if (n < 1) throw std::domain_error("trivial_basis needs n >= 1");
  if (n > kMaxTarget) throw std::length_error("n exceeds 2^31");
  const Mark k = ceil_sqrt(n);
  const Mark strides = n / k + 1;
  std::vector<Mark> marks;
  marks.reserve(static_cast<std::size_t>(k + strides));
  for (Mark i = 0; i < k; ++i) marks.push_back(i);
  for (Mark j = 1; j <= strides; ++j) marks.push_back(j * k);
  return Ruler(std::move(marks));
}

}  // namespace diffbasis
