#pragma once

#include "diffbasis/ruler.hpp"

namespace diffbasis {

/// Block {0..k-1} followed by the multiples k, 2k, ..., (n/k + 1)k, where
/// k = ceil(sqrt(n)). Covers 1..n with about 2*sqrt(n) marks, so its
/// density |A|^2/n tends to 4.
Ruler trivial_basis(Mark n);

/// Smallest k with k*k >= n.
Mark ceil_sqrt(Mark n);

}  // namespace diffbasis
