#include <stdexcept>
#include <cmath>

#include "diffbasis/constructions.hpp"
#include "diffbasis/exact_search.hpp"
#include "doctest.h"

using diffbasis::Mark;

TEST_CASE("ceil_sqrt") {
  CHECK(diffbasis::ceil_sqrt(1) == 1);
  CHECK(diffbasis::ceil_sqrt(2) == 2);
  CHECK(diffbasis::ceil_sqrt(4) == 2);
  CHECK(diffbasis::ceil_sqrt(5) == 3);
  for (Mark n = 1; n <= 200000; ++n) {
    const Mark k = diffbasis::ceil_sqrt(n);
    REQUIRE(k * k >= n);
    REQUIRE((k - 1) * (k - 1) < n);
  }
  const Mark big = diffbasis::kMaxTarget;
  const Mark k = diffbasis::ceil_sqrt(big);
  CHECK(k * k >= big);
  CHECK((k - 1) * (k - 1) < big);
}

TEST_CASE("trivial basis examples") {
  CHECK(diffbasis::trivial_basis(1).to_string() == "0,1,2");
  CHECK(diffbasis::trivial_basis(9).to_string() == "0,1,2,3,6,9,12");
  CHECK_THROWS_AS(diffbasis::trivial_basis(0), std::domain_error);
}

TEST_CASE("property: trivial basis covers n with about 2 sqrt(n) marks") {
  for (Mark n = 1; n <= 3000; ++n) {
    const auto r = diffbasis::trivial_basis(n);
    const Mark k = diffbasis::ceil_sqrt(n);
    REQUIRE(diffbasis::coverage(r, n).covered);
    REQUIRE(r.front() == 0);
    REQUIRE(static_cast<Mark>(r.size()) <= 2 * k + 1);
    REQUIRE(static_cast<int>(r.size()) >= diffbasis::combinatorial_lower_bound(n));
  }
}

TEST_CASE("trivial basis at a large target") {
  const Mark n = 1'000'000;
  const auto r = diffbasis::trivial_basis(n);
  CHECK(diffbasis::coverage(r, n).covered);
  CHECK(r.size() <= 2001);
}
