#include <stdexcept>
#include <random>
#include <set>

#include "diffbasis/ruler.hpp"
#include "doctest.h"

using diffbasis::Mark;
using diffbasis::Ruler;

TEST_CASE("parse and print round trip") {
  const Ruler r = Ruler::parse("0,1,4,6");
  CHECK(r.size() == 4);
  CHECK(r.span() == 6);
  CHECK(r.to_string() == "0,1,4,6");
  CHECK(Ruler::parse(r.to_string()) == r);
  CHECK(Ruler::parse("2,5,9").front() == 2);
  CHECK(Ruler::parse("-3,4").span() == 7);
}

TEST_CASE("invalid marks are rejected") {
  CHECK_THROWS_AS(Ruler(std::vector<Mark>{}), std::invalid_argument);
  CHECK_THROWS_AS(Ruler(std::vector<Mark>{0, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Ruler(std::vector<Mark>{0, 5, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Ruler::parse("0,,3"), std::invalid_argument);
  CHECK_THROWS_AS(Ruler::parse("0,x"), std::invalid_argument);
  CHECK_THROWS_AS(Ruler(std::vector<Mark>{0, diffbasis::kMaxTarget + 1}), std::length_error);
  CHECK_NOTHROW(Ruler(std::vector<Mark>{0, diffbasis::kMaxTarget}));
}

TEST_CASE("difference set of a perfect ruler") {
  const auto ds = diffbasis::differences(Ruler::parse("0,1,4,6"));
  CHECK(ds.size() == 6);
  CHECK(ds.prefix_length() == 6);
  CHECK(ds.to_vector() == std::vector<Mark>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("coverage reports missing distances") {
  const Ruler r = Ruler::parse("0,1,4,6");
  CHECK(diffbasis::coverage(r, 6).covered);
  const auto rep = diffbasis::coverage(r, 8);
  CHECK_FALSE(rep.covered);
  CHECK(rep.missing == std::vector<Mark>{7, 8});
  CHECK(rep.max_covered == 6);
  const auto gap = diffbasis::coverage(Ruler::parse("0,1,3,9"), 9);
  CHECK(gap.missing == std::vector<Mark>{4, 5, 7});
  CHECK_THROWS_AS(diffbasis::coverage(r, 0), std::domain_error);
}

TEST_CASE("canonical form") {
  CHECK(diffbasis::canonicalize(Ruler::parse("3,4,7,9")) == Ruler::parse("0,1,4,6"));
  CHECK(diffbasis::canonicalize(Ruler::parse("0,2,5,6")) == Ruler::parse("0,1,4,6"));
  CHECK(diffbasis::is_canonical(Ruler::parse("0,1,4,6")));
  CHECK_FALSE(diffbasis::is_canonical(Ruler::parse("0,2,5,6")));
  CHECK_FALSE(diffbasis::is_canonical(Ruler::parse("1,2,5,7")));
  CHECK(diffbasis::is_canonical(Ruler::parse("0")));
  CHECK_FALSE(diffbasis::is_canonical(Ruler::parse("5")));
}

TEST_CASE("property: canonicalization keeps differences and is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Mark> mark(-500, 500);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::set<Mark> s;
    const int m = size(rng);
    while (static_cast<int>(s.size()) < m) s.insert(mark(rng));
    const Ruler r(std::vector<Mark>(s.begin(), s.end()));
    const Ruler c = diffbasis::canonicalize(r);
    CHECK(diffbasis::is_canonical(c));
    CHECK(diffbasis::canonicalize(c) == c);
    CHECK(c.front() == 0);
    CHECK(c.size() == r.size());
    CHECK(diffbasis::differences(c).to_vector() == diffbasis::differences(r).to_vector());
  }
}

TEST_CASE("property: bitset differences agree with a naive set") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Mark> mark(0, 300);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<Mark> s;
    while (s.size() < 9) s.insert(mark(rng));
    const std::vector<Mark> v(s.begin(), s.end());
    std::set<Mark> naive;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) naive.insert(v[j] - v[i]);
    const auto ds = diffbasis::differences(Ruler(v));
    CHECK(ds.to_vector() == std::vector<Mark>(naive.begin(), naive.end()));
    Mark prefix = 0;
    while (naive.count(prefix + 1)) ++prefix;
    CHECK(ds.prefix_length() == prefix);
  }
}
