#include <doctest.h>

#include <algorithm>
#include <vector>

#include "dgrec/adapt.hpp"

using namespace dgrec;

namespace {

LocalIndicators with_totals(std::initializer_list<double> totals) {
  LocalIndicators li;
  li.total.resize(static_cast<int>(totals.size()));
  int i = 0;
  for (double v : totals) li.total[i++] = v;
  return li;
}

}  // namespace

TEST_SUITE("adapt") {

TEST_CASE("maximum strategy keeps elements above the threshold") {
  const std::vector<int> m = mark(with_totals({1.0, 0.5, 0.76, 0.74}), 0.75);
  CHECK(m == std::vector<int>{0, 2});
}

TEST_CASE("the argmax is always marked when the maximum is positive") {
  const std::vector<int> m = mark(with_totals({0.1, 0.9, 0.2}), 0.99);
  REQUIRE(!m.empty());
  CHECK(std::find(m.begin(), m.end(), 1) != m.end());
}

TEST_CASE("equal indicators mark everything") {
  const std::vector<int> m = mark(with_totals({0.3, 0.3, 0.3, 0.3}), 0.75);
  CHECK(m.size() == 4);
}

TEST_CASE("all-zero indicators mark nothing") {
  CHECK(mark(with_totals({0.0, 0.0, 0.0}), 0.75).empty());
}

TEST_CASE("a smaller fraction marks a superset") {
  const LocalIndicators li = with_totals({0.9, 0.2, 0.5, 0.6, 0.05});
  const std::vector<int> tight = mark(li, 0.75);
  const std::vector<int> loose = mark(li, 0.4);
  CHECK(tight == std::vector<int>{0});
  CHECK(loose == std::vector<int>{0, 2, 3});
  for (int t : tight) CHECK(std::find(loose.begin(), loose.end(), t) != loose.end());
}

}  // TEST_SUITE
