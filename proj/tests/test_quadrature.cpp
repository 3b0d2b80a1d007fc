#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dgrec/quadrature.hpp"

using namespace dgrec;

namespace {

// Exact monomial integral over the reference triangle {x,y>=0, x+y<=1}:
// int x^a y^b = a! b! / (a+b+2)!.
double ref_monomial(int a, int b) {
  auto fact = [](int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  return fact(a) * fact(b) / fact(a + b + 2);
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("triangle rules have positive weights summing to the reference area") {
  for (int d = 1; d <= 20; ++d) {
    const QuadratureRule& r = triangle_rule(d);
    REQUIRE(r.size() > 0);
    double s = 0.0;
    for (int q = 0; q < r.size(); ++q) {
      CHECK(r.weights[q] > 0.0);
      const double x = r.points[q].x(), y = r.points[q].y();
      CHECK(x >= -1e-14);
      CHECK(y >= -1e-14);
      CHECK(x + y <= 1.0 + 1e-14);
      s += r.weights[q];
    }
    CHECK(s == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("triangle rules integrate all monomials of the advertised degree") {
  for (int d = 1; d <= 20; ++d) {
    const QuadratureRule& r = triangle_rule(d);
    REQUIRE(r.exact_degree >= d);
    for (int a = 0; a + 0 <= r.exact_degree; ++a) {
      for (int b = 0; a + b <= r.exact_degree; ++b) {
        double s = 0.0;
        for (int q = 0; q < r.size(); ++q)
          s += r.weights[q] * std::pow(r.points[q].x(), a) *
               std::pow(r.points[q].y(), b);
        CHECK(s == doctest::Approx(ref_monomial(a, b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("lowest-order triangle rules have the classic point counts") {
  const QuadratureRule& r1 = triangle_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.points[0].x() == doctest::Approx(1.0 / 3.0));
  CHECK(r1.points[0].y() == doctest::Approx(1.0 / 3.0));
  CHECK(r1.weights[0] == doctest::Approx(0.5));

  const QuadratureRule& r2 = triangle_rule(2);
  REQUIRE(r2.size() == 3);
  for (int q = 0; q < 3; ++q) CHECK(r2.weights[q] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("specific frozen value: int x^2 y over the reference triangle") {
  CHECK(ref_monomial(2, 1) == doctest::Approx(1.0 / 60.0).epsilon(1e-15));
  const QuadratureRule& r = triangle_rule(4);
  double s = 0.0;
  for (int q = 0; q < r.size(); ++q)
    s += r.weights[q] * r.points[q].x() * r.points[q].x() * r.points[q].y();
  CHECK(s == doctest::Approx(1.0 / 60.0).epsilon(1e-14));
}

TEST_CASE("edge rules are Gauss rules on [0,1]") {
  for (int d = 1; d <= 20; ++d) {
    const QuadratureRule& r = edge_rule(d);
    double s = 0.0;
    for (int q = 0; q < r.size(); ++q) s += r.weights[q];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 0; k <= r.exact_degree; ++k) {
      double m = 0.0;
      for (int q = 0; q < r.size(); ++q)
        m += r.weights[q] * std::pow(r.points[q].x(), k);
      CHECK(m == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("integrate_triangle maps affinely to physical elements") {
  const Eigen::Vector2d p0(0, 0), p1(2, 0), p2(0, 2);
  const QuadratureRule& r = triangle_rule(3);
  const double area = integrate_triangle(r, p0, p1, p2,
                                         [](const Eigen::Vector2d&) { return 1.0; });
  CHECK(area == doctest::Approx(2.0).epsilon(1e-14));
  const double mx = integrate_triangle(
      r, p0, p1, p2, [](const Eigen::Vector2d& x) { return x.x(); });
  CHECK(mx == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("integrate_edge carries the segment length") {
  const Eigen::Vector2d a(0, 0), b(3, 4);
  const QuadratureRule& r = edge_rule(3);
  CHECK(integrate_edge(r, a, b, [](const Eigen::Vector2d&) { return 1.0; }) ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK(integrate_edge(r, a, b, [](const Eigen::Vector2d& x) { return x.x(); }) ==
        doctest::Approx(7.5).epsilon(1e-14));
}

TEST_CASE("degrees outside the supported range are rejected") {
  CHECK_THROWS_AS(triangle_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(21), std::invalid_argument);
  CHECK_THROWS_AS(edge_rule(-1), std::invalid_argument);
}

}  // TEST_SUITE
