#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dgrec {

// Quadrature on the reference triangle {(x,y) : x >= 0, y >= 0, x + y <= 1}
// or on the reference segment [0,1].  Weights sum to the reference measure
// (1/2 for the triangle, 1 for the segment) and are all positive.
struct QuadratureRule {
  std::vector<Eigen::Vector2d> points;  // segment rules use the x component
  std::vector<double> weights;
  int exact_degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Smallest shipped rule integrating polynomials of total degree <= degree
// exactly.  Rules are cached; references stay valid for the program lifetime.
// Throws std::invalid_argument outside the supported range [1, 20].
const QuadratureRule& triangle_rule(int degree);
const QuadratureRule& edge_rule(int degree);

// Gauss-Legendre points/weights on [0,1], n >= 1 (exact degree 2n-1).
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w);

// Integral of f over the physical triangle (p0,p1,p2).
template <class F>
double integrate_triangle(const QuadratureRule& rule, const Eigen::Vector2d& p0,
                          const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                          F&& f) {
  const Eigen::Vector2d e1 = p1 - p0;
  const Eigen::Vector2d e2 = p2 - p0;
  const double jac = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d x = p0 + rule.points[q].x() * e1 + rule.points[q].y() * e2;
    sum += rule.weights[q] * f(x);
  }
  return sum * jac;  // weights sum to 1/2, area = jac/2
}

// Integral of f over the physical segment (p0,p1).
template <class F>
double integrate_edge(const QuadratureRule& rule, const Eigen::Vector2d& p0,
                      const Eigen::Vector2d& p1, F&& f) {
  const double len = (p1 - p0).norm();
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const double t = rule.points[q].x();
    sum += rule.weights[q] * f(p0 + t * (p1 - p0));
  }
  return sum * len;
}

}  // namespace dgrec
