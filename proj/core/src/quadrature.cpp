#include "dgrec/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace dgrec {

namespace {

constexpr int kMaxDegree = 20;

// Golub-Welsch: nodes/weights of the Gauss rule for a weight function whose
// orthogonal polynomials satisfy x p_k = p_{k+1} + alpha_k p_k + beta_k p_{k-1}.
// mu0 is the total mass of the weight.
void golub_welsch(const std::vector<double>& alpha, const std::vector<double>& beta,
                  double mu0, std::vector<double>& x, std::vector<double>& w) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = alpha[i];
    if (i + 1 < n) {
      const double b = std::sqrt(beta[i + 1]);
      J(i, i + 1) = b;
      J(i + 1, i) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
}

// Gauss-Legendre on [-1,1].
void gauss_legendre_sym(int n, std::vector<double>& x, std::vector<double>& w) {
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  for (int k = 1; k < n; ++k) beta[k] = k * k / (4.0 * k * k - 1.0);
  golub_welsch(alpha, beta, 2.0, x, w);
}

// Gauss-Jacobi on [-1,1] for the weight (1-x); used for the conical product
// rule where (1-v) is the Jacobian of the square-to-triangle collapse.
void gauss_jacobi10_sym(int n, std::vector<double>& x, std::vector<double>& w) {
  std::vector<double> alpha(n), beta(n, 0.0);
  for (int k = 0; k < n; ++k)
    alpha[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + 1.0;
    beta[k] = k * (k + 1.0) / (d * d);
  }
  golub_welsch(alpha, beta, 2.0, x, w);
}

QuadratureRule make_triangle_rule(int degree) {
  QuadratureRule rule;
  if (degree <= 1) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    rule.exact_degree = 1;
    return rule;
  }
  if (degree == 2) {
    // Classical edge-midpoint rule.
    rule.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    rule.exact_degree = 2;
    return rule;
  }
  // Conical product: x = u(1-v), y = v with GL points in u and Gauss-Jacobi
  // (weight 1-v) points in v; exact for total degree <= 2n-1.
  const int n = (degree + 2) / 2;
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre_sym(n, xu, wu);
  gauss_jacobi10_sym(n, xv, wv);
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    const double v = 0.5 * (1.0 + xv[j]);
    const double wj = wv[j] / 4.0;
    for (int i = 0; i < n; ++i) {
      const double u = 0.5 * (1.0 + xu[i]);
      rule.points.push_back({u * (1.0 - v), v});
      rule.weights.push_back(0.5 * wu[i] * wj);
    }
  }
  rule.exact_degree = 2 * n - 1;
  return rule;
}

QuadratureRule make_edge_rule(int degree) {
  const int n = (degree + 2) / 2;
  std::vector<double> x, w;
  gauss_legendre_sym(n, x, w);
  QuadratureRule rule;
  rule.points.reserve(n);
  rule.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    rule.points.push_back({0.5 * (1.0 + x[i]), 0.0});
    rule.weights.push_back(0.5 * w[i]);
  }
  rule.exact_degree = 2 * n - 1;
  return rule;
}

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw std::invalid_argument("quadrature degree " + std::to_string(degree) +
                                " outside supported range [1, " +
                                std::to_string(kMaxDegree) + "]");
}

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  std::vector<double> xs, ws;
  gauss_legendre_sym(n, xs, ws);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (1.0 + xs[i]);
    w[i] = 0.5 * ws[i];
  }
}

const QuadratureRule& triangle_rule(int degree) {
  check_degree(degree);
  static std::vector<QuadratureRule> cache(kMaxDegree + 1);
  static std::once_flag once;
  std::call_once(once, [] {
    for (int d = 1; d <= kMaxDegree; ++d) cache[d] = make_triangle_rule(d);
  });
  return cache[degree];
}

const QuadratureRule& edge_rule(int degree) {
  check_degree(degree);
  static std::vector<QuadratureRule> cache(kMaxDegree + 1);
  static std::once_flag once;
  std::call_once(once, [] {
    for (int d = 1; d <= kMaxDegree; ++d) cache[d] = make_edge_rule(d);
  });
  return cache[degree];
}

}  // namespace dgrec
