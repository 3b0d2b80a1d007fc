#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dgrec/mesh.hpp"

namespace dgrec {

// Data of -div(a grad u) + beta . grad u + mu u = f, u = 0 on the boundary.
// The diffusion tensor is symmetric positive definite and constant on each
// subdomain tag; beta, mu and div beta are smooth callbacks.
struct Coefficients {
  std::vector<Eigen::Matrix2d> a;  // by subdomain tag
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> beta;
  std::function<double(const Eigen::Vector2d&)> mu;
  std::function<double(const Eigen::Vector2d&)> div_beta;
  // Analytic global bounds (the problem class assumes mu - div beta / 2 is
  // a nonnegative constant-per-problem lower bound).
  double c_beta_mu = 0.0;  // inf over the domain of mu - div beta / 2
  double sup_abs_mu = 0.0;

  const Eigen::Matrix2d& A(int tag) const { return a.at(tag); }
  double reaction_weight(const Eigen::Vector2d& x) const {
    return mu(x) - 0.5 * div_beta(x);
  }
  bool beta_is_zero = false;  // enables skipping convective terms exactly
};

double min_eig(const Eigen::Matrix2d& m);
double max_eig(const Eigen::Matrix2d& m);

struct CoefficientBounds {
  double c_a = 0.0;      // min over tags of lambda_min(a)
  double C_a = 0.0;      // max over tags of lambda_max(a)
  double kappa = 1.0;    // max condition number of a
  double c_beta_mu = 0.0;
  double M = 1.0;  // max(1, sup|mu| / inf(mu - div beta/2)); 1 without reaction
};

CoefficientBounds coefficient_bounds(const Coefficients& c);

struct BenchmarkCase {
  std::string name;
  DomainSpec domain;
  Coefficients coeffs;
  bool has_exact = true;
  std::function<double(const Eigen::Vector2d&)> u;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> grad_u;
  std::function<double(const Eigen::Vector2d&)> f;
  // Added to the default error-norm quadrature degree (2 for the corner
  // singularity case).
  int extra_error_quad = 0;
};

// Exponent of the corner singularity r^alpha for the quadrant checkerboard
// with diffusion C, 1, C, 1: alpha = (4/pi) atan(1/sqrt(C)).  Requires C > 0.
double singular_exponent(double contrast);

// Angular factor of the checkerboard singular function: on quadrant q
// (0 = first, counterclockwise), phi(theta) = A[q] cos(alpha theta) +
// B[q] sin(alpha theta), theta in [0, 2 pi).  Continuous across the axes with
// continuous eps phi', normalized by phi(pi/4) = 1.
struct AngularProfile {
  double alpha = 0.0;
  std::array<double, 4> A{}, B{};
  // residual of the interface conditions of the computed coefficients
  double residual = 0.0;

  static int quadrant(double theta);
  double value(double theta) const;
  double deriv(double theta) const;  // d phi / d theta
};

AngularProfile angular_profile(double contrast);

// Radial cutoff: 1 for r <= 1/3, (r - 2/3)^2 (54 r - 9) for 1/3 <= r <= 2/3,
// 0 for r >= 2/3 (C^1 across both joints).
double radial_cutoff(double r);
double radial_cutoff_d(double r);
double radial_cutoff_dd(double r);

// Benchmark cases.
BenchmarkCase make_homogeneous_case(double epsilon);
BenchmarkCase make_singular_case(double contrast);
BenchmarkCase make_boundary_layer_case(double epsilon, double layer_width);

std::vector<std::string> case_names();

// name in {"homogeneous", "singular", "boundary_layer"}; unused parameters
// are ignored.  Throws std::invalid_argument for unknown names.
BenchmarkCase make_case(const std::string& name, double epsilon,
                        double contrast, double layer_width);

}  // namespace dgrec
