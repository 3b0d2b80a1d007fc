#include "dgrec/problem.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dgrec {

namespace {
constexpr double kPi = std::numbers::pi;
}

double min_eig(const Eigen::Matrix2d& m) {
  const double tr = 0.5 * (m(0, 0) + m(1, 1));
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return tr - std::sqrt(std::max(0.0, tr * tr - det));
}

double max_eig(const Eigen::Matrix2d& m) {
  const double tr = 0.5 * (m(0, 0) + m(1, 1));
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return tr + std::sqrt(std::max(0.0, tr * tr - det));
}

CoefficientBounds coefficient_bounds(const Coefficients& c) {
  if (c.a.empty()) throw std::invalid_argument("coefficient_bounds: no diffusion data");
  CoefficientBounds b;
  b.c_a = min_eig(c.a[0]);
  b.C_a = max_eig(c.a[0]);
  b.kappa = 1.0;
  for (const auto& m : c.a) {
    const double lo = min_eig(m), hi = max_eig(m);
    if (lo <= 0.0)
      throw std::invalid_argument("coefficient_bounds: diffusion tensor not positive definite");
    b.c_a = std::min(b.c_a, lo);
    b.C_a = std::max(b.C_a, hi);
    b.kappa = std::max(b.kappa, hi / lo);
  }
  b.c_beta_mu = c.c_beta_mu;
  b.M = (c.c_beta_mu > 0.0) ? std::max(1.0, c.sup_abs_mu / c.c_beta_mu) : 1.0;
  return b;
}

double singular_exponent(double contrast) {
  if (!(contrast > 0.0))
    throw std::invalid_argument("singular_exponent: contrast must be positive");
  return 4.0 / kPi * std::atan(1.0 / std::sqrt(contrast));
}

int AngularProfile::quadrant(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  int q = static_cast<int>(t / (0.5 * kPi));
  return std::min(q, 3);
}

double AngularProfile::value(double theta) const {
  const int q = quadrant(theta);
  return A[q] * std::cos(alpha * theta) + B[q] * std::sin(alpha * theta);
}

double AngularProfile::deriv(double theta) const {
  const int q = quadrant(theta);
  return alpha * (-A[q] * std::sin(alpha * theta) + B[q] * std::cos(alpha * theta));
}

AngularProfile angular_profile(double contrast) {
  const double alpha = singular_exponent(contrast);
  const std::array<double, 4> eps = {contrast, 1.0, contrast, 1.0};

  // Unknowns (A_0, B_0, ..., A_3, B_3).  Rows: continuity of phi and of
  // eps phi' at theta = pi/2, pi, 3 pi/2 and across the wrap 2 pi -> 0.
  Eigen::Matrix<double, 8, 8> S = Eigen::Matrix<double, 8, 8>::Zero();
  int row = 0;
  for (int k = 1; k <= 3; ++k) {
    const double th = 0.5 * kPi * k;
    const double c = std::cos(alpha * th), s = std::sin(alpha * th);
    const int q = k - 1;
    S(row, 2 * q) = c;
    S(row, 2 * q + 1) = s;
    S(row, 2 * (q + 1)) = -c;
    S(row, 2 * (q + 1) + 1) = -s;
    ++row;
    S(row, 2 * q) = -eps[q] * s;
    S(row, 2 * q + 1) = eps[q] * c;
    S(row, 2 * (q + 1)) = eps[q + 1] * s;
    S(row, 2 * (q + 1) + 1) = -eps[q + 1] * c;
    ++row;
  }
  {
    const double c = std::cos(alpha * 2.0 * kPi), s = std::sin(alpha * 2.0 * kPi);
    S(row, 6) = c;
    S(row, 7) = s;
    S(row, 0) = -1.0;
    ++row;
    S(row, 6) = -eps[3] * s;
    S(row, 7) = eps[3] * c;
    S(row, 1) = -eps[0];
    ++row;
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(S, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(7) > 1e-10 * sv(0))
    throw std::runtime_error("angular_profile: interface system has no null vector");
  if (sv(6) < 1e-6 * sv(0))
    throw std::runtime_error("angular_profile: null space not one-dimensional");
  Eigen::Matrix<double, 8, 1> x = svd.matrixV().col(7);

  AngularProfile p;
  p.alpha = alpha;
  for (int q = 0; q < 4; ++q) {
    p.A[q] = x(2 * q);
    p.B[q] = x(2 * q + 1);
  }
  const double scale = p.value(0.25 * kPi);
  if (std::abs(scale) < 1e-12)
    throw std::runtime_error("angular_profile: degenerate normalization");
  for (int q = 0; q < 4; ++q) {
    p.A[q] /= scale;
    p.B[q] /= scale;
  }
  p.residual = (S * (x / scale)).norm();
  return p;
}

double radial_cutoff(double r) {
  if (r <= 1.0 / 3.0) return 1.0;
  if (r >= 2.0 / 3.0) return 0.0;
  const double d = r - 2.0 / 3.0;
  return d * d * (54.0 * r - 9.0);
}

double radial_cutoff_d(double r) {
  if (r <= 1.0 / 3.0 || r >= 2.0 / 3.0) return 0.0;
  return 162.0 * (r - 2.0 / 3.0) * (r - 1.0 / 3.0);
}

double radial_cutoff_dd(double r) {
  if (r <= 1.0 / 3.0 || r >= 2.0 / 3.0) return 0.0;
  return 162.0 * (2.0 * r - 1.0);
}

namespace {

Coefficients convection_reaction_coeffs(std::vector<Eigen::Matrix2d> a, double mu_value) {
  Coefficients c;
  c.a = std::move(a);
  c.beta = [](const Eigen::Vector2d&) { return Eigen::Vector2d(1.0, 0.0); };
  c.mu = [mu_value](const Eigen::Vector2d&) { return mu_value; };
  c.div_beta = [](const Eigen::Vector2d&) { return 0.0; };
  c.c_beta_mu = mu_value;
  c.sup_abs_mu = std::abs(mu_value);
  c.beta_is_zero = false;
  return c;
}

}  // namespace

BenchmarkCase make_homogeneous_case(double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("make_homogeneous_case: epsilon must be positive");
  BenchmarkCase bc;
  bc.name = "homogeneous";
  bc.domain = DomainSpec::unit_square();
  bc.coeffs = convection_reaction_coeffs({epsilon * Eigen::Matrix2d::Identity()}, 1.0);

  // u = 1/2 x(x-1) y(y-1) (1 - tanh(10 - 20 x)) = w(x) h(y)
  auto w_parts = [](double x) {
    const double th = std::tanh(10.0 - 20.0 * x);
    const double s = 1.0 - th;
    const double sech2 = 1.0 - th * th;
    const double s1 = 20.0 * sech2;
    const double s2 = 800.0 * th * sech2;
    const double g = x * x - x, g1 = 2.0 * x - 1.0;
    struct {
      double w, w1, w2;
    } r{0.5 * g * s, 0.5 * (g1 * s + g * s1), 0.5 * (2.0 * s + 2.0 * g1 * s1 + g * s2)};
    return r;
  };
  auto h = [](double y) { return y * y - y; };
  auto h1 = [](double y) { return 2.0 * y - 1.0; };

  bc.u = [=](const Eigen::Vector2d& p) { return w_parts(p.x()).w * h(p.y()); };
  bc.grad_u = [=](const Eigen::Vector2d& p) {
    const auto wp = w_parts(p.x());
    return Eigen::Vector2d(wp.w1 * h(p.y()), wp.w * h1(p.y()));
  };
  bc.f = [=](const Eigen::Vector2d& p) {
    const auto wp = w_parts(p.x());
    const double lap = wp.w2 * h(p.y()) + 2.0 * wp.w;
    return -epsilon * lap + wp.w1 * h(p.y()) + wp.w * h(p.y());
  };
  return bc;
}

BenchmarkCase make_singular_case(double contrast) {
  if (!(contrast > 0.0))
    throw std::invalid_argument("make_singular_case: contrast must be positive");
  BenchmarkCase bc;
  bc.name = "singular";
  bc.domain = DomainSpec::quadrants();
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  // tags: 0 first quadrant (eps = C), 1 second (1), 2 third (C), 3 fourth (1)
  bc.coeffs = convection_reaction_coeffs({contrast * I, I, contrast * I, I}, 1.0);
  bc.extra_error_quad = 2;

  const AngularProfile phi = angular_profile(contrast);
  const double alpha = phi.alpha;
  const std::array<double, 4> eps = {contrast, 1.0, contrast, 1.0};

  auto polar = [](const Eigen::Vector2d& p) {
    const double r = p.norm();
    double th = std::atan2(p.y(), p.x());
    if (th < 0.0) th += 2.0 * kPi;
    return std::pair<double, double>(r, th);
  };

  bc.u = [=](const Eigen::Vector2d& p) {
    const auto [r, th] = polar(p);
    if (r >= 2.0 / 3.0 || r == 0.0) return 0.0;
    return radial_cutoff(r) * std::pow(r, alpha) * phi.value(th);
  };
  bc.grad_u = [=](const Eigen::Vector2d& p) {
    const auto [r, th] = polar(p);
    if (r >= 2.0 / 3.0 || r == 0.0) return Eigen::Vector2d(0.0, 0.0);
    const double e = radial_cutoff(r), e1 = radial_cutoff_d(r);
    const double ra = std::pow(r, alpha);
    const double v = phi.value(th), v1 = phi.deriv(th);
    const double ur = e1 * ra * v + e * alpha * ra / r * v;  // d/dr
    const double ut = e * ra / r * v1;                       // (1/r) d/dtheta
    const Eigen::Vector2d er(std::cos(th), std::sin(th));
    const Eigen::Vector2d et(-std::sin(th), std::cos(th));
    return Eigen::Vector2d(ur * er + ut * et);
  };
  bc.f = [=](const Eigen::Vector2d& p) {
    const auto [r, th] = polar(p);
    if (r >= 2.0 / 3.0 || r == 0.0) return 0.0;
    const double e = radial_cutoff(r), e1 = radial_cutoff_d(r), e2 = radial_cutoff_dd(r);
    const double ra = std::pow(r, alpha);
    const double v = phi.value(th), v1 = phi.deriv(th);
    const double u = e * ra * v;
    // u_x in polar components
    const double ur = e1 * ra * v + e * alpha * ra / r * v;
    const double ut = e * ra / r * v1;
    const double ux = ur * std::cos(th) - ut * std::sin(th);
    // Laplacian: the uncut r^alpha phi is harmonic per quadrant, leaving the
    // cutoff terms 2 e' d(r^alpha phi)/dr + (e'' + e'/r) r^alpha phi.
    const double lap =
        2.0 * e1 * alpha * ra / r * v + (e2 + e1 / r) * ra * v;
    const int q = AngularProfile::quadrant(th);
    return -eps[q] * lap + ux + u;
  };
  return bc;
}

BenchmarkCase make_boundary_layer_case(double epsilon, double layer_width) {
  if (!(epsilon > 0.0) || !(layer_width > 0.0))
    throw std::invalid_argument("make_boundary_layer_case: parameters must be positive");
  BenchmarkCase bc;
  bc.name = "boundary_layer";
  bc.domain = DomainSpec::unit_square();
  bc.coeffs = convection_reaction_coeffs({epsilon * Eigen::Matrix2d::Identity()}, 0.0);

  // u = 10 y(1-y) x (exp(-x) - exp(-1 + (x-1)/layer_width))
  const double al = layer_width;
  auto g_parts = [al](double x) {
    const double ex = std::exp(-x);
    const double el = std::exp(-1.0 + (x - 1.0) / al);
    struct {
      double g, g1, g2;
    } r{x * (ex - el), ex * (1.0 - x) - el * (1.0 + x / al),
        ex * (x - 2.0) - el * (2.0 / al + x / (al * al))};
    return r;
  };
  auto h = [](double y) { return 10.0 * y * (1.0 - y); };
  auto h1 = [](double y) { return 10.0 * (1.0 - 2.0 * y); };

  bc.u = [=](const Eigen::Vector2d& p) { return g_parts(p.x()).g * h(p.y()); };
  bc.grad_u = [=](const Eigen::Vector2d& p) {
    const auto gp = g_parts(p.x());
    return Eigen::Vector2d(gp.g1 * h(p.y()), gp.g * h1(p.y()));
  };
  bc.f = [=](const Eigen::Vector2d& p) {
    const auto gp = g_parts(p.x());
    const double lap = gp.g2 * h(p.y()) - 20.0 * gp.g;
    return -epsilon * lap + gp.g1 * h(p.y());
  };
  return bc;
}

std::vector<std::string> case_names() {
  return {"homogeneous", "singular", "boundary_layer"};
}

BenchmarkCase make_case(const std::string& name, double epsilon, double contrast,
                        double layer_width) {
  if (name == "homogeneous") return make_homogeneous_case(epsilon);
  if (name == "singular") return make_singular_case(contrast);
  if (name == "boundary_layer") return make_boundary_layer_case(epsilon, layer_width);
  throw std::invalid_argument("make_case: unknown case '" + name + "'");
}

}  // namespace dgrec
