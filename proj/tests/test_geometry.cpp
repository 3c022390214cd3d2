#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lieheat/geometry.hpp"

using namespace lieheat;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd random_point(std::mt19937_64& gen, int n, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(gen);
  return v.normalized() * radius * std::abs(u(gen));
}

// su(2) at scale 1: ad_X has eigenvalues 0, +-i sqrt(2)|X|, so
// j(X) = sin(|X|/sqrt2) / (|X|/sqrt2).
double su2_j(const VectorXd& x) {
  const double a = x.norm() / std::sqrt(2.0);
  return a == 0.0 ? 1.0 : std::sin(a) / a;
}

const std::vector<GroupSpec> kGroups = {make_torus(2), make_group(Family::su2), make_group(Family::so3),
                                        make_group(Family::su3)};

}  // namespace

TEST_CASE("dexp factor") {
  const auto su2 = build_algebra(make_group(Family::su2));
  CHECK((dexp_factor(su2, VectorXd(VectorXd::Zero(3))) - MatrixXd::Identity(3, 3)).norm() == 0.0);
  const auto torus = build_algebra(make_torus(3));
  CHECK((dexp_factor(torus, VectorXd(VectorXd::Constant(3, 2.0))) - MatrixXd::Identity(3, 3)).norm() == 0.0);
  // ad(sqrt2 e3) has eigenvalues +-2i: det A = sin(1)^2.
  const VectorXd x = std::sqrt(2.0) * su2.basis_vector(2);
  CHECK(dexp_factor(su2, x).determinant() == doctest::Approx(std::sin(1.0) * std::sin(1.0)).epsilon(1e-14));
  CHECK(std::sin(1.0) * std::sin(1.0) == doctest::Approx(0.708073).epsilon(1e-6));
  // A(X) X = X since [X, X] = 0.
  std::mt19937_64 gen(1);
  for (const auto& spec : kGroups) {
    const auto alg = build_algebra(spec);
    for (int k = 0; k < 5; ++k) {
      const VectorXd y = random_point(gen, alg.dim, 2.0);
      CHECK((dexp_factor(alg, y) * y - y).norm() < 1e-13);
    }
  }
}

TEST_CASE("chart metric") {
  const auto su2 = build_algebra(make_group(Family::su2));
  const VectorXd x = std::sqrt(2.0) * su2.basis_vector(2);
  const auto s = chart_metric(su2, x);
  CHECK(s.det_g == doctest::Approx(std::pow(std::sin(1.0), 4)).epsilon(1e-13));
  CHECK((s.g * s.g_inv - MatrixXd::Identity(3, 3)).norm() < 1e-13);
  CHECK((s.g - s.g.transpose()).norm() < 1e-14);
  // Normal coordinates: g(0) = I and the radial direction is unit length.
  CHECK((chart_metric(su2, VectorXd(VectorXd::Zero(3))).g - MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK(x.dot(s.g * x) == doctest::Approx(x.squaredNorm()).epsilon(1e-13));
  CHECK_THROWS_AS(chart_metric(su2, VectorXd(VectorXd::Constant(3, 4.0))), ChartDomainError);
  CHECK_THROWS_AS(chart_metric(su2, VectorXd(VectorXd::Zero(2))), std::invalid_argument);
}

TEST_CASE("volume density equals j squared") {
  std::mt19937_64 gen(2);
  for (const auto& spec : kGroups) {
    CAPTURE(spec.name());
    const auto alg = build_algebra(spec);
    for (int k = 0; k < 30; ++k) {
      const VectorXd x = random_point(gen, alg.dim, 1.5);
      const double j = j_function(alg, x);
      CHECK(std::sqrt(chart_metric(alg, x).det_g) == doctest::Approx(j * j).epsilon(1e-12));
    }
  }
  const auto su2 = build_algebra(make_group(Family::su2));
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = random_point(gen, 3, 3.0);
    CHECK(std::sqrt(chart_metric(su2, x).det_g) == doctest::Approx(su2_j(x) * su2_j(x)).epsilon(1e-12));
  }
}

TEST_CASE("flat laplacian") {
  const auto quad = [](const VectorXd& y) { return y.squaredNorm(); };
  CHECK(flat_laplacian(quad, VectorXd(VectorXd::Constant(4, 0.3))) == doctest::Approx(8.0).epsilon(1e-8));
  const auto wave = [](const VectorXd& y) { return std::sin(y(0)) * std::cos(2.0 * y(1)); };
  VectorXd p(2);
  p << 0.4, -0.2;
  CHECK(flat_laplacian(wave, p) == doctest::Approx(-5.0 * wave(p)).epsilon(1e-6));
}

TEST_CASE("Laplace-Beltrami in the chart") {
  const auto torus = build_algebra(make_torus(1));
  const auto cosine = [](const VectorXd& y) { return std::cos(y(0)); };
  const VectorXd p = VectorXd::Constant(1, 0.7);
  CHECK(laplace_beltrami_chart(torus, cosine, p) == doctest::Approx(-std::cos(0.7)).epsilon(1e-6));

  const auto su2 = build_algebra(make_group(Family::su2));
  const auto constant = [](const VectorXd&) { return 3.0; };
  CHECK(std::abs(laplace_beltrami_chart(su2, constant, VectorXd(VectorXd::Constant(3, 0.2)))) < 1e-9);
  const auto norm2 = [](const VectorXd& y) { return y.squaredNorm(); };
  CHECK(laplace_beltrami_chart(su2, norm2, VectorXd(VectorXd::Zero(3))) == doctest::Approx(6.0).epsilon(1e-6));

  // Radial functions: Delta f = f'' + (n-1)/r f' + (log sqrt det g)' f' with
  // sqrt det g = j^2; for su2, r d/dr log j^2 gives 2 (a cot a - 1)/r.
  const auto gauss = test_field<double>(TestField::gaussian);
  std::mt19937_64 gen(4);
  for (int k = 0; k < 5; ++k) {
    const VectorXd x = random_point(gen, 3, 1.0);
    const double r = x.norm();
    const double a = r / std::sqrt(2.0);
    const double f1 = -2.0 * r * std::exp(-r * r);
    const double f2 = (4.0 * r * r - 2.0) * std::exp(-r * r);
    const double oracle = f2 + 2.0 / r * f1 + 2.0 * (a / std::tan(a) - 1.0) / r * f1;
    CHECK(laplace_beltrami_chart(su2, gauss, x) == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("curvature") {
  const auto su2 = build_algebra(make_group(Family::su2));
  CHECK(riemann(su2, su2.basis_vector(0), su2.basis_vector(1), su2.basis_vector(1), su2.basis_vector(0)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  const std::vector<double> expected = {0.0, 3.0, 0.75, 12.0};
  for (std::size_t i = 0; i < kGroups.size(); ++i) {
    const auto s = scalar_curvature(build_algebra(kGroups[i]));
    CHECK(s.from_curvature == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(std::abs(s.from_curvature - s.from_casimir) < 1e-10);
  }
  CHECK(scalar_curvature(build_algebra(make_group(Family::su3, 2.0))).from_curvature ==
        doctest::Approx(6.0).epsilon(1e-12));
  // Sectional curvatures of a bi-invariant metric are nonnegative.
  std::mt19937_64 gen(6);
  const auto su3 = build_algebra(make_group(Family::su3));
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = random_point(gen, 8, 1.0), y = random_point(gen, 8, 1.0);
    CHECK(riemann(su3, x, y, y, x) >= -1e-14);
    CHECK(riemann(su3, x, y, y, x) == doctest::Approx(-riemann(su3, y, x, y, x)).epsilon(1e-12));
  }
}

TEST_CASE("chart conjugation identity on Ad-invariant fields") {
  std::mt19937_64 gen(8);
  for (const auto& spec : kGroups) {
    CAPTURE(spec.name());
    const auto alg = build_algebra(spec);
    const RootSystem rs = root_system(alg);
    for (TestField kind : {TestField::gaussian, TestField::radial_quadratic, TestField::radial_quartic}) {
      const auto f = test_field<double>(kind);
      for (int k = 0; k < 4; ++k) {
        const VectorXd x = random_point(gen, alg.dim, 0.5);
        CHECK(std::abs(chart_identity_residual(alg, rs, f, x)) < 1e-4);
      }
    }
  }
}

TEST_CASE("chart conjugation at the origin holds for any field") {
  for (const auto& spec : kGroups) {
    const auto alg = build_algebra(spec);
    const RootSystem rs = root_system(alg);
    const auto f = test_field<double>(TestField::linear_gaussian);
    CHECK(std::abs(chart_identity_residual(alg, rs, f, VectorXd(VectorXd::Zero(alg.dim)))) < 1e-4);
  }
  // Away from the origin a non-invariant field breaks it.
  const auto su2 = build_algebra(make_group(Family::su2));
  VectorXd x(3);
  x << 0.2, 0.3, 0.4;
  CHECK(std::abs(chart_identity_residual(su2, root_system(su2), test_field<double>(TestField::linear_gaussian), x)) >
        1e-3);
}

TEST_CASE("long double chart geometry") {
  const auto alg = build_algebra<long double>(make_group(Family::su2));
  VectorX<long double> x(3);
  x << 0.1L, 0.2L, -0.3L;
  const auto s = chart_metric(alg, x);
  const long double j = j_function(alg, x);
  CHECK(static_cast<double>(std::abs(std::sqrt(s.det_g) - j * j)) < 1e-17);
}
