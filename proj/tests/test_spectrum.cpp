#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lieheat/spectrum.hpp"

using namespace lieheat;
using Eigen::VectorXd;

namespace {

constexpr double kPi = std::numbers::pi;

// su(2), scale 1: irreps m = 1, 2, ... (dimension) with c = (m^2 - 1)/2.
double su2_direct(double t, int terms = 400) {
  double z = 0.0;
  for (int m = terms; m >= 1; --m) z += double(m) * m * std::exp(-t * (m * m - 1) / 2.0);
  return z;
}

// so(3), scale 1: odd dimensions m = 2l+1 with c = l(l+1)/2 = (m^2 - 1)/8.
double so3_direct(double t, int terms = 400) {
  double z = 0.0;
  for (int l = terms; l >= 0; --l) z += (2.0 * l + 1) * (2.0 * l + 1) * std::exp(-t * l * (l + 1) / 2.0);
  return z;
}

double theta_sum(double t, int terms = 200) {
  double z = 1.0;
  for (int k = terms; k >= 1; --k) z += 2.0 * std::exp(-t * k * k);
  return z;
}

// Leading Poisson terms. With sum_{m in Z} m^2 exp(-a m^2) ~ sqrt(pi) / (2 a^{3/2}):
//   su2: Z ~ e^{t/2} sqrt(pi)/(4 (t/2)^{3/2}),  V = 4 sqrt2 pi^2;
//   so3: Z ~ e^{t/8} sqrt(pi)/(8 (t/8)^{3/2}),  V = 16 sqrt2 pi^2;
//   torus:1 with circumference 2 pi: V = 2 pi.
const double kVolSu2 = 4.0 * std::sqrt(2.0) * kPi * kPi;
const double kVolSo3 = 16.0 * std::sqrt(2.0) * kPi * kPi;
const double kVolCircle = 2.0 * kPi;

GroupModel model(Family f, double s = 1.0) { return GroupModel::build(make_group(f, s)); }

}  // namespace

TEST_CASE("su2 heat trace against the direct sum") {
  const GroupModel g = model(Family::su2);
  for (double t : {0.05, 0.2, 1.0, 3.0}) {
    const HeatTraceValue z = heat_trace(g, t, 1e-12);
    CHECK(z.value == doctest::Approx(su2_direct(t)).epsilon(1e-13));
    CHECK(z.tail_bound <= 1e-12);
  }
  CHECK(heat_trace(model(Family::so3), 0.1, 1e-12).value == doctest::Approx(so3_direct(0.1)).epsilon(1e-13));
}

TEST_CASE("torus heat trace is a theta sum") {
  const GroupModel t1 = GroupModel::build(make_torus(1));
  CHECK(heat_trace(t1, 1.0, 1e-14).value == doctest::Approx(1.7726372).epsilon(1e-7));
  for (double t : {0.05, 0.3, 2.0}) {
    CHECK(heat_trace(t1, t, 1e-13).value == doctest::Approx(theta_sum(t)).epsilon(1e-13));
    const double th = theta_sum(t);
    CHECK(heat_trace(GroupModel::build(make_torus(2)), t, 1e-13).value == doctest::Approx(th * th).epsilon(1e-12));
  }
}

TEST_CASE("heat trace tends to 1 for large t") {
  for (Family f : {Family::su2, Family::so3, Family::su3}) {
    const GroupModel g = model(f);
    // Only the first excited level matters at t = 10.
    const auto levels = eigenvalue_list(g, 10.0);
    REQUIRE(levels.size() >= 2);
    const double first = levels[1].second * std::exp(-10.0 * levels[1].first);
    CHECK(heat_trace(g, 10.0, 1e-16).value - 1.0 == doctest::Approx(first).epsilon(1e-6));
  }
}

TEST_CASE("normalized trace approaches the Poisson constants") {
  CHECK(vhat(model(Family::su2), 0.1, 1e-12).value == doctest::Approx(kVolSu2).epsilon(1e-12));
  CHECK(vhat(model(Family::so3), 0.1, 1e-12).value == doctest::Approx(kVolSo3).epsilon(1e-12));
  CHECK(vhat(GroupModel::build(make_torus(1)), 0.1, 1e-12).value == doctest::Approx(kVolCircle).epsilon(1e-12));
  // Flat in t on a grid.
  std::vector<double> ts;
  for (int k = 0; k < 8; ++k) ts.push_back(0.05 + 0.02 * k);
  for (Family f : {Family::su2, Family::so3, Family::su3}) {
    const TraceCurve c = trace_curve(model(f), ts, 1e-12);
    REQUIRE(c.vhat.size() == ts.size());
    for (double v : c.vhat) CHECK(v == doctest::Approx(c.vhat.front()).epsilon(1e-12));
    for (std::size_t i = 1; i < c.z.size(); ++i) CHECK(c.z[i] < c.z[i - 1]);
  }
}

TEST_CASE("eigenvalue lists") {
  const auto su2 = eigenvalue_list(model(Family::su2), 4.0);
  REQUIRE(su2.size() == 3);
  CHECK(su2[1].first == doctest::Approx(1.5));
  CHECK(su2[1].second == 4);
  CHECK(su2[2].second == 9);
  // su3: the two 3-dimensional irreps share c = 8/3.
  const auto su3 = eigenvalue_list(model(Family::su3), 6.0);
  REQUIRE(su3.size() == 3);
  CHECK(su3[1].first == doctest::Approx(8.0 / 3.0));
  CHECK(su3[1].second == 18);
  CHECK(su3[2].first == doctest::Approx(6.0));
  CHECK(su3[2].second == 64);
  // torus:1: c = k^2 with multiplicity 2 for k != 0.
  const auto circle = eigenvalue_list(GroupModel::build(make_torus(1)), 9.0);
  REQUIRE(circle.size() == 4);
  CHECK(circle[3].first == doctest::Approx(9.0));
  CHECK(circle[3].second == 2);
}

TEST_CASE("tail bounds dominate the true remainder") {
  for (Family f : {Family::su2, Family::so3, Family::su3}) {
    const GroupModel g = model(f);
    for (double t : {0.05, 0.2, 1.0}) {
      const double reference = heat_trace_at_cutoff(g, t, 4000.0 / t).value;
      for (double cutoff : {50.0, 200.0, 800.0}) {
        const HeatTraceValue z = heat_trace_at_cutoff(g, t, cutoff);
        const double remainder = reference - z.value;
        CAPTURE(g.spec.name());
        CAPTURE(t);
        CAPTURE(cutoff);
        CHECK(remainder <= z.tail_bound * (1.0 + 1e-12) + 1e-12 * reference);
      }
    }
  }
  // Below the peak of the summand the bound is vacuous.
  CHECK(std::isinf(spectral_tail_bound(model(Family::su2).roots, 0.01, 1.0)));
  const auto [cutoff, bound] = adaptive_cutoff(model(Family::su3), 0.05, 1e-12);
  CHECK(bound <= 1e-12);
  CHECK(cutoff >= 8.0);
}

TEST_CASE("scale covariance") {
  for (Family f : {Family::su2, Family::so3, Family::su3}) {
    const GroupModel g1 = model(f);
    for (double s : {0.5, 2.0}) {
      const GroupModel gs = model(f, s);
      for (double t : {0.05, 0.15}) {
        CHECK(heat_trace(gs, t, 1e-13).value == doctest::Approx(heat_trace(g1, t / s, 1e-13).value).epsilon(1e-11));
        CHECK(vhat(gs, t, 1e-13).value ==
              doctest::Approx(std::pow(s, g1.dim() / 2.0) * vhat(g1, t, 1e-13).value).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("spectral kernel ratio") {
  const GroupModel circle = GroupModel::build(make_torus(1));
  for (double h : {0.3, 1.0, 2.5}) {
    const double t = 0.2;
    double num = 1.0, den = 1.0;
    for (int k = 1; k < 100; ++k) {
      num += 2.0 * std::exp(-t * k * k) * std::cos(k * h);
      den += 2.0 * std::exp(-t * k * k);
    }
    CHECK(spectral_kernel_ratio(circle, VectorXd::Constant(1, h), t, 1e-14).ratio ==
          doctest::Approx(num / den).epsilon(1e-12));
  }
  const GroupModel su2 = model(Family::su2);
  // su2 character oracle: sum m sin(m a)/sin(a) e^{-t(m^2-1)/2} with a = h/sqrt2.
  const double h = 0.9, t = 0.3, a = h / std::sqrt(2.0);
  double num = 0.0;
  for (int m = 1; m < 200; ++m) num += m * std::sin(m * a) / std::sin(a) * std::exp(-t * (m * m - 1) / 2.0);
  CHECK(spectral_kernel_ratio(su2, VectorXd::Constant(1, h), t, 1e-14).ratio ==
        doctest::Approx(num / su2_direct(t)).epsilon(1e-12));
  // A constant eigenvalue shift cancels.
  for (Family f : {Family::su2, Family::su3}) {
    const GroupModel g = model(f);
    VectorXd p = VectorXd::Constant(g.rank(), 0.2);
    p(0) = 0.35;
    const double r0 = spectral_kernel_ratio(g, p, 0.1, 1e-13).ratio;
    CHECK(spectral_kernel_ratio(g, p, 0.1, 1e-13, g.rho_norm2).ratio == doctest::Approx(r0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(spectral_kernel_ratio(su2, VectorXd::Constant(2, 0.1), 0.1, 1e-12), std::invalid_argument);
}

TEST_CASE("heat kernel is positive") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (Family f : {Family::su2, Family::so3, Family::su3}) {
    const GroupModel g = model(f);
    const auto weights = dominant_weights(g.roots, adaptive_cutoff(g, 0.1, 1e-12).first);
    for (int k = 0; k < 10; ++k) {
      VectorXd h(g.rank());
      for (int a = 0; a < g.rank(); ++a) h(a) = u(gen) * (a + 1.1);
      CHECK(unnormalized_kernel(g, weights, h, 0.1) > 0.0);
    }
  }
}

TEST_CASE("argument validation") {
  const GroupModel g = model(Family::su2);
  CHECK_THROWS_AS(heat_trace(g, 0.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(heat_trace(g, -1.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(heat_trace(g, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(trace_curve(g, {0.2, 0.1}, 1e-12), std::invalid_argument);
}
