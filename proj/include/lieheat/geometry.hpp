#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "lieheat/liealg.hpp"
#include "lieheat/rootsys.hpp"

namespace lieheat {

/// The bi-invariant metric pulled back through the exponential chart.
template <typename Scalar>
struct ChartSample {
  VectorX<Scalar> x;
  MatrixX<Scalar> g;
  Scalar det_g{1};
  MatrixX<Scalar> g_inv;
};

/// Left-trivialized differential of exp: A(X) = sum_k (-ad_X)^k / (k+1)!.
template <typename Scalar, typename Derived>
MatrixX<Scalar> dexp_factor(const StructuredLieAlgebra<Scalar>& alg, const Eigen::MatrixBase<Derived>& x) {
  const MatrixX<Scalar> minus_ad = -ad_matrix(alg, x);
  const Scalar stop = std::min(Scalar(1e-16), Scalar(10) * std::numeric_limits<Scalar>::epsilon());
  MatrixX<Scalar> term = MatrixX<Scalar>::Identity(alg.dim, alg.dim);
  MatrixX<Scalar> a = term;
  for (int k = 1; k < 400; ++k) {
    term = (term * minus_ad / Scalar(k + 1)).eval();
    a += term;
    if (alg.dim == 0 || term.cwiseAbs().maxCoeff() < stop) break;
  }
  return a;
}

/// g(X) = A(X)^T A(X) in the orthonormal basis. Throws ChartDomainError outside
/// the chart.
template <typename Scalar, typename Derived>
ChartSample<Scalar> chart_metric(const StructuredLieAlgebra<Scalar>& alg, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != alg.dim) throw std::invalid_argument("chart_metric: coefficient length mismatch");
  if (!in_chart_domain(alg, x))
    throw ChartDomainError("point lies outside the exponential chart (ad angle >= 2*pi)");
  ChartSample<Scalar> out;
  out.x = x;
  const MatrixX<Scalar> a = dexp_factor(alg, x);
  out.g = a.transpose() * a;
  Eigen::LLT<MatrixX<Scalar>> llt(out.g);
  if (llt.info() != Eigen::Success) throw ConsistencyError("pulled-back metric is not positive definite");
  out.det_g = a.determinant();
  out.det_g *= out.det_g;
  out.g_inv = llt.solve(MatrixX<Scalar>::Identity(alg.dim, alg.dim));
  return out;
}

/// Laplace-Beltrami operator in the exponential chart by second-order central
/// differences of the flux form
///   (det g)^{-1/2} sum_i d_i( sqrt(det g) g^{ij} d_j f ).
/// Fluxes live on the half-step points X +- h/2 e_i.
template <typename Scalar, typename Field>
Scalar laplace_beltrami_chart(const StructuredLieAlgebra<Scalar>& alg, const Field& f, const VectorX<Scalar>& x,
                              Scalar h = Scalar(1e-3)) {
  const int n = alg.dim;
  const Scalar half = h / 2;
  auto flux = [&](const VectorX<Scalar>& y, int i) {
    const ChartSample<Scalar> s = chart_metric(alg, y);
    Scalar acc(0);
    for (int j = 0; j < n; ++j) {
      if (s.g_inv(i, j) == Scalar(0)) continue;
      VectorX<Scalar> yp = y, ym = y;
      yp(j) += half;
      ym(j) -= half;
      acc += s.g_inv(i, j) * (f(yp) - f(ym)) / h;
    }
    return std::sqrt(s.det_g) * acc;
  };
  Scalar div(0);
  for (int i = 0; i < n; ++i) {
    VectorX<Scalar> xp = x, xm = x;
    xp(i) += half;
    xm(i) -= half;
    div += (flux(xp, i) - flux(xm, i)) / h;
  }
  return div / std::sqrt(chart_metric(alg, x).det_g);
}

/// Constant-coefficient Laplacian with the same (three-point) stencil.
template <typename Scalar, typename Field>
Scalar flat_laplacian(const Field& f, const VectorX<Scalar>& x, Scalar h = Scalar(1e-3)) {
  const Scalar centre = f(x);
  Scalar acc(0);
  for (int i = 0; i < x.size(); ++i) {
    VectorX<Scalar> xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    acc += (f(xp) - 2 * centre + f(xm)) / (h * h);
  }
  return acc;
}

/// Rm(X,Y,Z,W) = -1/4 <[X,Y],[Z,W]> for a bi-invariant metric.
template <typename Scalar, typename DX, typename DY, typename DZ, typename DW>
Scalar riemann(const StructuredLieAlgebra<Scalar>& alg, const Eigen::MatrixBase<DX>& x,
               const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DZ>& z, const Eigen::MatrixBase<DW>& w) {
  return Scalar(-0.25) * bracket(alg, x, y).dot(bracket(alg, z, w));
}

template <typename Scalar>
struct ScalarCurvature {
  Scalar from_curvature{0};
  Scalar from_casimir{0};
};

/// Scalar curvature by two routes: the trace of the curvature tensor and
/// -tr_g(Cas)/4. Throws ConsistencyError if they differ by more than 1e-10.
template <typename Scalar>
ScalarCurvature<Scalar> scalar_curvature(const StructuredLieAlgebra<Scalar>& alg) {
  ScalarCurvature<Scalar> out;
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j) {
      const auto ei = alg.basis_vector(i);
      const auto ej = alg.basis_vector(j);
      out.from_curvature += riemann(alg, ei, ej, ej, ei);
    }
  out.from_casimir = Scalar(-0.25) * casimir_trace(alg);
  if (std::abs(out.from_curvature - out.from_casimir) > Scalar(1e-10))
    throw ConsistencyError("curvature trace and Casimir trace disagree on the scalar curvature");
  return out;
}

/// Smooth chart fields used by the conjugation checks. The radial ones are
/// Ad-invariant; `linear_gaussian` is not.
enum class TestField { gaussian, radial_quadratic, radial_quartic, linear_gaussian };

template <typename Scalar>
std::function<Scalar(const VectorX<Scalar>&)> test_field(TestField kind) {
  switch (kind) {
    case TestField::gaussian:
      return [](const VectorX<Scalar>& x) { return std::exp(-x.squaredNorm()); };
    case TestField::radial_quadratic:
      return [](const VectorX<Scalar>& x) {
        const Scalar r2 = x.squaredNorm();
        return (1 + r2) * std::exp(-r2 / 2);
      };
    case TestField::radial_quartic:
      return [](const VectorX<Scalar>& x) {
        const Scalar r2 = x.squaredNorm();
        return r2 * r2 * std::exp(-r2);
      };
    case TestField::linear_gaussian:
      return [](const VectorX<Scalar>& x) { return x(0) * std::exp(-x.squaredNorm()); };
  }
  return {};
}

/// Delta_G f - <rho,rho> f - j^{-1} Delta_flat(j f), evaluated at x with
/// step h. Vanishes (up to discretization) for Ad-invariant f anywhere in the
/// chart, and for every f at the origin.
template <typename Scalar, typename Field>
Scalar chart_identity_residual(const StructuredLieAlgebra<Scalar>& alg, const RootSystem& rs, const Field& f,
                               const VectorX<Scalar>& x, Scalar h = Scalar(1e-3)) {
  const Scalar lb = laplace_beltrami_chart(alg, f, x, h);
  const auto jf = [&](const VectorX<Scalar>& y) { return j_function(alg, y) * f(y); };
  const Scalar conj = flat_laplacian(jf, x, h) / j_function(alg, x);
  return lb - static_cast<Scalar>(rs.rho_norm2()) * f(x) - conj;
}

}  // namespace lieheat
