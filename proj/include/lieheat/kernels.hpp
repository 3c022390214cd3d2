#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lieheat/group.hpp"
#include "lieheat/spectrum.hpp"

namespace lieheat {

/// Euclidean heat kernel on an n-dimensional inner-product space:
/// exp(-|X|^2 / 4t) / (4 pi t)^{n/2}.
template <typename Scalar, typename Derived>
Scalar gaussian_kernel(const Eigen::MatrixBase<Derived>& x, Scalar t, int n) {
  if (!(t > Scalar(0))) throw std::invalid_argument("gaussian_kernel: t must be positive");
  return std::exp(-x.squaredNorm() / (4 * t)) / std::pow(4 * std::numbers::pi_v<Scalar> * t, Scalar(n) / 2);
}

/// Small-time form of the heat convolution kernel in the exponential chart:
/// h_t(X) / j(X) * exp(t S / 6).
double asymptotic_kernel(const GroupModel& g, const Eigen::VectorXd& x, double t);

struct KernelComparison {
  Eigen::VectorXd h;
  double t = 0.0;
  double spectral_ratio = 0.0;
  double asymptotic_ratio = 0.0;
  double rel_diff = 0.0;
  double tail_bound = 0.0;
};

/// Compares k_t(exp H)/k_t(e) from the character expansion with
/// [h_t(H)/h_t(0)] / j(H). The exp(tS/6) factor cancels in the ratio.
KernelComparison kernel_compare(const GroupModel& g, const Eigen::VectorXd& h, double t, double tail_eps,
                                double eigenvalue_shift = 0.0);

struct HeatEquationResidual {
  double time_derivative = 0.0;
  double laplacian = 0.0;
  double residual = 0.0;  // time_derivative - laplacian
  double value = 0.0;     // the kernel itself at (H, t)

  double relative() const { return std::abs(residual) / std::abs(time_derivative); }
};

/// (d/dt - Delta_G) applied to the unnormalized spectral kernel at exp(H).
///
/// d/dt is a central difference with step dt; Delta_G is the chart
/// Laplace-Beltrami operator with step h, evaluated on the class function
/// obtained by conjugating each stencil point into the torus.
HeatEquationResidual heat_equation_residual(const GroupModel& g, const Eigen::VectorXd& h, double t,
                                            double tail_eps, double dt = 0.0, double step = 1e-3);

/// Same residual over an explicit list of weights (no truncation control).
HeatEquationResidual heat_equation_residual(const GroupModel& g, const std::vector<IrrepDatum>& weights,
                                            const Eigen::VectorXd& h, double t, double dt, double step);

/// Heat kernel of the flat torus prod_i R / L_i Z as a wrapped gaussian,
/// sum over v in the period lattice of h_t(X + v).
double torus_exact_kernel(const std::vector<double>& circumferences, const Eigen::VectorXd& x, double t);

}  // namespace lieheat
