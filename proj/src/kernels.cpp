#include "lieheat/kernels.hpp"

#include <cmath>
#include <numbers>

#include "lieheat/geometry.hpp"
#include "lieheat/summation.hpp"

namespace lieheat {

double asymptotic_kernel(const GroupModel& g, const Eigen::VectorXd& x, double t) {
  return gaussian_kernel(x, t, g.dim()) / j_function(g.alg, x) * std::exp(t * g.scalar_curvature / 6.0);
}

KernelComparison kernel_compare(const GroupModel& g, const Eigen::VectorXd& h, double t, double tail_eps,
                                double eigenvalue_shift) {
  KernelComparison out;
  out.h = h;
  out.t = t;
  const Eigen::VectorXd x = g.alg.from_cartan(h);
  out.asymptotic_ratio = std::exp(-x.squaredNorm() / (4.0 * t)) / j_function(g.alg, x);
  const KernelRatio spectral = spectral_kernel_ratio(g, h, t, tail_eps, eigenvalue_shift);
  out.spectral_ratio = spectral.ratio;
  out.tail_bound = spectral.tail_bound;
  out.rel_diff = std::abs(out.spectral_ratio - out.asymptotic_ratio) / std::abs(out.asymptotic_ratio);
  return out;
}

HeatEquationResidual heat_equation_residual(const GroupModel& g, const std::vector<IrrepDatum>& weights,
                                            const Eigen::VectorXd& h, double t, double dt, double step) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_equation_residual: t must be positive");
  if (!(dt > 0.0) || !(dt < t)) throw std::invalid_argument("heat_equation_residual: need 0 < dt < t");
  const Eigen::VectorXd x = g.alg.from_cartan(h);
  auto kernel_at = [&](const Eigen::VectorXd& y, double time) {
    return unnormalized_kernel(g, weights, cartan_conjugate(g.alg, y), time);
  };

  HeatEquationResidual out;
  out.value = kernel_at(x, t);
  out.time_derivative = (kernel_at(x, t + dt) - kernel_at(x, t - dt)) / (2.0 * dt);
  out.laplacian = laplace_beltrami_chart(
      g.alg, [&](const Eigen::VectorXd& y) { return kernel_at(y, t); }, x, step);
  out.residual = out.time_derivative - out.laplacian;
  return out;
}

HeatEquationResidual heat_equation_residual(const GroupModel& g, const Eigen::VectorXd& h, double t,
                                            double tail_eps, double dt, double step) {
  if (dt == 0.0) dt = t / 1000.0;
  if (!(dt > 0.0) || !(dt < t)) throw std::invalid_argument("heat_equation_residual: need 0 < dt < t");
  // The smallest time in the stencil needs the largest cutoff.
  const double cutoff = adaptive_cutoff(g, t - dt, tail_eps).first;
  return heat_equation_residual(g, dominant_weights(g.roots, cutoff), h, t, dt, step);
}

double torus_exact_kernel(const std::vector<double>& circumferences, const Eigen::VectorXd& x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("torus_exact_kernel: t must be positive");
  if (static_cast<Eigen::Index>(circumferences.size()) != x.size())
    throw std::invalid_argument("torus_exact_kernel: one circumference per coordinate");
  double product = 1.0;
  for (std::size_t i = 0; i < circumferences.size(); ++i) {
    const double len = circumferences[i];
    if (!(len > 0.0)) throw std::invalid_argument("torus_exact_kernel: circumferences must be positive");
    // Reduce to the fundamental domain so the images decay from m = 0 outwards.
    const double xi = x(i) - len * std::round(x(i) / len);
    const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
    CompensatedSum<double> sum;
    sum += norm * std::exp(-xi * xi / (4.0 * t));
    for (int m = 1;; ++m) {
      const double a = xi + m * len, b = xi - m * len;
      const double term = norm * (std::exp(-a * a / (4.0 * t)) + std::exp(-b * b / (4.0 * t)));
      sum += term;
      // Beyond |m L| > |x| successive images shrink at least geometrically, with
      // ratio exp(-L (2(m L - |x|) + L) / 4t); stop once the remaining tail is
      // below 1e-14 relative.
      const double ratio = std::exp(-len * (2.0 * (m * len - std::abs(xi)) + len) / (4.0 * t));
      if (ratio < 1.0 && term / (1.0 - ratio) < 1e-14 * sum.value()) break;
      if (m > 100000) throw std::runtime_error("torus_exact_kernel: image sum did not converge");
    }
    product *= sum.value();
  }
  return product;
}

}  // namespace lieheat
