#include "lieheat/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lieheat/summation.hpp"

namespace lieheat {

namespace {

constexpr int kMaxDoublings = 60;

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("time t must be positive");
}

void require_positive_eps(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
}

// Gamma(s, x) for s a positive integer or half-integer, by upward recursion.
double upper_incomplete_gamma_half(int twice_s, double x) {
  double s = (twice_s % 2 == 0) ? 1.0 : 0.5;
  double g = (twice_s % 2 == 0) ? std::exp(-x) : std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
  while (2 * s < twice_s - 0.5) {
    g = s * g + std::pow(x, s) * std::exp(-x);
    s += 1.0;
  }
  return g;
}

// int_a^inf u^m exp(-t u^2) du
double gaussian_moment_tail(int m, double a, double t) {
  return 0.5 * std::pow(t, -(m + 1) / 2.0) * upper_incomplete_gamma_half(m + 1, t * a * a);
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double spectral_tail_bound(const RootSystem& rs, double t, double cutoff) {
  require_positive_time(t);
  const int r = rs.rank;
  const int npos = static_cast<int>(rs.positive_roots.size());
  double dim_const = 1.0;
  for (const auto& alpha : rs.positive_roots) dim_const *= alpha.norm() / rs.rho.dot(alpha);

  double delta = 0.0;
  for (int a = 0; a < r; ++a) delta += 0.5 * rs.lattice_basis.col(a).norm();
  const double covolume = std::abs(rs.lattice_basis.determinant());
  const double sphere = 2.0 * std::pow(std::numbers::pi, r / 2.0) / std::tgamma(r / 2.0);

  const double radius = std::sqrt(cutoff + rs.rho_norm2());
  const double a = radius - 2.0 * delta;
  const double peak = std::sqrt(npos / t);
  if (a <= 0.0 || a < peak) return std::numeric_limits<double>::infinity();

  double integral = 0.0;
  for (int j = 0; j <= r - 1; ++j)
    integral += binomial(r - 1, j) * std::pow(delta, r - 1 - j) * gaussian_moment_tail(2 * npos + j, a, t);
  return dim_const * dim_const * std::exp(t * rs.rho_norm2()) * sphere / covolume * integral;
}

std::pair<double, double> adaptive_cutoff(const GroupModel& g, double t, double tail_eps) {
  require_positive_time(t);
  require_positive_eps(tail_eps);
  double cutoff = std::max(8.0, 4.0 * g.dim() / t);
  for (int k = 0; k < kMaxDoublings; ++k) {
    const double tail = spectral_tail_bound(g.roots, t, cutoff);
    if (tail < tail_eps) return {cutoff, tail};
    cutoff *= 2.0;
  }
  throw std::runtime_error("could not reach the requested tail tolerance");
}

HeatTraceValue heat_trace_at_cutoff(const GroupModel& g, double t, double cutoff) {
  require_positive_time(t);
  CompensatedSum<double> sum;
  for (const auto& w : dominant_weights(g.roots, cutoff)) {
    const double d = static_cast<double>(w.dim);
    sum += d * d * std::exp(-t * w.casimir);
  }
  return {sum.value(), spectral_tail_bound(g.roots, t, cutoff), cutoff};
}

HeatTraceValue heat_trace(const GroupModel& g, double t, double tail_eps) {
  const auto [cutoff, tail] = adaptive_cutoff(g, t, tail_eps);
  HeatTraceValue v = heat_trace_at_cutoff(g, t, cutoff);
  v.tail_bound = tail;
  return v;
}

HeatTraceValue heat_trace(const GroupSpec& spec, double t, double tail_eps) {
  return heat_trace(GroupModel::build(spec), t, tail_eps);
}

HeatTraceValue vhat(const GroupModel& g, double t, double tail_eps) {
  const HeatTraceValue z = heat_trace(g, t, tail_eps);
  const double prefactor = std::pow(4.0 * std::numbers::pi * t, g.dim() / 2.0) * std::exp(-t * g.scalar_curvature / 6.0);
  return {prefactor * z.value, prefactor * z.tail_bound, z.cutoff};
}

HeatTraceValue vhat(const GroupSpec& spec, double t, double tail_eps) {
  return vhat(GroupModel::build(spec), t, tail_eps);
}

TraceCurve trace_curve(const GroupModel& g, const std::vector<double>& t_values, double tail_eps) {
  TraceCurve curve;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (i > 0 && !(t_values[i] > t_values[i - 1])) throw std::invalid_argument("t values must be increasing");
    const HeatTraceValue z = heat_trace(g, t_values[i], tail_eps);
    const double prefactor =
        std::pow(4.0 * std::numbers::pi * t_values[i], g.dim() / 2.0) * std::exp(-t_values[i] * g.scalar_curvature / 6.0);
    curve.t_values.push_back(t_values[i]);
    curve.z.push_back(z.value);
    curve.vhat.push_back(prefactor * z.value);
    curve.tail_bound.push_back(z.tail_bound);
    curve.cutoff_used = std::max(curve.cutoff_used, z.cutoff);
  }
  return curve;
}

double unnormalized_kernel(const GroupModel& g, const std::vector<IrrepDatum>& weights, const Eigen::VectorXd& h,
                           double t) {
  const CharacterEvaluator chi(g.roots, h);
  CompensatedSum<double> re, im;
  for (const auto& w : weights) {
    const std::complex<double> term = static_cast<double>(w.dim) * chi(w.weight) * std::exp(-t * w.casimir);
    re += term.real();
    im += term.imag();
  }
  // Conjugate representations pair up, so the sum is real.
  if (std::abs(im.value()) > 1e-9 * std::max(1.0, std::abs(re.value())))
    throw ConsistencyError("spectral kernel sum has a non-negligible imaginary part");
  return re.value();
}

KernelRatio spectral_kernel_ratio(const GroupModel& g, const Eigen::VectorXd& h, double t, double tail_eps,
                                  double eigenvalue_shift) {
  if (h.size() != g.rank()) throw std::invalid_argument("torus point has the wrong rank");
  const auto [cutoff, tail] = adaptive_cutoff(g, t, tail_eps);
  std::vector<IrrepDatum> weights = dominant_weights(g.roots, cutoff);
  for (auto& w : weights) w.casimir += eigenvalue_shift;

  const double num = unnormalized_kernel(g, weights, h, t);
  CompensatedSum<double> den;
  for (const auto& w : weights) {
    const double d = static_cast<double>(w.dim);
    den += d * d * std::exp(-t * w.casimir);
  }
  const double shifted_tail = tail * std::exp(-t * eigenvalue_shift);
  KernelRatio out;
  out.ratio = num / den.value();
  out.tail_bound = shifted_tail * (1.0 + std::abs(out.ratio)) / (den.value() - shifted_tail);
  out.cutoff = cutoff;
  return out;
}

std::vector<std::pair<double, std::int64_t>> eigenvalue_list(const GroupModel& g, double cutoff) {
  std::vector<std::pair<double, std::int64_t>> out;
  for (const auto& w : dominant_weights(g.roots, cutoff)) {
    const std::int64_t mult = w.dim * w.dim;
    if (!out.empty() && std::abs(out.back().first - w.casimir) <= 1e-9 * std::max(1.0, std::abs(w.casimir)))
      out.back().second += mult;
    else
      out.emplace_back(w.casimir, mult);
  }
  return out;
}

}  // namespace lieheat
