#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "lieheat/group.hpp"

namespace lieheat {

struct HeatTraceValue {
  double value = 0.0;
  double tail_bound = 0.0;
  double cutoff = 0.0;
};

struct TraceCurve {
  std::vector<double> t_values;
  std::vector<double> z;
  std::vector<double> vhat;
  std::vector<double> tail_bound;  // bound on the truncation error of z
  double cutoff_used = 0.0;
};

struct KernelRatio {
  double ratio = 0.0;
  double tail_bound = 0.0;
  double cutoff = 0.0;
};

/// Rigorous bound on sum_{c_l > cutoff} d_l^2 exp(-t c_l).
///
/// Uses d_l <= C |l+rho|^{#positive roots}, compares the lattice sum with an
/// integral over the cells of the shifted character lattice, and evaluates the
/// radial integrals with half-integer incomplete gamma functions. Returns
/// +infinity when the cutoff is still below the peak of the summand.
double spectral_tail_bound(const RootSystem& rs, double t, double cutoff);

/// First cutoff >= max(8, 4n/t) (doubling) whose tail bound is below tail_eps.
std::pair<double, double> adaptive_cutoff(const GroupModel& g, double t, double tail_eps);

/// Z(t) = sum_l d_l^2 exp(-t c_l) with the cutoff chosen adaptively.
HeatTraceValue heat_trace(const GroupModel& g, double t, double tail_eps);
HeatTraceValue heat_trace(const GroupSpec& spec, double t, double tail_eps);

/// Z(t) truncated at a fixed cutoff (tail bound reported for that cutoff).
HeatTraceValue heat_trace_at_cutoff(const GroupModel& g, double t, double cutoff);

/// (4 pi t)^{n/2} exp(-t S/6) Z(t); tail_bound is scaled by the same prefactor.
HeatTraceValue vhat(const GroupModel& g, double t, double tail_eps);
HeatTraceValue vhat(const GroupSpec& spec, double t, double tail_eps);

/// Heat trace and V-hat on a grid of times (ascending, positive).
TraceCurve trace_curve(const GroupModel& g, const std::vector<double>& t_values, double tail_eps);

/// k_t(exp H) / k_t(e) from the character expansion. `eigenvalue_shift` adds
/// a constant to every Casimir eigenvalue, which must leave the ratio unchanged.
KernelRatio spectral_kernel_ratio(const GroupModel& g, const Eigen::VectorXd& h, double t, double tail_eps,
                                  double eigenvalue_shift = 0.0);

/// sum_l d_l chi_l(exp H) exp(-t c_l) over a given weight list (vol(G) k_t).
double unnormalized_kernel(const GroupModel& g, const std::vector<IrrepDatum>& weights, const Eigen::VectorXd& h,
                           double t);

/// Distinct Laplacian eigenvalues c <= cutoff with total multiplicity sum d^2.
std::vector<std::pair<double, std::int64_t>> eigenvalue_list(const GroupModel& g, double cutoff);

}  // namespace lieheat
