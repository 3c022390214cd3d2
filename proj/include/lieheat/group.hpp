#pragma once

#include "lieheat/geometry.hpp"
#include "lieheat/group_spec.hpp"
#include "lieheat/liealg.hpp"
#include "lieheat/rootsys.hpp"

namespace lieheat {

/// Everything the spectral and kernel computations need about one group,
/// computed once: the algebra, its root system and the two curvature-type
/// invariants.
struct GroupModel {
  GroupSpec spec;
  LieAlgebra alg;
  RootSystem roots;
  double casimir_trace = 0.0;
  double scalar_curvature = 0.0;
  double rho_norm2 = 0.0;

  static GroupModel build(const GroupSpec& spec);

  int dim() const { return alg.dim; }
  int rank() const { return alg.rank(); }
};

}  // namespace lieheat
