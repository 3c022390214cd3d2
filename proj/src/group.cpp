#include "lieheat/group.hpp"

namespace lieheat {

GroupModel GroupModel::build(const GroupSpec& spec) {
  GroupModel m;
  m.spec = spec;
  m.alg = build_algebra<double>(spec);
  m.roots = root_system(m.alg);
  m.casimir_trace = lieheat::casimir_trace(m.alg);
  m.scalar_curvature = lieheat::scalar_curvature(m.alg).from_curvature;
  m.rho_norm2 = m.roots.rho_norm2();
  return m;
}

}  // namespace lieheat
