#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lieheat/errors.hpp"
#include "lieheat/group_spec.hpp"

namespace lieheat {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexMatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// A catalog Lie algebra written in an orthonormal basis of its Ad-invariant
/// inner product.
///
/// Structure constants are stored as the adjoint matrices of the basis:
/// `ad_basis[i](k, j) == c_{ij}^k`, so that `[e_i, e_j] = sum_k c_{ij}^k e_k`.
/// For the non-abelian families the defining-representation matrices of the
/// basis are kept as well; they carry the global information needed to move a
/// general chart point onto the maximal torus.
template <typename Scalar>
struct StructuredLieAlgebra {
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  GroupSpec spec;
  int dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<Matrix> ad_basis;
  std::vector<int> cartan_indices;
  std::vector<ComplexMatrixX<Scalar>> defining_rep;
  /// Generators of the character lattice of the global group, as integer
  /// combinations of fundamental weights (columns). For the torus the
  /// fundamental weights are the dual basis of the 2*pi-periodic coordinates.
  Eigen::MatrixXi lattice_generators;

  Scalar c(int i, int j, int k) const { return ad_basis[i](k, j); }
  int rank() const { return static_cast<int>(cartan_indices.size()); }
  bool abelian() const {
    for (const auto& m : ad_basis)
      if (m.cwiseAbs().maxCoeff() != Scalar(0)) return false;
    return true;
  }

  /// Embeds Cartan coordinates into the full coefficient space.
  Vector from_cartan(const Vector& h) const {
    if (h.size() != rank()) throw std::invalid_argument("Cartan coordinate length mismatch");
    Vector x = Vector::Zero(dim);
    for (int a = 0; a < rank(); ++a) x(cartan_indices[a]) = h(a);
    return x;
  }

  Vector basis_vector(int i) const { return Vector::Unit(dim, i); }
};

using LieAlgebra = StructuredLieAlgebra<double>;

struct AlgebraInvariants {
  double casimir_trace = 0.0;
  double scalar_curvature_from_trace = 0.0;
  int dim = 0;
};

namespace detail {

template <typename Scalar>
Scalar trace_form(const ComplexMatrixX<Scalar>& a, const ComplexMatrixX<Scalar>& b, Scalar scale) {
  return scale * -(a * b).trace().real();
}

template <typename Scalar>
std::vector<ComplexMatrixX<Scalar>> catalog_generators(Family family) {
  using C = std::complex<Scalar>;
  using M = ComplexMatrixX<Scalar>;
  const C i(0, 1);
  std::vector<M> gens;
  switch (family) {
    case Family::su2: {
      M s1(2, 2), s2(2, 2), s3(2, 2);
      s1 << 0, 1, 1, 0;
      s2 << 0, -i, i, 0;
      s3 << 1, 0, 0, -1;
      for (const M& s : {s1, s2, s3}) gens.push_back(-i * s);
      break;
    }
    case Family::so3: {
      // (L_k)_{ab} = -epsilon_{kab}, so [L_1, L_2] = L_3 cyclically.
      for (int k = 0; k < 3; ++k) {
        M l = M::Zero(3, 3);
        const int a = (k + 1) % 3, b = (k + 2) % 3;
        l(a, b) = -1;
        l(b, a) = 1;
        gens.push_back(l);
      }
      break;
    }
    case Family::su3: {
      std::vector<M> gm(8, M::Zero(3, 3));
      gm[0](0, 1) = gm[0](1, 0) = 1;
      gm[1](0, 1) = -i;
      gm[1](1, 0) = i;
      gm[2](0, 0) = 1;
      gm[2](1, 1) = -1;
      gm[3](0, 2) = gm[3](2, 0) = 1;
      gm[4](0, 2) = -i;
      gm[4](2, 0) = i;
      gm[5](1, 2) = gm[5](2, 1) = 1;
      gm[6](1, 2) = -i;
      gm[6](2, 1) = i;
      const Scalar r3 = Scalar(1) / std::sqrt(Scalar(3));
      gm[7](0, 0) = gm[7](1, 1) = r3;
      gm[7](2, 2) = -2 * r3;
      for (const M& g : gm) gens.push_back(-i * g);
      break;
    }
    case Family::torus:
      break;
  }
  return gens;
}

}  // namespace detail

/// Builds the structure constants of a catalog algebra in an orthonormal basis.
///
/// The non-abelian bases are Gram-Schmidt orthonormalized generator lists
/// (-i*Pauli, the rotation generators L_k, -i*Gell-Mann), which yields the
/// cyclic-positive conventions `[e1,e2] = sqrt(2/s) e3` for su2 and
/// `[e1,e2] = e3 / sqrt(2s)` for so3.
template <typename Scalar = double>
StructuredLieAlgebra<Scalar> build_algebra(const GroupSpec& spec) {
  spec.validate();
  StructuredLieAlgebra<Scalar> alg;
  alg.spec = spec;
  const Scalar scale = static_cast<Scalar>(spec.metric_scale);

  if (spec.family == Family::torus) {
    alg.dim = spec.torus_rank;
    for (int i = 0; i < alg.dim; ++i) {
      alg.basis_labels.push_back("t" + std::to_string(i + 1));
      alg.ad_basis.push_back(MatrixX<Scalar>::Zero(alg.dim, alg.dim));
      alg.cartan_indices.push_back(i);
    }
    alg.lattice_generators = Eigen::MatrixXi::Identity(alg.dim, alg.dim);
    return alg;
  }

  auto gens = detail::catalog_generators<Scalar>(spec.family);
  std::vector<ComplexMatrixX<Scalar>> basis;
  for (auto g : gens) {
    for (const auto& b : basis) g -= detail::trace_form(g, b, scale) * b;
    const Scalar norm2 = detail::trace_form(g, g, scale);
    basis.push_back(g / std::sqrt(norm2));
  }

  const int n = static_cast<int>(basis.size());
  alg.dim = n;
  alg.defining_rep = basis;
  for (int i = 0; i < n; ++i) alg.basis_labels.push_back("e" + std::to_string(i + 1));
  alg.ad_basis.assign(n, MatrixX<Scalar>::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexMatrixX<Scalar> br = basis[i] * basis[j] - basis[j] * basis[i];
      ComplexMatrixX<Scalar> rest = br;
      for (int k = 0; k < n; ++k) {
        const Scalar ck = detail::trace_form(br, basis[k], scale);
        alg.ad_basis[i](k, j) = ck;
        rest -= ck * basis[k];
      }
      if (rest.cwiseAbs().maxCoeff() > Scalar(1e-10))
        throw ConsistencyError("catalog basis is not closed under the bracket");
    }
  }

  switch (spec.family) {
    case Family::su2:
      alg.cartan_indices = {2};
      alg.lattice_generators = Eigen::MatrixXi::Constant(1, 1, 1);
      break;
    case Family::so3:
      // SO(3) only sees the integer-spin representations.
      alg.cartan_indices = {2};
      alg.lattice_generators = Eigen::MatrixXi::Constant(1, 1, 2);
      break;
    case Family::su3:
      alg.cartan_indices = {2, 7};
      alg.lattice_generators = Eigen::MatrixXi::Identity(2, 2);
      break;
    case Family::torus:
      break;
  }
  return alg;
}

/// Converts every stored coefficient to another scalar type.
template <typename To, typename From>
StructuredLieAlgebra<To> algebra_cast(const StructuredLieAlgebra<From>& alg) {
  StructuredLieAlgebra<To> out;
  out.spec = alg.spec;
  out.dim = alg.dim;
  out.basis_labels = alg.basis_labels;
  out.cartan_indices = alg.cartan_indices;
  out.lattice_generators = alg.lattice_generators;
  for (const auto& m : alg.ad_basis) out.ad_basis.push_back(m.template cast<To>());
  for (const auto& m : alg.defining_rep)
    out.defining_rep.push_back(m.template cast<std::complex<To>>());
  return out;
}

template <typename Scalar, typename Derived>
MatrixX<Scalar> ad_matrix(const StructuredLieAlgebra<Scalar>& alg,
                          const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != alg.dim) throw std::invalid_argument("ad_matrix: coefficient length mismatch");
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    if (x(i) != Scalar(0)) m += x(i) * alg.ad_basis[i];
  return m;
}

template <typename Scalar, typename DerivedX, typename DerivedY>
VectorX<Scalar> bracket(const StructuredLieAlgebra<Scalar>& alg,
                        const Eigen::MatrixBase<DerivedX>& x,
                        const Eigen::MatrixBase<DerivedY>& y) {
  if (y.size() != alg.dim) throw std::invalid_argument("bracket: coefficient length mismatch");
  return ad_matrix(alg, x) * y;
}

/// tr_g(Cas) = sum_i trace(ad(e_i)^2); non-positive, zero iff abelian.
template <typename Scalar>
Scalar casimir_trace(const StructuredLieAlgebra<Scalar>& alg) {
  Scalar total(0);
  for (const auto& m : alg.ad_basis) total += (m * m).trace();
  return total;
}

template <typename Scalar>
AlgebraInvariants algebra_invariants(const StructuredLieAlgebra<Scalar>& alg) {
  const double ct = static_cast<double>(casimir_trace(alg));
  return {ct, -0.25 * ct, alg.dim};
}

/// Rotation angles theta >= 0 of ad_X: square roots of the eigenvalues of the
/// symmetric positive-semidefinite matrix -ad_X^2, one per basis direction.
template <typename Scalar, typename Derived>
VectorX<Scalar> ad_angles_squared(const StructuredLieAlgebra<Scalar>& alg,
                                  const Eigen::MatrixBase<Derived>& x) {
  const MatrixX<Scalar> m = ad_matrix(alg, x);
  MatrixX<Scalar> s = -(m * m);
  s = (s + s.transpose()).eval() / Scalar(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseMax(Scalar(0));
}

/// Largest ad-angle; the exponential chart is used only where it is < 2*pi.
template <typename Scalar, typename Derived>
Scalar max_ad_angle(const StructuredLieAlgebra<Scalar>& alg, const Eigen::MatrixBase<Derived>& x) {
  if (alg.dim == 0) return Scalar(0);
  return std::sqrt(ad_angles_squared(alg, x).maxCoeff());
}

template <typename Scalar, typename Derived>
bool in_chart_domain(const StructuredLieAlgebra<Scalar>& alg, const Eigen::MatrixBase<Derived>& x) {
  return max_ad_angle(alg, x) < Scalar(2) * std::numbers::pi_v<Scalar>;
}

/// sin(theta/2)/(theta/2) written as a function of theta^2.
template <typename Scalar>
Scalar half_angle_sinc_sq(Scalar theta2) {
  if (theta2 < Scalar(1e-8)) return Scalar(1) - theta2 / 24 + theta2 * theta2 / 1920;
  const Scalar half = std::sqrt(theta2) / 2;
  return std::sin(half) / half;
}

/// The Duflo function j(X) = det^{1/2}( sinh(ad_X/2) / (ad_X/2) ).
///
/// Each rotation pair +-i*theta of ad_X contributes theta^2 twice to the
/// spectrum of -ad_X^2, so taking the square root of every factor yields the
/// positive branch. Throws ChartDomainError when some theta >= 2*pi.
template <typename Scalar, typename Derived>
Scalar j_function(const StructuredLieAlgebra<Scalar>& alg, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != alg.dim) throw std::invalid_argument("j_function: coefficient length mismatch");
  const VectorX<Scalar> mu = ad_angles_squared(alg, x);
  const Scalar limit = Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
  Scalar j(1);
  for (Scalar m : mu) {
    if (m >= limit) throw ChartDomainError("point lies outside the exponential chart (ad angle >= 2*pi)");
    j *= std::sqrt(half_angle_sinc_sq(m));
  }
  return j;
}

/// Largest |c_ij^k + c_ji^k|.
template <typename Scalar>
Scalar antisymmetry_residual(const StructuredLieAlgebra<Scalar>& alg) {
  Scalar worst(0);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k)
        worst = std::max(worst, std::abs(alg.c(i, j, k) + alg.c(j, i, k)));
  return worst;
}

/// Largest Jacobi-identity violation over all index quadruples.
template <typename Scalar>
Scalar jacobi_residual(const StructuredLieAlgebra<Scalar>& alg) {
  const int n = alg.dim;
  Scalar worst(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar s(0);
          for (int m = 0; m < n; ++m)
            s += alg.c(i, j, m) * alg.c(m, k, l) + alg.c(j, k, m) * alg.c(m, i, l) +
                 alg.c(k, i, m) * alg.c(m, j, l);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

/// Largest |<[X,Y],Z> + <Y,[X,Z]>| over basis triples.
template <typename Scalar>
Scalar invariance_residual(const StructuredLieAlgebra<Scalar>& alg) {
  Scalar worst(0);
  for (int x = 0; x < alg.dim; ++x)
    for (int y = 0; y < alg.dim; ++y)
      for (int z = 0; z < alg.dim; ++z)
        worst = std::max(worst, std::abs(alg.c(x, y, z) + alg.c(x, z, y)));
  return worst;
}

}  // namespace lieheat
