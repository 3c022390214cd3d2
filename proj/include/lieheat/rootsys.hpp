#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "lieheat/liealg.hpp"

namespace lieheat {

/// Roots and Weyl data of a catalog algebra, written in orthonormal Cartan
/// coordinates (t* is identified with t through the inner product).
struct RootSystem {
  int rank = 0;
  std::vector<Eigen::VectorXd> roots;           // positive roots first, then their negatives
  std::vector<Eigen::VectorXd> positive_roots;  // ordered by decreasing pairing with the functional
  std::vector<Eigen::VectorXd> simple_roots;
  Eigen::VectorXd rho;
  std::vector<Eigen::VectorXd> fundamental_weights;
  std::vector<Eigen::MatrixXd> weyl_group;
  std::vector<int> weyl_signs;
  /// Columns generate the character lattice of the global group.
  Eigen::MatrixXd lattice_basis;
  /// True when every lattice point is a highest weight (torus: no dominance cone).
  bool signed_lattice = false;

  double rho_norm2() const { return rho.squaredNorm(); }
};

/// One irreducible representation: Laplacian eigenvalue c with multiplicity dim^2.
struct IrrepDatum {
  Eigen::VectorXd weight;
  Eigen::VectorXi coords;  // integer coordinates in lattice_basis
  std::int64_t dim = 1;
  double casimir = 0.0;
};

/// Computes roots by diagonalizing ad(H) for a generic torus element H and
/// reading off the joint eigenvalues of the Cartan basis on each root space.
/// Retries up to 8 generic elements before giving up.
RootSystem root_system(const LieAlgebra& alg);

/// Casimir eigenvalue <l+rho,l+rho> - <rho,rho>.
double casimir_eigenvalue(const RootSystem& rs, const Eigen::VectorXd& weight);

/// Weyl dimension formula plus Casimir eigenvalue. Throws std::invalid_argument
/// for non-dominant or non-lattice weights, ConsistencyError when the
/// dimension formula does not produce an integer.
IrrepDatum irrep_data(const RootSystem& rs, const Eigen::VectorXd& weight);
IrrepDatum irrep_data(const RootSystem& rs, const Eigen::VectorXi& lattice_coords);

/// All admissible highest weights with Casimir eigenvalue <= cutoff, sorted by
/// (eigenvalue, lattice coordinates).
std::vector<IrrepDatum> dominant_weights(const RootSystem& rs, double cutoff);

/// Evaluates characters at a fixed regular torus point through the Weyl
/// quotient. Construction throws SingularPointError when the Weyl denominator
/// has modulus <= 1e-10.
class CharacterEvaluator {
 public:
  CharacterEvaluator(const RootSystem& rs, const Eigen::VectorXd& h);

  std::complex<double> operator()(const Eigen::VectorXd& weight) const;
  std::complex<double> denominator() const { return denominator_; }

 private:
  const RootSystem* rs_;
  std::vector<Eigen::VectorXd> transformed_;  // w^T h for every Weyl element
  std::complex<double> denominator_;
};

/// chi_lambda(exp H). Complex in general (su3 has non-self-dual irreps).
std::complex<double> character(const RootSystem& rs, const Eigen::VectorXd& weight,
                               const Eigen::VectorXd& h);

/// Real character value; throws ConsistencyError if the imaginary part exceeds 1e-9.
double real_character(const RootSystem& rs, const Eigen::VectorXd& weight,
                      const Eigen::VectorXd& h);

/// Cartan coordinates of a torus element conjugate to the chart point x.
///
/// Uses the defining representation: the sorted spectrum of x is placed on a
/// common eigenbasis of the Cartan generators. The result is determined up to
/// the Weyl group, which is all class functions need.
Eigen::VectorXd cartan_conjugate(const LieAlgebra& alg, const Eigen::VectorXd& x);

}  // namespace lieheat
