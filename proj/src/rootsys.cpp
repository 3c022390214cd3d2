#include "lieheat/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lieheat {

namespace {

constexpr int kMaxRootAttempts = 8;
constexpr double kWeylDenominatorFloor = 1e-10;

// Fixed generic functional deciding root positivity.
Eigen::VectorXd positivity_functional(int rank) {
  Eigen::VectorXd l(rank);
  for (int a = 0; a < rank; ++a) l(a) = std::pow(0.1 * std::numbers::sqrt2, a) * (1.0 + 0.01 * a);
  return l;
}

// Generic torus element for the given attempt.
Eigen::VectorXd generic_cartan_element(int rank, int attempt) {
  Eigen::VectorXd h(rank);
  for (int a = 0; a < rank; ++a)
    h(a) = 1.0 + 0.3719 * (a + 1) + 0.1133 * attempt * (a + 1) * (a + 1) + 0.0271 * attempt;
  return h;
}

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

struct RootExtraction {
  bool ok = false;
  std::vector<Eigen::VectorXd> roots;
};

RootExtraction extract_roots(const LieAlgebra& alg, int attempt) {
  const int n = alg.dim;
  const int r = alg.rank();
  const Eigen::VectorXd hc = generic_cartan_element(r, attempt);
  const Eigen::MatrixXd adh = ad_matrix(alg, alg.from_cartan(hc));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(adh.cast<std::complex<double>>());
  if (eig.info() != Eigen::Success) return {};

  const double scale = std::max(1.0, adh.cwiseAbs().maxCoeff());
  std::vector<int> nonzero;
  std::vector<double> thetas;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> ev = eig.eigenvalues()(i);
    if (std::abs(ev) > 1e-8 * scale) {
      nonzero.push_back(i);
      thetas.push_back(ev.imag());
    }
  }
  if (static_cast<int>(nonzero.size()) != n - r) return {};
  std::vector<double> sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] < 1e-6 * scale) return {};

  RootExtraction out;
  for (int idx : nonzero) {
    const Eigen::VectorXcd v = eig.eigenvectors().col(idx);
    Eigen::VectorXd alpha(r);
    for (int a = 0; a < r; ++a) {
      const Eigen::MatrixXd ada = alg.ad_basis[alg.cartan_indices[a]];
      const Eigen::VectorXcd av = ada.cast<std::complex<double>>() * v;
      const std::complex<double> q = v.dot(av) / v.squaredNorm();
      alpha(a) = q.imag();
      // v must be a joint eigenvector of the whole Cartan subalgebra.
      if ((av - std::complex<double>(0, alpha(a)) * v).norm() > 1e-8 * scale * v.norm()) return {};
    }
    out.roots.push_back(alpha);
  }
  out.ok = true;
  return out;
}

Eigen::MatrixXd reflection(const Eigen::VectorXd& alpha) {
  const int r = static_cast<int>(alpha.size());
  return Eigen::MatrixXd::Identity(r, r) - 2.0 * alpha * alpha.transpose() / alpha.squaredNorm();
}

}  // namespace

RootSystem root_system(const LieAlgebra& alg) {
  RootSystem rs;
  rs.rank = alg.rank();
  const int r = rs.rank;
  rs.rho = Eigen::VectorXd::Zero(r);

  if (alg.abelian()) {
    const double inv_sqrt_scale = 1.0 / std::sqrt(alg.spec.metric_scale);
    for (int a = 0; a < r; ++a) rs.fundamental_weights.push_back(Eigen::VectorXd::Unit(r, a) * inv_sqrt_scale);
    rs.weyl_group.push_back(Eigen::MatrixXd::Identity(r, r));
    rs.weyl_signs.push_back(1);
    rs.lattice_basis = Eigen::MatrixXd::Identity(r, r) * inv_sqrt_scale;
    rs.signed_lattice = true;
    return rs;
  }

  RootExtraction found;
  for (int attempt = 0; attempt < kMaxRootAttempts && !found.ok; ++attempt) found = extract_roots(alg, attempt);
  if (!found.ok)
    throw ConsistencyError("could not separate root spaces after " + std::to_string(kMaxRootAttempts) +
                           " generic torus elements");

  const Eigen::VectorXd ell = positivity_functional(r);
  for (const auto& alpha : found.roots) {
    const double p = alpha.dot(ell);
    if (std::abs(p) < 1e-9 * alpha.norm()) throw ConsistencyError("positivity functional is not generic");
    if (p > 0) rs.positive_roots.push_back(alpha);
  }
  if (rs.positive_roots.size() * 2 != found.roots.size())
    throw ConsistencyError("roots do not come in +- pairs");
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(),
            [&](const auto& a, const auto& b) { return a.dot(ell) > b.dot(ell); });
  for (const auto& alpha : rs.positive_roots) rs.roots.push_back(alpha);
  for (const auto& alpha : rs.positive_roots) rs.roots.push_back(-alpha);

  for (const auto& alpha : rs.positive_roots) rs.rho += 0.5 * alpha;

  // Simple roots: positive roots that are not sums of two positive roots.
  for (const auto& alpha : rs.positive_roots) {
    bool decomposable = false;
    for (const auto& b1 : rs.positive_roots)
      for (const auto& b2 : rs.positive_roots)
        if (same_vector(b1 + b2, alpha, 1e-9)) decomposable = true;
    if (!decomposable) rs.simple_roots.push_back(alpha);
  }
  if (static_cast<int>(rs.simple_roots.size()) != r)
    throw ConsistencyError("number of simple roots differs from the rank");

  Eigen::MatrixXd coroots(r, r);
  for (int j = 0; j < r; ++j)
    coroots.row(j) = 2.0 * rs.simple_roots[j].transpose() / rs.simple_roots[j].squaredNorm();
  const Eigen::MatrixXd weights = coroots.inverse();
  for (int i = 0; i < r; ++i) rs.fundamental_weights.push_back(weights.col(i));

  // Weyl group: closure of the simple reflections.
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& a : rs.simple_roots) gens.push_back(reflection(a));
  rs.weyl_group.push_back(Eigen::MatrixXd::Identity(r, r));
  for (std::size_t head = 0; head < rs.weyl_group.size(); ++head) {
    for (const auto& s : gens) {
      Eigen::MatrixXd w = s * rs.weyl_group[head];
      const bool seen = std::any_of(rs.weyl_group.begin(), rs.weyl_group.end(), [&](const auto& u) {
        return (u - w).cwiseAbs().maxCoeff() < 1e-9;
      });
      if (!seen) rs.weyl_group.push_back(std::move(w));
    }
    if (rs.weyl_group.size() > 100000) throw ConsistencyError("Weyl group closure did not terminate");
  }
  for (const auto& w : rs.weyl_group) rs.weyl_signs.push_back(w.determinant() > 0 ? 1 : -1);

  rs.lattice_basis = weights * alg.lattice_generators.cast<double>();
  rs.signed_lattice = false;
  return rs;
}

double casimir_eigenvalue(const RootSystem& rs, const Eigen::VectorXd& weight) {
  return (weight + rs.rho).squaredNorm() - rs.rho_norm2();
}

IrrepDatum irrep_data(const RootSystem& rs, const Eigen::VectorXd& weight) {
  if (weight.size() != rs.rank) throw std::invalid_argument("weight has the wrong rank");
  const Eigen::VectorXd k = rs.lattice_basis.fullPivLu().solve(weight);
  Eigen::VectorXi coords(rs.rank);
  for (int a = 0; a < rs.rank; ++a) {
    const double rounded = std::round(k(a));
    if (std::abs(k(a) - rounded) > 1e-9) throw std::invalid_argument("weight is not in the character lattice");
    coords(a) = static_cast<int>(rounded);
  }
  for (const auto& alpha : rs.simple_roots)
    if (weight.dot(alpha) < -1e-9) throw std::invalid_argument("weight is not dominant");

  IrrepDatum out;
  out.weight = weight;
  out.coords = coords;
  out.casimir = casimir_eigenvalue(rs, weight);
  double d = 1.0;
  for (const auto& alpha : rs.positive_roots) d *= (weight + rs.rho).dot(alpha) / rs.rho.dot(alpha);
  const double rounded = std::round(d);
  if (std::abs(d - rounded) > 1e-6 || rounded < 1)
    throw ConsistencyError("Weyl dimension formula gave a non-integer (" + std::to_string(d) + ")");
  out.dim = static_cast<std::int64_t>(rounded);
  return out;
}

IrrepDatum irrep_data(const RootSystem& rs, const Eigen::VectorXi& lattice_coords) {
  if (lattice_coords.size() != rs.lattice_basis.cols())
    throw std::invalid_argument("lattice coordinates do not match the group rank");
  return irrep_data(rs, Eigen::VectorXd(rs.lattice_basis * lattice_coords.cast<double>()));
}

std::vector<IrrepDatum> dominant_weights(const RootSystem& rs, double cutoff) {
  if (!(cutoff >= 0.0)) throw std::invalid_argument("eigenvalue cutoff must be non-negative");
  const int r = rs.rank;
  std::vector<IrrepDatum> out;
  if (r == 0) {
    out.push_back(IrrepDatum{Eigen::VectorXd(0), Eigen::VectorXi(0), 1, 0.0});
    return out;
  }

  const double slack = 1e-9 * std::max(1.0, cutoff);
  // |l| <= |l+rho| + |rho| and |l+rho|^2 <= cutoff + |rho|^2.
  const double radius = std::sqrt(cutoff + rs.rho_norm2() + slack) + rs.rho.norm();
  const Eigen::MatrixXd inv = rs.lattice_basis.inverse();
  Eigen::VectorXi bound(r);
  for (int a = 0; a < r; ++a) bound(a) = static_cast<int>(std::floor(radius * inv.row(a).norm() + 1e-9));

  Eigen::VectorXi k(r);
  std::function<void(int)> visit = [&](int a) {
    if (a == r) {
      const Eigen::VectorXd weight = rs.lattice_basis * k.cast<double>();
      if (casimir_eigenvalue(rs, weight) <= cutoff + slack) out.push_back(irrep_data(rs, weight));
      return;
    }
    const int lo = rs.signed_lattice ? -bound(a) : 0;
    for (int v = lo; v <= bound(a); ++v) {
      k(a) = v;
      visit(a + 1);
    }
  };
  visit(0);

  std::sort(out.begin(), out.end(), [](const IrrepDatum& a, const IrrepDatum& b) {
    const double tol = 1e-9 * std::max(1.0, std::max(std::abs(a.casimir), std::abs(b.casimir)));
    if (std::abs(a.casimir - b.casimir) > tol) return a.casimir < b.casimir;
    return std::lexicographical_compare(a.coords.data(), a.coords.data() + a.coords.size(), b.coords.data(),
                                        b.coords.data() + b.coords.size());
  });
  return out;
}

CharacterEvaluator::CharacterEvaluator(const RootSystem& rs, const Eigen::VectorXd& h) : rs_(&rs) {
  if (h.size() != rs.rank) throw std::invalid_argument("torus point has the wrong rank");
  denominator_ = 0.0;
  for (std::size_t w = 0; w < rs.weyl_group.size(); ++w) {
    transformed_.push_back(rs.weyl_group[w].transpose() * h);
    denominator_ += static_cast<double>(rs.weyl_signs[w]) *
                    std::exp(std::complex<double>(0.0, rs.rho.dot(transformed_.back())));
  }
  if (std::abs(denominator_) <= kWeylDenominatorFloor)
    throw SingularPointError("torus point is Weyl-singular (|denominator| <= 1e-10); perturb H off the walls");
}

std::complex<double> CharacterEvaluator::operator()(const Eigen::VectorXd& weight) const {
  const Eigen::VectorXd shifted = weight + rs_->rho;
  std::complex<double> num = 0.0;
  for (std::size_t w = 0; w < transformed_.size(); ++w)
    num += static_cast<double>(rs_->weyl_signs[w]) * std::exp(std::complex<double>(0.0, shifted.dot(transformed_[w])));
  return num / denominator_;
}

std::complex<double> character(const RootSystem& rs, const Eigen::VectorXd& weight, const Eigen::VectorXd& h) {
  return CharacterEvaluator(rs, h)(weight);
}

double real_character(const RootSystem& rs, const Eigen::VectorXd& weight, const Eigen::VectorXd& h) {
  const std::complex<double> chi = character(rs, weight, h);
  if (std::abs(chi.imag()) > 1e-9) throw ConsistencyError("character value is not real at this point");
  return chi.real();
}

Eigen::VectorXd cartan_conjugate(const LieAlgebra& alg, const Eigen::VectorXd& x) {
  if (x.size() != alg.dim) throw std::invalid_argument("cartan_conjugate: coefficient length mismatch");
  if (alg.abelian()) {
    Eigen::VectorXd h(alg.rank());
    for (int a = 0; a < alg.rank(); ++a) h(a) = x(alg.cartan_indices[a]);
    return h;
  }
  using CM = Eigen::MatrixXcd;
  const std::complex<double> i(0, 1);
  const double scale = alg.spec.metric_scale;
  const int m = static_cast<int>(alg.defining_rep.front().rows());

  CM xm = CM::Zero(m, m);
  for (int k = 0; k < alg.dim; ++k) xm += x(k) * alg.defining_rep[k];
  CM reference = CM::Zero(m, m);
  const Eigen::VectorXd generic = generic_cartan_element(alg.rank(), 0);
  for (int a = 0; a < alg.rank(); ++a) reference += generic(a) * alg.defining_rep[alg.cartan_indices[a]];

  // i*X is Hermitian; both spectra come back sorted ascending.
  Eigen::SelfAdjointEigenSolver<CM> ex(CM(i * xm));
  Eigen::SelfAdjointEigenSolver<CM> er(CM(i * reference));
  const CM v = er.eigenvectors();
  const CM hm = -i * v * ex.eigenvalues().cast<std::complex<double>>().asDiagonal() * v.adjoint();

  Eigen::VectorXd h(alg.rank());
  CM rebuilt = CM::Zero(m, m);
  for (int a = 0; a < alg.rank(); ++a) {
    const CM& e = alg.defining_rep[alg.cartan_indices[a]];
    h(a) = scale * -(hm * e).trace().real();
    rebuilt += h(a) * e;
  }
  if ((rebuilt - hm).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + x.norm()))
    throw ConsistencyError("conjugated point does not lie in the Cartan subalgebra");
  return h;
}

}  // namespace lieheat
