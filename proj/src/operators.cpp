#include "nhf/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace nhf {

Operator::Operator(Matrix m) : mat(std::move(m)) {
  if (mat.rows() != mat.cols()) throw DimensionMismatch("operator matrix must be square");
  if (!all_finite(mat)) throw Error("operator has non-finite entries");
}

Operator adjoint(const Operator& t) { return Operator(t.mat.adjoint()); }

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

double operator_norm(const Operator& t) { return operator_norm(t.mat); }

OperatorClassReport classify(const Operator& t) {
  OperatorClassReport r;
  const Matrix& m = t.mat;
  const double norm = operator_norm(m);
  r.self_adjoint = (m - m.adjoint()).norm() <= 1e-10 * (1.0 + norm);

  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()).eval() / 2.0);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  r.min_eigenvalue_hermitian_part = lmin;
  r.positive = r.self_adjoint && lmin >= -1e-10 * (1.0 + lmax);

  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv[0], smin = sv[sv.size() - 1];
  r.invertible = smin > 1e-10 * smax;
  r.condition_number = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  return r;
}

Operator sqrt_positive(const Operator& t) {
  if (!classify(t).positive) throw NotPositive("sqrt_positive requires a positive operator");
  Eigen::SelfAdjointEigenSolver<Matrix> es((t.mat + t.mat.adjoint()).eval() / 2.0);
  Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  return Operator(es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
                  es.eigenvectors().adjoint());
}

Operator inverse(const Operator& t) {
  if (!classify(t).invertible) throw Singular("inverse of a singular operator");
  return Operator(t.mat.fullPivLu().inverse());
}

Operator pseudo_inverse(const Operator& t) {
  Eigen::JacobiSVD<Matrix> svd(t.mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return Operator(Matrix::Zero(t.dim(), t.dim()));
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-10 * sv[0]) inv[i] = 1.0 / sv[i];
  }
  return Operator(svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint());
}

bool commutes(const Operator& t, const Operator& s) {
  if (t.dim() != s.dim()) throw DimensionMismatch("commutator of unequal dimensions");
  const double scale = operator_norm(t) * operator_norm(s);
  return (t.mat * s.mat - s.mat * t.mat).norm() <= 1e-10 * (1.0 + scale);
}

}  // namespace nhf
