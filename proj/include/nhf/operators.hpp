#ifndef NHF_OPERATORS_HPP
#define NHF_OPERATORS_HPP

#include "nhf/errors.hpp"
#include "nhf/types.hpp"

namespace nhf {

/// Square complex matrix acting on quotient (or tensor/direct-sum)
/// coordinates. Kept as a thin value type; the dimension is the contract.
struct Operator {
  Matrix mat;

  Operator() = default;
  explicit Operator(Matrix m);

  int dim() const { return static_cast<int>(mat.rows()); }
  static Operator identity(int d) { return Operator(Matrix::Identity(d, d)); }
};

struct OperatorClassReport {
  bool self_adjoint = false;
  bool positive = false;
  bool invertible = false;
  double condition_number = 0.0;           // sigma_max / sigma_min (inf if singular)
  double min_eigenvalue_hermitian_part = 0.0;
};

Operator adjoint(const Operator& t);

/// Reports, never throws. Thresholds: self-adjointness 1e-10 relative,
/// positivity lambda_min >= -1e-10 relative, invertibility
/// sigma_min/sigma_max > 1e-10.
OperatorClassReport classify(const Operator& t);

/// Unique positive square root via Hermitian eigendecomposition.
Operator sqrt_positive(const Operator& t);

Operator inverse(const Operator& t);

/// Moore-Penrose pseudo-inverse via SVD with relative cutoff 1e-10.
Operator pseudo_inverse(const Operator& t);

bool commutes(const Operator& t, const Operator& s);

/// Largest singular value.
double operator_norm(const Operator& t);
double operator_norm(const Matrix& m);

/// Frobenius-norm helpers used throughout for residual reporting.
inline double residual(const Matrix& diff, double scale) {
  return diff.norm() / (1.0 + scale);
}

}  // namespace nhf

#endif
