#ifndef NHF_TYPES_HPP
#define NHF_TYPES_HPP

#include <complex>
#include <Eigen/Dense>

namespace nhf {

using Cx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Inner product linear in the first argument, conjugate-linear in the
/// second: inner(u, v) = sum_k u_k * conj(v_k).
inline Cx inner(const Vector& u, const Vector& v) { return v.dot(u); }

inline bool all_finite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  return true;
}

}  // namespace nhf

#endif
