#ifndef NHF_NINNER_HPP
#define NHF_NINNER_HPP

#include <memory>
#include <vector>

#include "nhf/errors.hpp"
#include "nhf/types.hpp"

namespace nhf {

/// Fixed tuple (a_2, ..., a_n) relative to which all n-inner products are
/// taken. Requires n >= 2, all anchors of equal dimension d >= n, and
/// linearly independent anchors (Gram determinant above tolerance).
class AnchorSet {
 public:
  AnchorSet(int order, std::vector<Vector> anchors);

  int order() const { return order_; }
  int ambient_dim() const { return static_cast<int>(anchors_.front().size()); }
  const std::vector<Vector>& anchors() const { return anchors_; }

  /// Relative tolerance for rejecting dependent anchors:
  /// det(Gram) < tol * prod ||a_k||^2.
  static constexpr double kIndependenceTol = 1e-12;

 private:
  int order_;
  std::vector<Vector> anchors_;
};

/// Gram-determinant n-inner product <x, y | a_2, ..., a_n>: determinant of
/// the n x n matrix with first row (<x,y>, <x,a_2>, ..., <x,a_n>) and row k
/// equal to (<a_k,y>, <a_k,a_2>, ..., <a_k,a_n>).
Cx n_inner(const Vector& x, const Vector& y, const AnchorSet& anchors);

/// sqrt(Re <x, x | a_2, ..., a_n>). Throws NumericalNegativity if the
/// quadratic form comes out below -1e-10.
double n_norm(const Vector& x, const AnchorSet& anchors);

class QuotientSpace;
using SpacePtr = std::shared_ptr<const QuotientSpace>;

struct QuotientVector {
  Vector coords;
  SpacePtr space;
};

/// The Hilbert space induced on the quotient of the ambient space by the
/// span of the anchors. The embedding maps ambient coordinates to canonical
/// quotient coordinates so that the standard inner product of images equals
/// the n-inner product of the originals.
class QuotientSpace : public std::enable_shared_from_this<QuotientSpace> {
 public:
  const AnchorSet& anchor_set() const { return anchors_; }
  int ambient_dim() const { return ambient_dim_; }
  int quotient_dim() const { return quotient_dim_; }
  const Matrix& embedding() const { return embedding_; }  // d_F x d
  const Matrix& lift() const { return lift_; }            // d x d_F

  QuotientVector project(const Vector& x) const;

  /// Ambient representative of a quotient vector; project(unproject(u)) == u.
  Vector unproject(const Vector& u) const;

  static SpacePtr build(const AnchorSet& anchors, int ambient_dim);

 private:
  QuotientSpace(AnchorSet anchors, int ambient_dim);

  AnchorSet anchors_;
  int ambient_dim_;
  int quotient_dim_;
  Matrix embedding_;
  Matrix lift_;
};

inline SpacePtr build_quotient(const AnchorSet& anchors, int ambient_dim) {
  return QuotientSpace::build(anchors, ambient_dim);
}

}  // namespace nhf

#endif
