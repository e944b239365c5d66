#ifndef NHF_DIRECTSUM_HPP
#define NHF_DIRECTSUM_HPP

#include <utility>

#include "nhf/controlled.hpp"

namespace nhf {

/// H_F (+) K_G with dimension d_F + d_G; the inner product is the sum of the
/// component inner products, realized by stacking coordinates.
struct DirectSumSpace {
  SpacePtr left;
  SpacePtr right;

  int dim() const { return left->quotient_dim() + right->quotient_dim(); }
};

/// Stack of two coordinate vectors.
Vector dsum_vector(const Vector& u, const Vector& v);

/// Block-diagonal diag(T, U); its operator norm is max(||T||, ||U||).
Operator dsum_operator(const Operator& t, const Operator& u);

/// Sum n-norm diagnostic: ||u|| + ||v||, as opposed to the inner-product
/// induced root-sum-of-squares used for all spectral work. The two agree
/// only on vectors supported in a single summand.
double dsum_sum_norm(const Vector& u, const Vector& v);

/// Shared-index family {f_i (+) g_i} with block-diagonal control C1 (+) C2.
/// Shorter families are zero-padded to the shared length.
class DirectSumFrame {
 public:
  DirectSumFrame(ControlledFrame left, ControlledFrame right);

  const ControlledFrame& left() const { return left_; }
  const ControlledFrame& right() const { return right_; }
  DirectSumSpace space() const { return {left_.frame().space(), right_.frame().space()}; }
  const Matrix& control() const { return control_; }

  int size() const { return size_; }
  /// Left component of member i in quotient coordinates (zero past the left
  /// family's natural length), and likewise the right component.
  Vector left_member(int i) const;
  Vector right_member(int i) const;
  Vector member(int i) const { return dsum_vector(left_member(i), right_member(i)); }

 private:
  ControlledFrame left_;
  ControlledFrame right_;
  Matrix control_;
  int size_;
};

/// The two cross sums (sum_i <f, f_i><C2 g_i, g>, sum_i <g, g_i><C1 f_i, f>);
/// the decoupling conditions hold iff both magnitudes are < 1e-10.
std::pair<Cx, Cx> cross_term(const DirectSumFrame& dsf, const Vector& f, const Vector& g);

/// Frame operator of the (+)-family on stacked coordinates.
Operator dsum_frame_operator(const DirectSumFrame& dsf);

/// Spectral bounds of the (+)-frame operator, after certifying the cross-term
/// conditions on the full canonical basis-pair grid (CrossTermViolation if
/// any probe fails) and asserting the bounds lie in
/// [min of component lowers, max of component uppers].
ControlledBounds dsum_controlled_bounds(const DirectSumFrame& dsf);

}  // namespace nhf

#endif
