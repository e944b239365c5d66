#ifndef NHF_TENSOR_HPP
#define NHF_TENSOR_HPP

#include "nhf/controlled.hpp"

namespace nhf {

/// Kronecker product in row-major block convention:
/// (a kron b)(i1*rb + i2, j1*cb + j2) = a(i1,j1) b(i2,j2).
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& u, const Vector& v);

/// Tensor product of two quotient spaces realized directly as the Kronecker
/// model on d_F * d_G coordinates.
struct TensorSpace {
  SpacePtr left;
  SpacePtr right;

  int dim() const { return left->quotient_dim() * right->quotient_dim(); }
};

/// n-inner product of simple tensors x1 (x) y1 and x2 (x) y2 with simple
/// tensor anchors: the product of the component n-inner products.
Cx tensor_n_inner(const Vector& x1, const Vector& y1, const Vector& x2, const Vector& y2,
                  const AnchorSet& left_anchors, const AnchorSet& right_anchors);

/// Doubly indexed family {f_i (x) g_j} with control C1 (x) C2, stored in
/// row-major (i, j) order.
class TensorControlledFrame {
 public:
  TensorControlledFrame(ControlledFrame left, ControlledFrame right);

  const ControlledFrame& left() const { return left_; }
  const ControlledFrame& right() const { return right_; }
  TensorSpace space() const { return {left_.frame().space(), right_.frame().space()}; }
  const Matrix& control() const { return control_; }

  int size() const { return left_.frame().size() * right_.frame().size(); }
  /// Projected tensor family member at flat index i * m_right + j.
  Vector member(int flat_index) const;

 private:
  ControlledFrame left_;
  ControlledFrame right_;
  Matrix control_;
};

/// Controlled frame operator on the tensor space, assembled from the doubly
/// indexed sum and verified against S_{C1} (x) S_{C2} (and the inverse
/// against the Kronecker of inverses when invertible).
Operator tensor_frame_operator(const TensorControlledFrame& tcf);

/// Spectral bounds of the Hermitian part of the tensor frame operator,
/// verified to lie inside the product interval of the component bounds.
ControlledBounds tensor_controlled_bounds(const TensorControlledFrame& tcf);

struct FactorizationReport {
  ControlledClass tensor_class;
  ControlledClass left_class;
  ControlledClass right_class;
  bool iff_holds = false;         // tensor frame <=> both components frames
  double sampled_lower = 0.0;     // probe-based valid lower bound for the left factor
  double sampled_upper = 0.0;     // probe-based valid upper bound for the left factor
  bool sampled_bounds_valid = false;
  int probes_used = 0;
};

/// Tensor-frame factorization: the classification iff plus a sampled
/// certificate that the quotient-of-forms bounds are valid component bounds.
FactorizationReport factorization_check(const TensorControlledFrame& tcf, uint64_t probe_seed = 17);

struct TensorReconstruction {
  Vector via_dual_vectors;   // sum <F, S^{-1} phi_ij> (C1 x C2) phi_ij
  Vector via_inverse_on_sum; // sum <F, phi_ij> S^{-1} (C1 x C2) phi_ij
  double residual_dual = 0.0;
  double residual_inverse = 0.0;
};

/// Both frame decomposition expansions of an arbitrary tensor-space vector.
TensorReconstruction tensor_reconstruct(const TensorControlledFrame& tcf, const Vector& f);

struct ImageReport {
  bool factors_invertible = false;
  ControlledClass image_class;
  double conjugation_residual = 0.0;  // ||S_image - (U1 x U2) S (U1 x U2)^*||
  double lower = 0.0;
  double upper = 0.0;
  bool bounds_in_range = false;
};

/// Image family {(U1 x U2)(f_i (x) g_j)} under operators commuting with the
/// controls: controlled frame iff U1 (x) U2 is invertible.
ImageReport image_under_operator(const TensorControlledFrame& tcf, const Operator& u1,
                                 const Operator& u2);

/// Component duals tensorize: checks the tensor reconstruction identity on a
/// basis of the tensor space.
bool tensor_dual_check(const TensorControlledFrame& tcf, const FrameFamily& left_dual,
                       const FrameFamily& right_dual);

/// Dual pairs transported by unitaries commuting with the controls remain
/// dual pairs.
bool unitary_dual_transport(const TensorControlledFrame& tcf, const FrameFamily& left_dual,
                            const FrameFamily& right_dual, const Operator& u, const Operator& v);

}  // namespace nhf

#endif
