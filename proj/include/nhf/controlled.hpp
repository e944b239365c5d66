#ifndef NHF_CONTROLLED_HPP
#define NHF_CONTROLLED_HPP

#include <string>

#include "nhf/frames.hpp"

namespace nhf {

enum class ControlledClass {
  controlled_frame,
  controlled_bessel_only,
  not_controlled,
  non_real_form,
};

std::string to_string(ControlledClass c);

struct ControlledBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Largest |Im <S_C f, f>| over unit vectors f (spectral norm of the
  /// skew-Hermitian part of S_C).
  double realness_defect = 0.0;
  ControlledClass classification = ControlledClass::not_controlled;
};

/// Family {f_i} together with an invertible control operator C on the
/// quotient space, and the derived operators S_F and S_C = C S_F.
class ControlledFrame {
 public:
  ControlledFrame(FrameFamily frame, Operator control);

  const FrameFamily& frame() const { return frame_; }
  const Operator& control() const { return control_; }
  const Operator& plain_operator() const { return s_f_; }       // S_F
  const Operator& controlled_operator() const { return s_c_; }  // S_C

 private:
  FrameFamily frame_;
  Operator control_;
  Operator s_f_;
  Operator s_c_;
};

/// sum_i <f, f_i><C f_i, f>; equals <S_C f, f>.
Cx controlled_form(const ControlledFrame& cf, const QuotientVector& f);

/// S_C assembled from the outer-product sum (cross-checked against C S_F at
/// construction time).
inline const Operator& controlled_frame_operator(const ControlledFrame& cf) {
  return cf.controlled_operator();
}

/// Spectral bounds of the Hermitian part of S_C plus realness diagnostics.
ControlledBounds controlled_bounds(const ControlledFrame& cf);

/// Remark-style rescale of a tight controlled frame to a Parseval one:
/// family {A^{-1/2} f_i} with the same control.
ControlledFrame tight_rescale(const ControlledFrame& cf);

struct SynthesisNormReport {
  double synthesis_norm = 0.0;   // largest singular value of [C f_1 ... C f_m]
  double predicted_bound = 0.0;  // sqrt(B) * ||C^{1/2}||
  double adjoint_residual = 0.0; // worst probe residual of the adjoint formula
  bool bound_holds = false;
};

/// Checks ||U|| <= sqrt(B) ||C^{1/2}|| for the synthesis matrix with columns
/// C f_i, and verifies (U^* f)_i = <C f, f_i> on probes. Requires positive C.
SynthesisNormReport synthesis_norm_check(const ControlledFrame& cf);

/// Predicted ordinary-frame bounds A ||C^{1/2}||^{-2}, B ||C^{-1/2}||^2 from
/// the controlled bounds (A, B). Requires C positive and invertible.
FrameBounds controlled_to_frame_bounds(const ControlledFrame& cf);

/// Predicted controlled bounds A ||C^{-1/2}||^{-2}, B ||C|| from the ordinary
/// optimal bounds. Requires C positive and invertible.
ControlledBounds frame_to_controlled_bounds(const FrameFamily& frame, const Operator& control);

/// Family {S_C^{-1/2} f_i}: a controlled Parseval frame when S_C^{-1}
/// commutes with C. Refuses (CommutationFailure) when it does not.
ControlledFrame parsevalize(const ControlledFrame& cf);

/// Canonical dual family {S_C^{-1} f_i}.
FrameFamily canonical_dual(const ControlledFrame& cf);

/// True iff sum_i <f, g_i> C f_i = f on a basis of the quotient space and
/// the reconstruction with the two families' roles swapped also holds.
bool dual_check(const ControlledFrame& cf, const FrameFamily& candidate);

/// Lower-bound constant 1 / (B ||C^{-1/2}||^4 ||C||^2) implied by a valid
/// dual pair, with B the larger of the two controlled upper bounds. Checked
/// against the actual lower bound before returning.
double dual_implies_frame_bound(const ControlledFrame& cf, const FrameFamily& dual);

}  // namespace nhf

#endif
