#ifndef NHF_FRAMES_HPP
#define NHF_FRAMES_HPP

#include <vector>

#include "nhf/ninner.hpp"
#include "nhf/operators.hpp"

namespace nhf {

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool optimal = false;
};

/// Finite family {f_i} given in ambient coordinates, projected once into the
/// quotient space at construction. All operator work happens on the
/// projected coordinates.
class FrameFamily {
 public:
  FrameFamily(SpacePtr space, std::vector<Vector> ambient_vectors);

  /// Family given directly in quotient coordinates (lifted to ambient
  /// representatives internally).
  static FrameFamily from_quotient(SpacePtr space, std::vector<Vector> quotient_vectors);

  const SpacePtr& space() const { return space_; }
  int size() const { return static_cast<int>(ambient_.size()); }
  const std::vector<Vector>& ambient_vectors() const { return ambient_; }
  const std::vector<Vector>& projected() const { return projected_; }

 private:
  SpacePtr space_;
  std::vector<Vector> ambient_;
  std::vector<Vector> projected_;
};

/// Coefficients {<f, f_i>} in quotient coordinates.
std::vector<Cx> analysis(const FrameFamily& frame, const QuotientVector& f);

/// Sum_i c_i f_i as a quotient vector.
QuotientVector synthesis(const FrameFamily& frame, const std::vector<Cx>& coeffs);

/// S_F = sum_i f_i f_i^* on quotient coordinates.
Operator frame_operator(const FrameFamily& frame);

/// Spectral (optimal) bounds: lambda_min and lambda_max of S_F.
FrameBounds optimal_bounds(const FrameFamily& frame);

/// Frame iff the optimal lower bound clears the invertibility tolerance.
bool is_frame(const FrameBounds& b);

}  // namespace nhf

#endif
