#include "nhf/frames.hpp"

#include <Eigen/Eigenvalues>

namespace nhf {

FrameFamily::FrameFamily(SpacePtr space, std::vector<Vector> ambient_vectors)
    : space_(std::move(space)), ambient_(std::move(ambient_vectors)) {
  if (ambient_.empty()) throw LengthMismatch("frame family must be non-empty");
  projected_.reserve(ambient_.size());
  for (const auto& v : ambient_) {
    if (!all_finite(v)) throw Error("frame vector has non-finite components");
    projected_.push_back(space_->project(v).coords);
  }
}

FrameFamily FrameFamily::from_quotient(SpacePtr space, std::vector<Vector> quotient_vectors) {
  std::vector<Vector> ambient;
  ambient.reserve(quotient_vectors.size());
  for (const auto& u : quotient_vectors) ambient.push_back(space->unproject(u));
  return FrameFamily(std::move(space), std::move(ambient));
}

std::vector<Cx> analysis(const FrameFamily& frame, const QuotientVector& f) {
  if (f.coords.size() != frame.space()->quotient_dim())
    throw DimensionMismatch("analysis input of wrong dimension");
  std::vector<Cx> out(frame.size());
  for (int i = 0; i < frame.size(); ++i) out[i] = inner(f.coords, frame.projected()[i]);
  return out;
}

QuotientVector synthesis(const FrameFamily& frame, const std::vector<Cx>& coeffs) {
  if (static_cast<int>(coeffs.size()) != frame.size())
    throw LengthMismatch("coefficient count differs from family size");
  Vector acc = Vector::Zero(frame.space()->quotient_dim());
  for (int i = 0; i < frame.size(); ++i) acc += coeffs[i] * frame.projected()[i];
  return {acc, frame.space()};
}

Operator frame_operator(const FrameFamily& frame) {
  const int d = frame.space()->quotient_dim();
  Matrix s = Matrix::Zero(d, d);
  for (const auto& p : frame.projected()) s += p * p.adjoint();
  return Operator(std::move(s));
}

FrameBounds optimal_bounds(const FrameFamily& frame) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(frame_operator(frame).mat);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff(), true};
}

bool is_frame(const FrameBounds& b) { return b.lower > 1e-10 * b.upper; }

}  // namespace nhf
