#include "nhf/controlled.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nhf {

std::string to_string(ControlledClass c) {
  switch (c) {
    case ControlledClass::controlled_frame: return "controlled_frame";
    case ControlledClass::controlled_bessel_only: return "controlled_bessel_only";
    case ControlledClass::not_controlled: return "not_controlled";
    case ControlledClass::non_real_form: return "non_real_form";
  }
  return "?";
}

ControlledFrame::ControlledFrame(FrameFamily frame, Operator control)
    : frame_(std::move(frame)), control_(std::move(control)) {
  if (control_.dim() != frame_.space()->quotient_dim())
    throw DimensionMismatch("control operator dimension differs from quotient dimension");
  if (!classify(control_).invertible)
    throw Singular("control operator must be invertible");
  s_f_ = frame_operator(frame_);
  s_c_ = Operator(control_.mat * s_f_.mat);

  // Second assembly route: sum of (C f_i) f_i^*.
  Matrix sum = Matrix::Zero(control_.dim(), control_.dim());
  for (const auto& p : frame_.projected()) sum += (control_.mat * p) * p.adjoint();
  const double scale = operator_norm(control_) * operator_norm(s_f_);
  if ((sum - s_c_.mat).norm() > 1e-12 * (1.0 + scale))
    throw Error("controlled frame operator assembly routes disagree");
}

Cx controlled_form(const ControlledFrame& cf, const QuotientVector& f) {
  if (f.coords.size() != cf.frame().space()->quotient_dim())
    throw DimensionMismatch("controlled form input of wrong dimension");
  Cx acc = 0.0;
  const Matrix& c = cf.control().mat;
  for (const auto& p : cf.frame().projected())
    acc += inner(f.coords, p) * inner(c * p, f.coords);
  return acc;
}

ControlledBounds controlled_bounds(const ControlledFrame& cf) {
  const Matrix& sc = cf.controlled_operator().mat;
  const Matrix herm = (sc + sc.adjoint()) / 2.0;
  const Matrix skew = (sc - sc.adjoint()) / 2.0;

  ControlledBounds b;
  b.realness_defect = operator_norm(skew);
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  b.lower = es.eigenvalues().minCoeff();
  b.upper = es.eigenvalues().maxCoeff();

  const double defect = (sc - sc.adjoint()).norm();
  if (defect > 1e-8 * (1.0 + operator_norm(sc))) {
    b.classification = ControlledClass::non_real_form;
  } else if (b.lower > 1e-10 * b.upper) {
    b.classification = ControlledClass::controlled_frame;
  } else if (b.lower >= -1e-10 * (1.0 + b.upper)) {
    // Finite dimension: the upper bound always exists, so degeneration is
    // exactly a vanishing lower bound.
    b.classification = ControlledClass::controlled_bessel_only;
  } else {
    b.classification = ControlledClass::not_controlled;
  }
  return b;
}

ControlledFrame tight_rescale(const ControlledFrame& cf) {
  const ControlledBounds b = controlled_bounds(cf);
  if (b.classification != ControlledClass::controlled_frame ||
      std::abs(b.upper - b.lower) > 1e-8 * std::abs(b.upper))
    throw NotTight("tight_rescale requires equal controlled bounds");
  const double s = 1.0 / std::sqrt(b.lower);
  std::vector<Vector> scaled;
  scaled.reserve(cf.frame().size());
  for (const auto& v : cf.frame().ambient_vectors()) scaled.push_back(s * v);
  return ControlledFrame(FrameFamily(cf.frame().space(), std::move(scaled)), cf.control());
}

SynthesisNormReport synthesis_norm_check(const ControlledFrame& cf) {
  if (!classify(cf.control()).positive)
    throw NotPositive("synthesis bound requires a positive control");
  const int d = cf.frame().space()->quotient_dim();
  const int m = cf.frame().size();
  Matrix u(d, m);
  for (int i = 0; i < m; ++i) u.col(i) = cf.control().mat * cf.frame().projected()[i];

  SynthesisNormReport r;
  r.synthesis_norm = operator_norm(u);
  const double b = controlled_bounds(cf).upper;
  r.predicted_bound = std::sqrt(std::max(0.0, b)) * operator_norm(sqrt_positive(cf.control()));
  r.bound_holds = r.synthesis_norm <= r.predicted_bound + 1e-8 * (1.0 + r.predicted_bound);

  // Adjoint formula (U^* f)_i = <C f, f_i> on the canonical basis.
  const Matrix uh = u.adjoint();
  for (int k = 0; k < d; ++k) {
    Vector f = Vector::Zero(d);
    f[k] = 1.0;
    const Vector lhs = uh * f;
    for (int i = 0; i < m; ++i) {
      const Cx rhs = inner(cf.control().mat * f, cf.frame().projected()[i]);
      r.adjoint_residual = std::max(r.adjoint_residual, std::abs(lhs[i] - rhs));
    }
  }
  return r;
}

namespace {

void require_gb_plus(const Operator& c) {
  const auto cls = classify(c);
  if (!cls.positive) throw NotPositive("control must be positive");
  if (!cls.invertible) throw Singular("control must be invertible");
}

}  // namespace

FrameBounds controlled_to_frame_bounds(const ControlledFrame& cf) {
  require_gb_plus(cf.control());
  const ControlledBounds b = controlled_bounds(cf);
  const Operator root = sqrt_positive(cf.control());
  const double norm_root = operator_norm(root);
  const double norm_root_inv = operator_norm(inverse(root));
  return {b.lower / (norm_root * norm_root), b.upper * norm_root_inv * norm_root_inv, false};
}

ControlledBounds frame_to_controlled_bounds(const FrameFamily& frame, const Operator& control) {
  require_gb_plus(control);
  const FrameBounds ord = optimal_bounds(frame);
  const Operator root = sqrt_positive(control);
  const double norm_root_inv = operator_norm(inverse(root));
  ControlledBounds out;
  out.lower = ord.lower / (norm_root_inv * norm_root_inv);
  out.upper = ord.upper * operator_norm(control);
  out.classification = ControlledClass::controlled_frame;
  return out;
}

ControlledFrame parsevalize(const ControlledFrame& cf) {
  // C commutes with S_C = C S_F exactly when it commutes with S_F (and hence
  // with S_C^{-1} when that exists), so this also covers the inverse.
  if (!commutes(cf.controlled_operator(), cf.control()))
    throw CommutationFailure("S_C does not commute with the control");
  const ControlledBounds b = controlled_bounds(cf);
  if (b.classification != ControlledClass::controlled_frame)
    throw NotControlledFrame("parsevalize requires a controlled frame");

  // S_C is self-adjoint up to the classification tolerance here; take the
  // square root of its Hermitian part.
  const Matrix herm = (cf.controlled_operator().mat + cf.controlled_operator().mat.adjoint()) / 2.0;
  const Operator root_inv = inverse(sqrt_positive(Operator(herm)));

  std::vector<Vector> rescaled;
  rescaled.reserve(cf.frame().size());
  for (const auto& p : cf.frame().projected()) rescaled.push_back(root_inv.mat * p);
  return ControlledFrame(
      FrameFamily::from_quotient(cf.frame().space(), std::move(rescaled)), cf.control());
}

FrameFamily canonical_dual(const ControlledFrame& cf) {
  if (controlled_bounds(cf).classification != ControlledClass::controlled_frame)
    throw NotControlledFrame("canonical dual requires a controlled frame");
  const Operator sc_inv = inverse(cf.controlled_operator());
  std::vector<Vector> dual;
  dual.reserve(cf.frame().size());
  for (const auto& p : cf.frame().projected()) dual.push_back(sc_inv.mat * p);
  return FrameFamily::from_quotient(cf.frame().space(), std::move(dual));
}

bool dual_check(const ControlledFrame& cf, const FrameFamily& candidate) {
  if (candidate.space()->quotient_dim() != cf.frame().space()->quotient_dim())
    throw DimensionMismatch("dual candidate lives in a different space");
  if (candidate.size() != cf.frame().size())
    throw LengthMismatch("dual candidate of different length");

  const int d = cf.frame().space()->quotient_dim();
  const Matrix& c = cf.control().mat;
  Matrix direct = Matrix::Zero(d, d);
  Matrix swapped = Matrix::Zero(d, d);
  for (int i = 0; i < cf.frame().size(); ++i) {
    const Vector& p = cf.frame().projected()[i];
    const Vector& q = candidate.projected()[i];
    direct += (c * p) * q.adjoint();
    swapped += (c * q) * p.adjoint();
  }
  // Both reconstruction orders are required; they coincide when the control
  // commutes with the frame operator.
  const Matrix id = Matrix::Identity(d, d);
  return (direct - id).norm() < 1e-9 && (swapped - id).norm() < 1e-9;
}

double dual_implies_frame_bound(const ControlledFrame& cf, const FrameFamily& dual) {
  require_gb_plus(cf.control());
  if (!dual_check(cf, dual)) throw Error("candidate fails the dual reconstruction check");

  const double b_frame = controlled_bounds(cf).upper;
  const double b_dual = controlled_bounds(ControlledFrame(dual, cf.control())).upper;
  const double b = std::max(b_frame, b_dual);

  const double norm_c = operator_norm(cf.control());
  const double norm_root_inv = operator_norm(inverse(sqrt_positive(cf.control())));
  const double constant =
      1.0 / (b * norm_root_inv * norm_root_inv * norm_root_inv * norm_root_inv * norm_c * norm_c);
  if (constant > controlled_bounds(cf).lower + 1e-8)
    throw Error("dual-implied lower bound exceeds the actual lower bound");
  return constant;
}

}  // namespace nhf
