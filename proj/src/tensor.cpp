#include "nhf/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "nhf/rng.hpp"

namespace nhf {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& u, const Vector& v) {
  Vector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    out.segment(i * v.size(), v.size()) = u[i] * v;
  return out;
}

Cx tensor_n_inner(const Vector& x1, const Vector& y1, const Vector& x2, const Vector& y2,
                  const AnchorSet& left_anchors, const AnchorSet& right_anchors) {
  return n_inner(x1, x2, left_anchors) * n_inner(y1, y2, right_anchors);
}

TensorControlledFrame::TensorControlledFrame(ControlledFrame left, ControlledFrame right)
    : left_(std::move(left)), right_(std::move(right)) {
  control_ = kron(left_.control().mat, right_.control().mat);
}

Vector TensorControlledFrame::member(int flat_index) const {
  const int mr = right_.frame().size();
  const int i = flat_index / mr;
  const int j = flat_index % mr;
  return kron(left_.frame().projected()[i], right_.frame().projected()[j]);
}

Operator tensor_frame_operator(const TensorControlledFrame& tcf) {
  const int dim = tcf.space().dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (int k = 0; k < tcf.size(); ++k) {
    const Vector phi = tcf.member(k);
    sum += (tcf.control() * phi) * phi.adjoint();
  }

  const Matrix via_kron =
      kron(tcf.left().controlled_operator().mat, tcf.right().controlled_operator().mat);
  const double scale = operator_norm(tcf.left().controlled_operator()) *
                       operator_norm(tcf.right().controlled_operator());
  if ((sum - via_kron).norm() > 1e-11 * (1.0 + scale))
    throw Error("tensor frame operator differs from the Kronecker factorization");

  const auto cls = classify(Operator(sum));
  if (cls.invertible) {
    const Matrix inv_kron = kron(inverse(tcf.left().controlled_operator()).mat,
                                 inverse(tcf.right().controlled_operator()).mat);
    if ((inverse(Operator(sum)).mat - inv_kron).norm() > 1e-9 * (1.0 + inv_kron.norm()))
      throw Error("tensor inverse differs from the Kronecker of inverses");
  }
  return Operator(std::move(sum));
}

namespace {

ControlledBounds bounds_of(const Matrix& sc) {
  ControlledBounds b;
  const Matrix herm = (sc + sc.adjoint()) / 2.0;
  b.realness_defect = operator_norm((sc - sc.adjoint()).eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  b.lower = es.eigenvalues().minCoeff();
  b.upper = es.eigenvalues().maxCoeff();
  if ((sc - sc.adjoint()).norm() > 1e-8 * (1.0 + operator_norm(sc)))
    b.classification = ControlledClass::non_real_form;
  else if (b.lower > 1e-10 * b.upper)
    b.classification = ControlledClass::controlled_frame;
  else if (b.lower >= -1e-10 * (1.0 + b.upper))
    b.classification = ControlledClass::controlled_bessel_only;
  else
    b.classification = ControlledClass::not_controlled;
  return b;
}

}  // namespace

ControlledBounds tensor_controlled_bounds(const TensorControlledFrame& tcf) {
  const Operator s = tensor_frame_operator(tcf);
  ControlledBounds b = bounds_of(s.mat);

  const ControlledBounds lb = controlled_bounds(tcf.left());
  const ControlledBounds rb = controlled_bounds(tcf.right());
  const double lo = lb.lower * rb.lower;
  const double hi = lb.upper * rb.upper;
  const double tol = 1e-9 * (1.0 + std::abs(hi));
  if (lb.classification == ControlledClass::controlled_frame &&
      rb.classification == ControlledClass::controlled_frame) {
    if (b.lower < lo - tol || b.upper > hi + tol)
      throw Error("tensor bounds escape the product interval of component bounds");
  }
  return b;
}

FactorizationReport factorization_check(const TensorControlledFrame& tcf, uint64_t probe_seed) {
  FactorizationReport r{};
  const Operator s = tensor_frame_operator(tcf);
  const ControlledBounds tb = bounds_of(s.mat);
  const ControlledBounds lb = controlled_bounds(tcf.left());
  const ControlledBounds rb = controlled_bounds(tcf.right());
  r.tensor_class = tb.classification;
  r.left_class = lb.classification;
  r.right_class = rb.classification;
  r.iff_holds = (tb.classification == ControlledClass::controlled_frame) ==
                (lb.classification == ControlledClass::controlled_frame &&
                 rb.classification == ControlledClass::controlled_frame);

  if (tb.classification != ControlledClass::controlled_frame) return r;

  // Quotient-of-forms bounds for the left factor, sampled over right-space
  // probes g: every ratio A ||g||^2 / form(g) is a valid lower bound, every
  // B ||g||^2 / form(g) a valid upper bound.
  CounterRng rng = CounterRng::keyed(probe_seed, "factorization-probes", 0);
  const int dg = tcf.right().frame().space()->quotient_dim();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Vector g = rng.next_vector(dg);
    const double n2 = g.squaredNorm();
    const double form = controlled_form(tcf.right(), {g, tcf.right().frame().space()}).real();
    if (n2 < 1e-12 || form < 1e-10 * n2) continue;  // excluded probe
    lo = std::min(lo, tb.lower * n2 / form);
    hi = std::max(hi, tb.upper * n2 / form);
    ++r.probes_used;
  }
  if (r.probes_used > 0) {
    r.sampled_lower = lo;
    r.sampled_upper = hi;
    r.sampled_bounds_valid = lo <= lb.lower + 1e-8 && lb.upper <= hi + 1e-8;
  }
  return r;
}

TensorReconstruction tensor_reconstruct(const TensorControlledFrame& tcf, const Vector& f) {
  if (f.size() != tcf.space().dim())
    throw DimensionMismatch("tensor reconstruction input of wrong dimension");
  const Operator s = tensor_frame_operator(tcf);
  if (bounds_of(s.mat).classification != ControlledClass::controlled_frame)
    throw NotControlledFrame("tensor reconstruction requires a controlled frame");
  const Matrix s_inv = inverse(s).mat;

  TensorReconstruction out;
  out.via_dual_vectors = Vector::Zero(f.size());
  out.via_inverse_on_sum = Vector::Zero(f.size());
  for (int k = 0; k < tcf.size(); ++k) {
    const Vector phi = tcf.member(k);
    out.via_dual_vectors += inner(f, s_inv * phi) * (tcf.control() * phi);
    out.via_inverse_on_sum += inner(f, phi) * (s_inv * (tcf.control() * phi));
  }
  const double scale = 1.0 + f.norm();
  out.residual_dual = (out.via_dual_vectors - f).norm() / scale;
  out.residual_inverse = (out.via_inverse_on_sum - f).norm() / scale;
  return out;
}

ImageReport image_under_operator(const TensorControlledFrame& tcf, const Operator& u1,
                                 const Operator& u2) {
  if (!commutes(tcf.left().control(), u1) || !commutes(tcf.right().control(), u2))
    throw CommutationFailure("controls must commute with the mapping operators");

  ImageReport r{};
  const Matrix u = kron(u1.mat, u2.mat);
  r.factors_invertible = classify(u1).invertible && classify(u2).invertible;

  const int dim = tcf.space().dim();
  Matrix s_image = Matrix::Zero(dim, dim);
  for (int k = 0; k < tcf.size(); ++k) {
    const Vector delta = u * tcf.member(k);
    s_image += (tcf.control() * delta) * delta.adjoint();
  }
  const ControlledBounds ib = bounds_of(s_image);
  r.image_class = ib.classification;
  r.lower = ib.lower;
  r.upper = ib.upper;

  const Operator s = tensor_frame_operator(tcf);
  const Matrix conj = u * s.mat * u.adjoint();
  r.conjugation_residual = (s_image - conj).norm() / (1.0 + conj.norm());

  if (r.factors_invertible) {
    const ControlledBounds lb = controlled_bounds(tcf.left());
    const ControlledBounds rb = controlled_bounds(tcf.right());
    const double inv_norm = operator_norm(Matrix(u.fullPivLu().inverse()));
    const double lo = lb.lower * rb.lower / (inv_norm * inv_norm);
    const double hi = lb.upper * rb.upper * operator_norm(u) * operator_norm(u);
    const double tol = 1e-8 * (1.0 + std::abs(hi));
    r.bounds_in_range = r.lower >= lo - tol && r.upper <= hi + tol;
  }
  return r;
}

bool tensor_dual_check(const TensorControlledFrame& tcf, const FrameFamily& left_dual,
                       const FrameFamily& right_dual) {
  if (!dual_check(tcf.left(), left_dual) || !dual_check(tcf.right(), right_dual))
    throw Error("component dual check fails");

  const int dim = tcf.space().dim();
  const int mr = tcf.right().frame().size();
  Matrix recon = Matrix::Zero(dim, dim);
  for (int k = 0; k < tcf.size(); ++k) {
    const Vector psi = kron(left_dual.projected()[k / mr], right_dual.projected()[k % mr]);
    recon += (tcf.control() * tcf.member(k)) * psi.adjoint();
  }
  return (recon - Matrix::Identity(dim, dim)).norm() < 1e-9;
}

namespace {

FrameFamily map_family(const FrameFamily& fam, const Matrix& op) {
  std::vector<Vector> mapped;
  mapped.reserve(fam.size());
  for (const auto& p : fam.projected()) mapped.push_back(op * p);
  return FrameFamily::from_quotient(fam.space(), std::move(mapped));
}

}  // namespace

bool unitary_dual_transport(const TensorControlledFrame& tcf, const FrameFamily& left_dual,
                            const FrameFamily& right_dual, const Operator& u, const Operator& v) {
  const Matrix iu = Matrix::Identity(u.dim(), u.dim());
  const Matrix iv = Matrix::Identity(v.dim(), v.dim());
  if ((u.mat.adjoint() * u.mat - iu).norm() >= 1e-10 ||
      (v.mat.adjoint() * v.mat - iv).norm() >= 1e-10)
    throw NotUnitary("transport operators must be unitary");
  if (!commutes(tcf.left().control(), u) || !commutes(tcf.right().control(), v))
    throw CommutationFailure("controls must commute with the unitaries");
  if (!tensor_dual_check(tcf, left_dual, right_dual)) return false;

  TensorControlledFrame transported(
      ControlledFrame(map_family(tcf.left().frame(), u.mat), tcf.left().control()),
      ControlledFrame(map_family(tcf.right().frame(), v.mat), tcf.right().control()));
  return tensor_dual_check(transported, map_family(left_dual, u.mat),
                           map_family(right_dual, v.mat));
}

}  // namespace nhf
