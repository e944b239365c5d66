#include "nhf/directsum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace nhf {

Vector dsum_vector(const Vector& u, const Vector& v) {
  Vector out(u.size() + v.size());
  out.head(u.size()) = u;
  out.tail(v.size()) = v;
  return out;
}

Operator dsum_operator(const Operator& t, const Operator& u) {
  const int dt = t.dim();
  const int du = u.dim();
  Matrix m = Matrix::Zero(dt + du, dt + du);
  m.topLeftCorner(dt, dt) = t.mat;
  m.bottomRightCorner(du, du) = u.mat;
  Operator out(std::move(m));
  const double expect = std::max(operator_norm(t), operator_norm(u));
  if (std::abs(operator_norm(out) - expect) > 1e-10 * (1.0 + expect))
    throw Error("direct sum norm law violated");
  return out;
}

double dsum_sum_norm(const Vector& u, const Vector& v) { return u.norm() + v.norm(); }

DirectSumFrame::DirectSumFrame(ControlledFrame left, ControlledFrame right)
    : left_(std::move(left)), right_(std::move(right)) {
  control_ = dsum_operator(left_.control(), right_.control()).mat;
  size_ = std::max(left_.frame().size(), right_.frame().size());
}

Vector DirectSumFrame::left_member(int i) const {
  if (i < left_.frame().size()) return left_.frame().projected()[i];
  return Vector::Zero(left_.frame().space()->quotient_dim());
}

Vector DirectSumFrame::right_member(int i) const {
  if (i < right_.frame().size()) return right_.frame().projected()[i];
  return Vector::Zero(right_.frame().space()->quotient_dim());
}

std::pair<Cx, Cx> cross_term(const DirectSumFrame& dsf, const Vector& f, const Vector& g) {
  if (f.size() != dsf.left().frame().space()->quotient_dim() ||
      g.size() != dsf.right().frame().space()->quotient_dim())
    throw DimensionMismatch("cross term probes of wrong dimension");
  const Matrix& c1 = dsf.left().control().mat;
  const Matrix& c2 = dsf.right().control().mat;
  Cx first = 0.0;
  Cx second = 0.0;
  for (int i = 0; i < dsf.size(); ++i) {
    const Vector fi = dsf.left_member(i);
    const Vector gi = dsf.right_member(i);
    first += inner(f, fi) * inner(c2 * gi, g);
    second += inner(g, gi) * inner(c1 * fi, f);
  }
  return {first, second};
}

Operator dsum_frame_operator(const DirectSumFrame& dsf) {
  const int dim = dsf.space().dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (int i = 0; i < dsf.size(); ++i) {
    const Vector phi = dsf.member(i);
    sum += (dsf.control() * phi) * phi.adjoint();
  }
  return Operator(std::move(sum));
}

ControlledBounds dsum_controlled_bounds(const DirectSumFrame& dsf) {
  const int dl = dsf.left().frame().space()->quotient_dim();
  const int dr = dsf.right().frame().space()->quotient_dim();
  for (int k = 0; k < dl; ++k) {
    Vector f = Vector::Zero(dl);
    f[k] = 1.0;
    for (int l = 0; l < dr; ++l) {
      Vector g = Vector::Zero(dr);
      g[l] = 1.0;
      const auto [first, second] = cross_term(dsf, f, g);
      if (std::abs(first) >= 1e-10 || std::abs(second) >= 1e-10)
        throw CrossTermViolation("cross-term decoupling fails on a basis pair");
    }
  }

  const Operator s = dsum_frame_operator(dsf);
  // Decoupling makes S block-diagonal; verify the off-diagonal blocks.
  if (s.mat.topRightCorner(dl, dr).norm() >= 1e-10 ||
      s.mat.bottomLeftCorner(dr, dl).norm() >= 1e-10)
    throw CrossTermViolation("frame operator has nonzero cross blocks");

  const Matrix herm = (s.mat + s.mat.adjoint()) / 2.0;
  ControlledBounds b;
  b.realness_defect = operator_norm(Matrix((s.mat - s.mat.adjoint()) / 2.0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  b.lower = es.eigenvalues().minCoeff();
  b.upper = es.eigenvalues().maxCoeff();
  if ((s.mat - s.mat.adjoint()).norm() > 1e-8 * (1.0 + operator_norm(s)))
    b.classification = ControlledClass::non_real_form;
  else if (b.lower > 1e-10 * b.upper)
    b.classification = ControlledClass::controlled_frame;
  else if (b.lower >= -1e-10 * (1.0 + b.upper))
    b.classification = ControlledClass::controlled_bessel_only;
  else
    b.classification = ControlledClass::not_controlled;

  const ControlledBounds lb = controlled_bounds(dsf.left());
  const ControlledBounds rb = controlled_bounds(dsf.right());
  const double lo = std::min(lb.lower, rb.lower);
  const double hi = std::max(lb.upper, rb.upper);
  const double tol = 1e-9 * (1.0 + std::abs(hi));
  if (b.lower < lo - tol || b.upper > hi + tol)
    throw Error("direct sum bounds escape the component envelope");
  return b;
}

}  // namespace nhf
