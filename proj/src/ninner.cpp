#include "nhf/ninner.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhf {

AnchorSet::AnchorSet(int order, std::vector<Vector> anchors)
    : order_(order), anchors_(std::move(anchors)) {
  if (order_ < 2) throw Error("anchor set order must be >= 2");
  if (anchors_.size() != static_cast<size_t>(order_ - 1))
    throw LengthMismatch("expected n-1 anchors");
  const Eigen::Index d = anchors_.front().size();
  if (d < order_) throw DimensionMismatch("ambient dimension must be >= n");
  double norm_prod = 1.0;
  for (const auto& a : anchors_) {
    if (a.size() != d) throw DimensionMismatch("anchors of unequal dimension");
    if (!all_finite(a)) throw Error("anchor has non-finite components");
    norm_prod *= a.squaredNorm();
  }
  Matrix gram(order_ - 1, order_ - 1);
  for (int i = 0; i < order_ - 1; ++i)
    for (int j = 0; j < order_ - 1; ++j) gram(i, j) = inner(anchors_[i], anchors_[j]);
  const double det = gram.determinant().real();
  if (!(det > kIndependenceTol * norm_prod))
    throw DegenerateAnchors("anchor Gram determinant below tolerance");
}

Cx n_inner(const Vector& x, const Vector& y, const AnchorSet& anchors) {
  const Eigen::Index d = anchors.ambient_dim();
  if (x.size() != d || y.size() != d)
    throw DimensionMismatch("vector dimension differs from anchor dimension");
  const int n = anchors.order();
  const auto& a = anchors.anchors();
  Matrix m(n, n);
  m(0, 0) = inner(x, y);
  for (int k = 1; k < n; ++k) {
    m(0, k) = inner(x, a[k - 1]);
    m(k, 0) = inner(a[k - 1], y);
    for (int l = 1; l < n; ++l) m(k, l) = inner(a[k - 1], a[l - 1]);
  }
  return m.determinant();
}

double n_norm(const Vector& x, const AnchorSet& anchors) {
  const Cx q = n_inner(x, x, anchors);
  if (q.real() < -1e-10)
    throw NumericalNegativity("n_inner(x,x) negative beyond tolerance");
  return std::sqrt(std::max(0.0, q.real()));
}

QuotientSpace::QuotientSpace(AnchorSet anchors, int ambient_dim)
    : anchors_(std::move(anchors)), ambient_dim_(ambient_dim), quotient_dim_(0) {}

namespace {

// Phase-fix in place: first component with modulus above 1e-12 of the max
// becomes real positive.
void fix_phase(Vector& v) {
  const double big = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > 1e-12 * big) {
      v *= std::conj(v[i]) / m;
      return;
    }
  }
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

SpacePtr QuotientSpace::build(const AnchorSet& anchors, int ambient_dim) {
  if (ambient_dim != anchors.ambient_dim())
    throw DimensionMismatch("ambient_dim differs from anchor dimension");
  std::shared_ptr<QuotientSpace> s(new QuotientSpace(anchors, ambient_dim));

  const int d = ambient_dim;
  // Semi-inner-product Gram matrix: <x,y>_F = y^H G x with
  // G(i,j) = <e_j, e_i | a_2,...,a_n>.
  Matrix g(d, d);
  Vector ei = Vector::Zero(d), ej = Vector::Zero(d);
  for (int j = 0; j < d; ++j) {
    ej[j] = 1.0;
    for (int i = 0; i < d; ++i) {
      ei[i] = 1.0;
      g(i, j) = n_inner(ej, ei, anchors);
      ei[i] = 0.0;
    }
    ej[j] = 0.0;
  }
  g = (g + g.adjoint().eval()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Eigen::VectorXd lambda = es.eigenvalues();
  const double lmax = lambda.maxCoeff();
  if (!(lmax > 0)) throw DegenerateAnchors("semi-inner-product Gram matrix is zero");

  struct Pair {
    double lambda;
    Vector vec;
  };
  std::vector<Pair> kept;
  for (int k = 0; k < d; ++k) {
    if (lambda[k] > 1e-10 * lmax) {
      Vector v = es.eigenvectors().col(k);
      fix_phase(v);
      kept.push_back({lambda[k], std::move(v)});
    }
  }
  std::sort(kept.begin(), kept.end(), [&](const Pair& a, const Pair& b) {
    if (std::abs(a.lambda - b.lambda) > 1e-12 * lmax) return a.lambda > b.lambda;
    return lex_less(a.vec, b.vec);
  });

  const int df = static_cast<int>(kept.size());
  if (df != d - (anchors.order() - 1))
    throw DegenerateAnchors("quotient rank differs from d - (n-1)");

  s->quotient_dim_ = df;
  s->embedding_.resize(df, d);
  s->lift_.resize(d, df);
  for (int k = 0; k < df; ++k) {
    const double r = std::sqrt(kept[k].lambda);
    s->embedding_.row(k) = r * kept[k].vec.adjoint();
    s->lift_.col(k) = kept[k].vec / r;
  }
  return s;
}

QuotientVector QuotientSpace::project(const Vector& x) const {
  if (x.size() != ambient_dim_)
    throw DimensionMismatch("projecting vector of wrong dimension");
  return {embedding_ * x, shared_from_this()};
}

Vector QuotientSpace::unproject(const Vector& u) const {
  if (u.size() != quotient_dim_)
    throw DimensionMismatch("lifting vector of wrong dimension");
  return lift_ * u;
}

}  // namespace nhf
