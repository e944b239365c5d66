#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "nhf/frames.hpp"
#include "nhf/rng.hpp"

using namespace nhf;

namespace {

SpacePtr simple_space() {
  Vector a = Vector::Zero(3);
  a[2] = 1.0;
  return build_quotient(AnchorSet(2, {a}), 3);
}

Vector q(double a, double b) {
  Vector v(2);
  v << Cx(a), Cx(b);
  return v;
}

FrameFamily canonical_family(const SpacePtr& space) {
  return FrameFamily::from_quotient(space, {q(1, 0), q(0, 1)});
}

}  // namespace

TEST_CASE("analysis and synthesis on the canonical family") {
  const SpacePtr space = simple_space();
  const FrameFamily frame = canonical_family(space);

  const auto coeffs = analysis(frame, {q(1, 0), space});
  REQUIRE(coeffs.size() == 2);
  CHECK(std::abs(coeffs[0] - Cx(1.0)) < 1e-12);
  CHECK(std::abs(coeffs[1]) < 1e-12);

  const auto zeros = analysis(frame, {q(0, 0), space});
  CHECK(std::abs(zeros[0]) < 1e-14);
  CHECK(std::abs(zeros[1]) < 1e-14);

  CHECK((synthesis(frame, {Cx(0.0), Cx(1.0)}).coords - q(0, 1)).norm() < 1e-12);
  CHECK(synthesis(frame, {Cx(0.0), Cx(0.0)}).coords.norm() == 0.0);
  CHECK_THROWS_AS(synthesis(frame, {Cx(1.0)}), LengthMismatch);
}

TEST_CASE("analysis matches the ambient n-inner product") {
  CounterRng rng = CounterRng::keyed(21, "frames-analysis", 0);
  const int d = 5;
  std::vector<Vector> anchors = {rng.next_vector(d), rng.next_vector(d)};
  const AnchorSet a(3, anchors);
  const SpacePtr space = build_quotient(a, d);
  std::vector<Vector> vectors;
  for (int i = 0; i < 4; ++i) vectors.push_back(rng.next_vector(d));
  const FrameFamily frame(space, vectors);

  const Vector f = rng.next_vector(d);
  const auto coeffs = analysis(frame, space->project(f));
  for (int i = 0; i < 4; ++i) {
    const Cx expect = n_inner(f, vectors[i], a);
    CHECK(std::abs(coeffs[i] - expect) < 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("adjoint pairing between analysis and synthesis") {
  CounterRng rng = CounterRng::keyed(23, "frames-pairing", 0);
  const SpacePtr space = simple_space();
  std::vector<Vector> vectors;
  for (int i = 0; i < 5; ++i) vectors.push_back(rng.next_vector(3));
  const FrameFamily frame(space, vectors);
  const Vector f = rng.next_vector(2);
  std::vector<Cx> coeffs;
  for (int i = 0; i < 5; ++i) coeffs.push_back(rng.next_complex_gaussian());

  Cx lhs = inner(synthesis(frame, coeffs).coords, f);
  const auto a = analysis(frame, {f, space});
  Cx rhs = 0.0;
  for (int i = 0; i < 5; ++i) rhs += coeffs[i] * std::conj(a[i]);
  CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
}

TEST_CASE("frame operator and optimal bounds") {
  const SpacePtr space = simple_space();
  const FrameFamily basis = canonical_family(space);
  CHECK((frame_operator(basis).mat - Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(optimal_bounds(basis).lower == doctest::Approx(1.0));
  CHECK(optimal_bounds(basis).upper == doctest::Approx(1.0));

  const FrameFamily doubled =
      FrameFamily::from_quotient(space, {q(1, 0), q(0, 1), q(1, 0), q(0, 1)});
  CHECK((frame_operator(doubled).mat - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);

  const FrameFamily lopsided = FrameFamily::from_quotient(space, {q(1, 0), q(1, 0), q(0, 1)});
  const FrameBounds b = optimal_bounds(lopsided);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(2.0));
  CHECK(is_frame(b));

  const FrameFamily incomplete = FrameFamily::from_quotient(space, {q(1, 0)});
  const FrameBounds bi = optimal_bounds(incomplete);
  CHECK(bi.lower == doctest::Approx(0.0));
  CHECK_FALSE(is_frame(bi));
}

TEST_CASE("frame inequality, inverse sandwich, reconstruction") {
  CounterRng rng = CounterRng::keyed(29, "frames-props", 0);
  const SpacePtr space = simple_space();
  std::vector<Vector> vectors;
  for (int i = 0; i < 6; ++i) vectors.push_back(rng.next_vector(3));
  const FrameFamily frame(space, vectors);
  const FrameBounds b = optimal_bounds(frame);
  REQUIRE(is_frame(b));

  const Matrix s = frame_operator(frame).mat;
  const Matrix s_inv = s.fullPivLu().inverse();
  Eigen::SelfAdjointEigenSolver<Matrix> es((s_inv + s_inv.adjoint()) / 2.0);
  CHECK(es.eigenvalues().minCoeff() >= 1.0 / b.upper - 1e-9);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 / b.lower + 1e-9);

  for (int t = 0; t < 100; ++t) {
    const Vector f = rng.next_vector(2);
    double total = 0.0;
    for (const Cx c : analysis(frame, {f, space})) total += std::norm(c);
    CHECK(total >= b.lower * f.squaredNorm() - 1e-9);
    CHECK(total <= b.upper * f.squaredNorm() + 1e-9);
    CHECK((s_inv * (s * f) - f).norm() < 1e-9 * (1.0 + f.norm()));
  }
}
