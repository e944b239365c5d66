#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/QR>

#include "nhf/rng.hpp"
#include "nhf/tensor.hpp"

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

ControlledFrame basis_frame(const SpacePtr& space, Matrix control) {
  return ControlledFrame(FrameFamily::from_quotient(space, {q(1, 0), q(0, 1)}),
                         Operator(std::move(control)));
}

ControlledFrame commuting_instance(CounterRng& rng, const SpacePtr& space, int m) {
  std::vector<Vector> vectors;
  for (int i = 0; i < m; ++i) vectors.push_back(rng.next_vector(3));
  FrameFamily frame(space, std::move(vectors));
  const Matrix s = frame_operator(frame).mat;
  const double c0 = 0.1 + rng.next_double();
  const double c1 = 0.1 + rng.next_double();
  Operator control(Matrix(c0 * Matrix::Identity(2, 2) + c1 * s));
  return ControlledFrame(std::move(frame), std::move(control));
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("kron on vectors and operators") {
  Vector e1 = q(1, 0);
  const Vector t = kron(e1, e1);
  CHECK(t.size() == 4);
  CHECK(std::abs(t[0] - Cx(1.0)) < 1e-15);
  CHECK(t.tail(3).norm() == 0.0);
  CHECK(kron(Vector(Vector::Zero(2)), q(0.3, 1.2)).norm() == 0.0);

  const Matrix k = kron(diag2(1, 2), diag2(1, 3));
  Eigen::VectorXcd d = k.diagonal();
  CHECK(std::abs(d[0] - Cx(1.0)) < 1e-15);
  CHECK(std::abs(d[1] - Cx(3.0)) < 1e-15);
  CHECK(std::abs(d[2] - Cx(2.0)) < 1e-15);
  CHECK(std::abs(d[3] - Cx(6.0)) < 1e-15);

  CounterRng rng = CounterRng::keyed(51, "tensor-kron", 0);
  const Vector u = rng.next_vector(2), v = rng.next_vector(3);
  const Vector u2 = rng.next_vector(2), v2 = rng.next_vector(3);
  CHECK(std::abs(inner(kron(u, v), kron(u2, v2)) - inner(u, u2) * inner(v, v2)) < 1e-12);
  CHECK(std::abs(kron(u, v).norm() - u.norm() * v.norm()) < 1e-12);

  // Operator algebra laws.
  const Matrix a = rng.next_matrix(2, 2), b = rng.next_matrix(3, 3);
  const Matrix a2 = rng.next_matrix(2, 2), b2 = rng.next_matrix(3, 3);
  CHECK((kron(a, b) * kron(u, v) - kron(Vector(a * u), Vector(b * v))).norm() < 1e-12);
  CHECK((kron(a, b) * kron(a2, b2) - kron(Matrix(a * a2), Matrix(b * b2))).norm() < 1e-10);
  CHECK((kron(a, b).adjoint() - kron(Matrix(a.adjoint()), Matrix(b.adjoint()))).norm() < 1e-12);
  CHECK(std::abs(operator_norm(kron(a, b)) - operator_norm(a) * operator_norm(b)) <
        1e-10 * (1.0 + operator_norm(a) * operator_norm(b)));
  CHECK((Matrix(kron(a, b).fullPivLu().inverse()) -
         kron(Matrix(a.fullPivLu().inverse()), Matrix(b.fullPivLu().inverse())))
            .norm() < 1e-8);
}

TEST_CASE("tensor n-inner product factorizes") {
  CounterRng rng = CounterRng::keyed(53, "tensor-ninner", 0);
  const Vector a = rng.next_vector(3), b = rng.next_vector(4);
  const AnchorSet left(2, {a});
  const AnchorSet right(2, {b});
  const Vector x1 = rng.next_vector(3), x2 = rng.next_vector(3);
  const Vector y1 = rng.next_vector(4), y2 = rng.next_vector(4);

  const Cx got = tensor_n_inner(x1, y1, x2, y2, left, right);
  const Cx expect = n_inner(x1, x2, left) * n_inner(y1, y2, right);
  CHECK(std::abs(got - expect) < 1e-10 * (1.0 + std::abs(expect)));

  // Norm product law on simple tensors.
  const double norm_prod = n_norm(x1, left) * n_norm(y1, right);
  CHECK(std::abs(std::sqrt(tensor_n_inner(x1, y1, x1, y1, left, right).real()) - norm_prod) <
        1e-10 * (1.0 + norm_prod));

  // Degenerate factor: x dependent on the anchor.
  CHECK(std::abs(tensor_n_inner(a, y1, x2, y2, left, right)) < 1e-10);
}

TEST_CASE("tensor frame operator and bounds on hand-checked data") {
  const SpacePtr space = simple_space();
  const TensorControlledFrame parseval(basis_frame(space, Matrix::Identity(2, 2)),
                                       basis_frame(space, Matrix::Identity(2, 2)));
  CHECK((tensor_frame_operator(parseval).mat - Matrix::Identity(4, 4)).norm() < 1e-12);
  const ControlledBounds pb = tensor_controlled_bounds(parseval);
  CHECK(pb.lower == doctest::Approx(1.0));
  CHECK(pb.upper == doctest::Approx(1.0));

  // Component controlled operators diag(1,2) and diag(1,3).
  const TensorControlledFrame mixed(basis_frame(space, diag2(1, 2)),
                                    basis_frame(space, diag2(1, 3)));
  const Matrix s = tensor_frame_operator(mixed).mat;
  CHECK((s - kron(diag2(1, 2), diag2(1, 3))).norm() < 1e-12);
  const ControlledBounds mb = tensor_controlled_bounds(mixed);
  CHECK(mb.lower == doctest::Approx(1.0));
  CHECK(mb.upper == doctest::Approx(6.0));
}

TEST_CASE("tensor identities on random instances") {
  CounterRng rng = CounterRng::keyed(57, "tensor-random", 0);
  const SpacePtr space = simple_space();
  for (int t = 0; t < 20; ++t) {
    const TensorControlledFrame tcf(commuting_instance(rng, space, 4),
                                    commuting_instance(rng, space, 5));
    const Operator s = tensor_frame_operator(tcf);
    const Matrix via_kron =
        kron(tcf.left().controlled_operator().mat, tcf.right().controlled_operator().mat);
    CHECK((s.mat - via_kron).norm() <
          1e-11 * (1.0 + operator_norm(tcf.left().controlled_operator()) *
                             operator_norm(tcf.right().controlled_operator())));

    const ControlledBounds b = tensor_controlled_bounds(tcf);
    const ControlledBounds lb = controlled_bounds(tcf.left());
    const ControlledBounds rb = controlled_bounds(tcf.right());
    CHECK(b.lower >= lb.lower * rb.lower - 1e-9 * (1.0 + lb.lower * rb.lower));
    CHECK(b.upper <= lb.upper * rb.upper + 1e-9 * (1.0 + lb.upper * rb.upper));
    // Commuting positive controls: the optimal bounds are exactly the
    // products of the component optimal bounds.
    CHECK(b.lower == doctest::Approx(lb.lower * rb.lower).epsilon(1e-9));
    CHECK(b.upper == doctest::Approx(lb.upper * rb.upper).epsilon(1e-9));
  }
}

TEST_CASE("factorization iff and sampled bounds") {
  CounterRng rng = CounterRng::keyed(59, "tensor-factorization", 0);
  const SpacePtr space = simple_space();

  const TensorControlledFrame good(commuting_instance(rng, space, 4),
                                   commuting_instance(rng, space, 4));
  const FactorizationReport r = factorization_check(good, 17);
  CHECK(r.iff_holds);
  CHECK(r.tensor_class == ControlledClass::controlled_frame);
  CHECK(r.probes_used > 0);
  CHECK(r.sampled_bounds_valid);

  // Rank-deficient left component: the tensor family cannot be a frame.
  const ControlledFrame deficient(
      FrameFamily::from_quotient(space, {q(1, 0), q(2, 0)}), Operator::identity(2));
  const TensorControlledFrame bad(deficient, commuting_instance(rng, space, 4));
  const FactorizationReport rb = factorization_check(bad, 17);
  CHECK(rb.iff_holds);
  CHECK(rb.left_class != ControlledClass::controlled_frame);
  CHECK(rb.tensor_class != ControlledClass::controlled_frame);
}

TEST_CASE("tensor reconstruction") {
  CounterRng rng = CounterRng::keyed(61, "tensor-reconstruct", 0);
  const SpacePtr space = simple_space();
  const TensorControlledFrame tcf(commuting_instance(rng, space, 4),
                                  commuting_instance(rng, space, 5));
  for (int t = 0; t < 10; ++t) {
    const Vector f = rng.next_vector(4);  // general, non-simple tensor
    const TensorReconstruction r = tensor_reconstruct(tcf, f);
    CHECK(r.residual_dual < 1e-9);
    CHECK(r.residual_inverse < 1e-9);
  }

  const ControlledFrame deficient(
      FrameFamily::from_quotient(space, {q(1, 0), q(2, 0)}), Operator::identity(2));
  CHECK_THROWS_AS(
      tensor_reconstruct(TensorControlledFrame(deficient, commuting_instance(rng, space, 4)),
                         Vector(Vector::Zero(4))),
      NotControlledFrame);
}

TEST_CASE("tight tensor scaling") {
  // Tight components with bounds 2 and 3: the tensor dual is the family
  // scaled by 1/6.
  const SpacePtr space = simple_space();
  std::vector<Vector> left_v = {std::sqrt(2.0) * q(1, 0), std::sqrt(2.0) * q(0, 1)};
  std::vector<Vector> right_v = {std::sqrt(3.0) * q(1, 0), std::sqrt(3.0) * q(0, 1)};
  const TensorControlledFrame tcf(
      ControlledFrame(FrameFamily::from_quotient(space, left_v), Operator::identity(2)),
      ControlledFrame(FrameFamily::from_quotient(space, right_v), Operator::identity(2)));
  const Matrix s = tensor_frame_operator(tcf).mat;
  CHECK((s - 6.0 * Matrix::Identity(4, 4)).norm() < 1e-10);
  CounterRng rng = CounterRng::keyed(63, "tensor-tight", 0);
  const Vector f = rng.next_vector(4);
  CHECK((s * f / 6.0 - f).norm() < 1e-9 * (1.0 + f.norm()));
}

TEST_CASE("image under operators") {
  CounterRng rng = CounterRng::keyed(67, "tensor-image", 0);
  const SpacePtr space = simple_space();
  const TensorControlledFrame tcf(
      ControlledFrame(FrameFamily(space, {rng.next_vector(3), rng.next_vector(3),
                                          rng.next_vector(3)}),
                      Operator(Matrix(1.5 * Matrix::Identity(2, 2)))),
      ControlledFrame(FrameFamily(space, {rng.next_vector(3), rng.next_vector(3)}),
                      Operator::identity(2)));

  // Identity maps leave everything unchanged.
  const ImageReport rid = image_under_operator(tcf, Operator::identity(2), Operator::identity(2));
  CHECK(rid.factors_invertible);
  CHECK(rid.image_class == ControlledClass::controlled_frame);
  CHECK(rid.conjugation_residual < 1e-12);
  CHECK(rid.bounds_in_range);

  // Scalar maps 2I and 3I scale the bounds by 36.
  const ImageReport rsc = image_under_operator(
      tcf, Operator(Matrix(2.0 * Matrix::Identity(2, 2))),
      Operator(Matrix(3.0 * Matrix::Identity(2, 2))));
  const ControlledBounds base = tensor_controlled_bounds(tcf);
  CHECK(rsc.lower == doctest::Approx(36.0 * base.lower).epsilon(1e-9));
  CHECK(rsc.upper == doctest::Approx(36.0 * base.upper).epsilon(1e-9));
  CHECK(rsc.conjugation_residual < 1e-9);
  CHECK(rsc.bounds_in_range);

  // Singular factor: image is not a controlled frame.
  const ImageReport rsing =
      image_under_operator(tcf, Operator(diag2(1, 0)), Operator::identity(2));
  CHECK_FALSE(rsing.factors_invertible);
  CHECK(rsing.image_class != ControlledClass::controlled_frame);
  CHECK(rsing.conjugation_residual < 1e-9);

  // Random invertible maps with scalar controls.
  const ImageReport rrand =
      image_under_operator(tcf, Operator(rng.next_matrix(2, 2)), Operator(rng.next_matrix(2, 2)));
  CHECK(rrand.factors_invertible);
  CHECK(rrand.image_class == ControlledClass::controlled_frame);
  CHECK(rrand.conjugation_residual < 1e-9);
  CHECK(rrand.bounds_in_range);

  // Non-commuting control and map is refused.
  const TensorControlledFrame diag_ctrl(
      ControlledFrame(FrameFamily(space, {rng.next_vector(3), rng.next_vector(3)}),
                      Operator(diag2(1, 2))),
      ControlledFrame(FrameFamily(space, {rng.next_vector(3), rng.next_vector(3)}),
                      Operator::identity(2)));
  Matrix swap = Matrix::Zero(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  CHECK_THROWS_AS(image_under_operator(diag_ctrl, Operator(swap), Operator::identity(2)),
                  CommutationFailure);
}

TEST_CASE("tensor duals and unitary transport") {
  CounterRng rng = CounterRng::keyed(71, "tensor-duals", 0);
  const SpacePtr space = simple_space();
  const TensorControlledFrame tcf(commuting_instance(rng, space, 4),
                                  commuting_instance(rng, space, 4));
  const FrameFamily d1 = canonical_dual(tcf.left());
  const FrameFamily d2 = canonical_dual(tcf.right());
  CHECK(tensor_dual_check(tcf, d1, d2));

  // A perturbed right dual fails.
  std::vector<Vector> perturbed;
  for (const auto& v : d2.projected()) perturbed.push_back(v + 0.1 * q(1, 1));
  CHECK_THROWS_AS(tensor_dual_check(tcf, d1, FrameFamily::from_quotient(space, perturbed)),
                  Error);

  // Identity transport reduces to the plain dual check.
  CHECK(unitary_dual_transport(tcf, d1, d2, Operator::identity(2), Operator::identity(2)));

  // Scalar controls admit arbitrary unitaries.
  const TensorControlledFrame scl(
      ControlledFrame(tcf.left().frame(), Operator(Matrix(1.5 * Matrix::Identity(2, 2)))),
      ControlledFrame(tcf.right().frame(), Operator(Matrix(0.5 * Matrix::Identity(2, 2)))));
  const FrameFamily sd1 = canonical_dual(scl.left());
  const FrameFamily sd2 = canonical_dual(scl.right());
  const Matrix u = Eigen::HouseholderQR<Matrix>(rng.next_matrix(2, 2)).householderQ();
  const Matrix v = Eigen::HouseholderQR<Matrix>(rng.next_matrix(2, 2)).householderQ();
  CHECK(unitary_dual_transport(scl, sd1, sd2, Operator(u), Operator(v)));

  // Non-unitary transport operator is refused.
  CHECK_THROWS_AS(
      unitary_dual_transport(scl, sd1, sd2, Operator(Matrix(2.0 * Matrix::Identity(2, 2))),
                             Operator::identity(2)),
      NotUnitary);
}
