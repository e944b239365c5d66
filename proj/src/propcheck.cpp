#include "nhf/propcheck.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "nhf/directsum.hpp"
#include "nhf/rng.hpp"
#include "nhf/tensor.hpp"

namespace nhf {

std::string to_string(ControlKind k) {
  switch (k) {
    case ControlKind::identity: return "identity";
    case ControlKind::scalar: return "scalar";
    case ControlKind::diagonal_positive: return "diagonal_positive";
    case ControlKind::random_positive: return "random_positive";
    case ControlKind::polynomial_in_SF: return "polynomial_in_SF";
    case ControlKind::random_invertible: return "random_invertible";
  }
  return "?";
}

namespace {

SpacePtr make_space(CounterRng& rng, int d, int n) {
  // Gaussian anchors are independent almost surely; retry on the tolerance
  // check just in case (deterministic: draws continue from the same stream).
  for (;;) {
    std::vector<Vector> anchors;
    for (int k = 0; k < n - 1; ++k) anchors.push_back(rng.next_vector(d));
    try {
      return build_quotient(AnchorSet(n, std::move(anchors)), d);
    } catch (const DegenerateAnchors&) {
    }
  }
}

Operator make_control(CounterRng& rng, ControlKind kind, const Operator& s_f) {
  const int d = s_f.dim();
  switch (kind) {
    case ControlKind::identity:
      return Operator::identity(d);
    case ControlKind::scalar:
      return Operator(Matrix((0.5 + 2.0 * rng.next_double()) * Matrix::Identity(d, d)));
    case ControlKind::diagonal_positive: {
      Matrix m = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) m(i, i) = 0.1 + 2.0 * rng.next_double();
      return Operator(std::move(m));
    }
    case ControlKind::random_positive: {
      const Matrix m = rng.next_matrix(d, d);
      return Operator(Matrix(m.adjoint() * m + 0.1 * Matrix::Identity(d, d)));
    }
    case ControlKind::polynomial_in_SF: {
      const double c0 = 0.1 + rng.next_double();
      const double c1 = 0.1 + rng.next_double();
      const double c2 = 0.1 + rng.next_double();
      return Operator(Matrix(c0 * Matrix::Identity(d, d) + c1 * s_f.mat + c2 * s_f.mat * s_f.mat));
    }
    case ControlKind::random_invertible:
      for (;;) {
        Operator c(rng.next_matrix(d, d));
        if (classify(c).invertible) return c;
      }
  }
  throw Error("unknown control kind");
}

ControlledFrame build_instance(CounterRng& rng, int d, int n, int m, ControlKind kind) {
  const SpacePtr space = make_space(rng, d, n);
  std::vector<Vector> vectors;
  for (int i = 0; i < m; ++i) vectors.push_back(rng.next_vector(d));
  FrameFamily frame(space, std::move(vectors));
  Operator control = make_control(rng, kind, frame_operator(frame));
  return ControlledFrame(std::move(frame), std::move(control));
}

ControlKind pick(CounterRng& rng, std::initializer_list<ControlKind> kinds) {
  return *(kinds.begin() + rng.next_int(0, static_cast<int>(kinds.size()) - 1));
}

ControlledFrame draw_cf(CounterRng& rng, std::initializer_list<ControlKind> kinds,
                        int max_d = 8, int max_n = 4) {
  const int d = rng.next_int(2, max_d);
  const int n = rng.next_int(2, std::min(max_n, d));
  const int df = d - (n - 1);
  const int m = rng.next_int(df, 2 * df + 4);
  return build_instance(rng, d, n, m, pick(rng, kinds));
}

constexpr std::initializer_list<ControlKind> kAllKinds = {
    ControlKind::identity,          ControlKind::scalar,
    ControlKind::diagonal_positive, ControlKind::random_positive,
    ControlKind::polynomial_in_SF,  ControlKind::random_invertible};
constexpr std::initializer_list<ControlKind> kPositiveKinds = {
    ControlKind::identity, ControlKind::scalar, ControlKind::diagonal_positive,
    ControlKind::random_positive, ControlKind::polynomial_in_SF};
// Kinds whose control commutes with S_F, making S_C self-adjoint positive:
// required by the duality, Parseval, and tensor-bound statements.
constexpr std::initializer_list<ControlKind> kCommutingKinds = {
    ControlKind::identity, ControlKind::scalar, ControlKind::polynomial_in_SF};
constexpr std::initializer_list<ControlKind> kScalarKinds = {ControlKind::identity,
                                                             ControlKind::scalar};

struct Trial {
  bool skipped = false;
  bool failed = false;
  double residual = 0.0;
};

double excess(double value, double bound) { return std::max(0.0, value - bound); }

Trial check_t35(CounterRng rng) {
  const ControlledFrame cf = draw_cf(rng, kPositiveKinds);
  const SynthesisNormReport r = synthesis_norm_check(cf);
  Trial t;
  // Adjoint entries scale with ||U||, so judge that residual relative to it.
  t.residual = std::max(r.adjoint_residual / (1.0 + r.synthesis_norm),
                        excess(r.synthesis_norm, r.predicted_bound) / (1.0 + r.predicted_bound));
  t.failed = !r.bound_holds || t.residual > 1e-8;
  return t;
}

Trial check_t36(CounterRng rng) {
  const ControlledFrame cf = draw_cf(rng, kPositiveKinds);
  if (controlled_bounds(cf).classification != ControlledClass::controlled_frame)
    return {true, false, 0.0};
  const FrameBounds predicted = controlled_to_frame_bounds(cf);
  const FrameBounds actual = optimal_bounds(cf.frame());
  Trial t;
  // Relative excess: ill-conditioned quotients can push the bounds to ~1e9,
  // where eigenvalue roundoff alone exceeds any absolute tolerance.
  t.residual = std::max(excess(predicted.lower, actual.lower) / (1.0 + predicted.lower),
                        excess(actual.upper, predicted.upper) / (1.0 + predicted.upper));
  t.failed = t.residual > 1e-8;
  return t;
}

// Restricted to commuting controls: the predicted lower bound is an
// eigenvalue statement about C^{1/2} S_F C^{1/2}, and for non-commuting C
// the Hermitian part of C S_F can dip below it.
Trial check_t37(CounterRng rng) {
  const ControlledFrame cf = draw_cf(rng, kCommutingKinds);
  if (!is_frame(optimal_bounds(cf.frame()))) return {true, false, 0.0};
  const ControlledBounds predicted = frame_to_controlled_bounds(cf.frame(), cf.control());
  const ControlledBounds actual = controlled_bounds(cf);
  Trial t;
  t.residual = std::max(excess(predicted.lower, actual.lower) / (1.0 + predicted.lower),
                        excess(actual.upper, predicted.upper) / (1.0 + predicted.upper));
  t.failed = t.residual > 1e-8;
  return t;
}

Trial check_t38(CounterRng rng) {
  const ControlledFrame cf = draw_cf(rng, kAllKinds);
  try {
    const ControlledFrame p = parsevalize(cf);
    const ControlledBounds b = controlled_bounds(p);
    const Vector f = rng.next_vector(p.frame().space()->quotient_dim());
    const double recon =
        (p.controlled_operator().mat * f - f).norm() / (1.0 + f.norm());
    Trial t;
    t.residual = std::max({std::abs(b.lower - 1.0), std::abs(b.upper - 1.0), recon});
    t.failed = std::abs(b.lower - 1.0) > 1e-8 || std::abs(b.upper - 1.0) > 1e-8 || recon > 1e-9;
    return t;
  } catch (const CommutationFailure&) {
    return {true, false, 0.0};
  } catch (const NotControlledFrame&) {
    return {true, false, 0.0};
  }
}

Trial check_t310(CounterRng rng) {
  const ControlledFrame cf = draw_cf(rng, kCommutingKinds);
  const FrameFamily dual = canonical_dual(cf);
  const int d = cf.frame().space()->quotient_dim();
  const Matrix& c = cf.control().mat;
  Matrix direct = Matrix::Zero(d, d);
  Matrix swapped = Matrix::Zero(d, d);
  for (int i = 0; i < cf.frame().size(); ++i) {
    direct += (c * cf.frame().projected()[i]) * dual.projected()[i].adjoint();
    swapped += (c * dual.projected()[i]) * cf.frame().projected()[i].adjoint();
  }
  const Matrix id = Matrix::Identity(d, d);
  Trial t;
  t.residual = std::max((direct - id).norm(), (swapped - id).norm());
  t.failed = t.residual > 1e-9;
  return t;
}

Trial check_r311(CounterRng rng) {
  const ControlledFrame cf = draw_cf(rng, kCommutingKinds);
  const double constant = dual_implies_frame_bound(cf, canonical_dual(cf));
  Trial t;
  t.residual = excess(constant, controlled_bounds(cf).lower);
  t.failed = t.residual > 1e-8;
  return t;
}

/// Family spanning only a proper subspace: every vector a combination of
/// d_F - 1 random quotient directions (all zero when d_F = 1).
ControlledFrame draw_deficient_cf(CounterRng& rng) {
  const int d = rng.next_int(2, 5);
  const int n = rng.next_int(2, std::min(3, d));
  const SpacePtr space = make_space(rng, d, n);
  const int df = space->quotient_dim();
  const int m = rng.next_int(std::max(1, df), 2 * df + 2);
  std::vector<Vector> vectors;
  if (df == 1) {
    for (int i = 0; i < m; ++i) vectors.push_back(Vector::Zero(df));
  } else {
    const Matrix basis = rng.next_matrix(df, df - 1);
    for (int i = 0; i < m; ++i) vectors.push_back(basis * rng.next_vector(df - 1));
  }
  FrameFamily frame = FrameFamily::from_quotient(space, std::move(vectors));
  Operator control = make_control(rng, pick(rng, kCommutingKinds), frame_operator(frame));
  return ControlledFrame(std::move(frame), std::move(control));
}

Trial check_t43(CounterRng rng, int trial) {
  ControlledFrame left = (trial % 2 == 0) ? draw_cf(rng, kCommutingKinds, 5, 3)
                                          : draw_deficient_cf(rng);
  ControlledFrame right = draw_cf(rng, kCommutingKinds, 5, 3);
  const TensorControlledFrame tcf(std::move(left), std::move(right));
  const FactorizationReport r = factorization_check(tcf, rng.next_u64());
  Trial t;
  t.failed = !r.iff_holds || (r.probes_used > 0 && !r.sampled_bounds_valid);
  return t;
}

Trial check_p44(CounterRng rng) {
  const TensorControlledFrame tcf(draw_cf(rng, kAllKinds, 5, 3), draw_cf(rng, kAllKinds, 5, 3));
  const Operator s = tensor_frame_operator(tcf);
  const Matrix via_kron =
      kron(tcf.left().controlled_operator().mat, tcf.right().controlled_operator().mat);
  Trial t;
  t.residual = (s.mat - via_kron).norm() / (1.0 + via_kron.norm());
  t.failed = t.residual > 1e-11;
  return t;
}

Trial check_p45(CounterRng rng) {
  const TensorControlledFrame tcf(draw_cf(rng, kCommutingKinds, 5, 3),
                                  draw_cf(rng, kCommutingKinds, 5, 3));
  const ControlledBounds b = tensor_controlled_bounds(tcf);
  const ControlledBounds lb = controlled_bounds(tcf.left());
  const ControlledBounds rb = controlled_bounds(tcf.right());
  Trial t;
  t.residual = std::max(excess(lb.lower * rb.lower, b.lower), excess(b.upper, lb.upper * rb.upper));
  t.failed = t.residual > 1e-9 * (1.0 + std::abs(lb.upper * rb.upper));
  return t;
}

Trial check_p46(CounterRng rng) {
  const TensorControlledFrame tcf(draw_cf(rng, kCommutingKinds, 5, 3),
                                  draw_cf(rng, kCommutingKinds, 5, 3));
  const Vector f = rng.next_vector(tcf.space().dim());
  const TensorReconstruction r = tensor_reconstruct(tcf, f);
  Trial t;
  t.residual = std::max(r.residual_dual, r.residual_inverse);
  t.failed = t.residual > 1e-9;
  return t;
}

ControlledFrame scale_family(const ControlledFrame& cf, double factor) {
  std::vector<Vector> scaled;
  scaled.reserve(cf.frame().size());
  for (const auto& v : cf.frame().ambient_vectors()) scaled.push_back(std::sqrt(factor) * v);
  return ControlledFrame(FrameFamily(cf.frame().space(), std::move(scaled)), cf.control());
}

Trial check_c47(CounterRng rng) {
  const ControlledFrame p1 = parsevalize(draw_cf(rng, kCommutingKinds, 5, 3));
  const ControlledFrame p2 = parsevalize(draw_cf(rng, kCommutingKinds, 5, 3));
  const double t1 = 0.5 + 2.0 * rng.next_double();
  const double t2 = 0.5 + 2.0 * rng.next_double();
  const TensorControlledFrame tcf(scale_family(p1, t1), scale_family(p2, t2));

  const Operator s = tensor_frame_operator(tcf);
  const int dim = tcf.space().dim();
  const double tight = t1 * t2;
  const double op_res =
      (s.mat - tight * Matrix::Identity(dim, dim)).norm() / (1.0 + tight);
  const Vector f = rng.next_vector(dim);
  const double recon_res = (s.mat * f / tight - f).norm() / (1.0 + f.norm());
  Trial t;
  t.residual = std::max(op_res, recon_res);
  t.failed = op_res > 1e-9 || recon_res > 1e-9;
  return t;
}

Matrix draw_singular(CounterRng& rng, int d) {
  if (d == 1) return Matrix::Zero(1, 1);
  return rng.next_matrix(d, d - 1) * rng.next_matrix(d - 1, d);
}

Trial check_t48(CounterRng rng, int trial) {
  const TensorControlledFrame tcf(draw_cf(rng, kScalarKinds, 5, 3),
                                  draw_cf(rng, kScalarKinds, 5, 3));
  const int d1 = tcf.left().frame().space()->quotient_dim();
  const int d2 = tcf.right().frame().space()->quotient_dim();
  const Operator u1(rng.next_matrix(d1, d1));
  const Operator u2((trial % 2 == 0) ? rng.next_matrix(d2, d2) : draw_singular(rng, d2));
  const ImageReport r = image_under_operator(tcf, u1, u2);
  Trial t;
  t.residual = r.conjugation_residual;
  t.failed = (r.image_class == ControlledClass::controlled_frame) != r.factors_invertible ||
             r.conjugation_residual > 1e-9 || (r.factors_invertible && !r.bounds_in_range);
  return t;
}

Trial check_t410(CounterRng rng) {
  const TensorControlledFrame tcf(draw_cf(rng, kCommutingKinds, 5, 3),
                                  draw_cf(rng, kCommutingKinds, 5, 3));
  Trial t;
  t.failed = !tensor_dual_check(tcf, canonical_dual(tcf.left()), canonical_dual(tcf.right()));
  return t;
}

Matrix draw_unitary(CounterRng& rng, int d) {
  return Matrix(Eigen::HouseholderQR<Matrix>(rng.next_matrix(d, d)).householderQ());
}

Trial check_t411(CounterRng rng) {
  const TensorControlledFrame tcf(draw_cf(rng, kScalarKinds, 5, 3),
                                  draw_cf(rng, kScalarKinds, 5, 3));
  const Operator u(draw_unitary(rng, tcf.left().frame().space()->quotient_dim()));
  const Operator v(draw_unitary(rng, tcf.right().frame().space()->quotient_dim()));
  Trial t;
  t.failed = !unitary_dual_transport(tcf, canonical_dual(tcf.left()),
                                     canonical_dual(tcf.right()), u, v);
  return t;
}

Trial check_t415(CounterRng rng, int trial) {
  if (trial % 2 == 0) {
    // Disjoint-support family: the shared index runs over the left vectors
    // (right component zero) and then the right vectors (left component zero).
    const int d1 = rng.next_int(2, 5);
    const int n1 = rng.next_int(2, std::min(3, d1));
    const SpacePtr s1 = make_space(rng, d1, n1);
    const int d2 = rng.next_int(2, 5);
    const int n2 = rng.next_int(2, std::min(3, d2));
    const SpacePtr s2 = make_space(rng, d2, n2);
    const int m1 = rng.next_int(s1->quotient_dim(), 2 * s1->quotient_dim() + 2);
    const int m2 = rng.next_int(s2->quotient_dim(), 2 * s2->quotient_dim() + 2);

    std::vector<Vector> left_vecs, right_vecs;
    for (int i = 0; i < m1; ++i) left_vecs.push_back(rng.next_vector(d1));
    for (int i = 0; i < m2; ++i) left_vecs.push_back(Vector::Zero(d1));
    for (int i = 0; i < m1; ++i) right_vecs.push_back(Vector::Zero(d2));
    for (int i = 0; i < m2; ++i) right_vecs.push_back(rng.next_vector(d2));

    FrameFamily lf(s1, std::move(left_vecs));
    FrameFamily rf(s2, std::move(right_vecs));
    Operator c1 = make_control(rng, pick(rng, kCommutingKinds), frame_operator(lf));
    Operator c2 = make_control(rng, pick(rng, kCommutingKinds), frame_operator(rf));
    const DirectSumFrame dsf(ControlledFrame(std::move(lf), std::move(c1)),
                             ControlledFrame(std::move(rf), std::move(c2)));
    const ControlledBounds b = dsum_controlled_bounds(dsf);
    Trial t;
    t.failed = b.classification != ControlledClass::controlled_frame;
    return t;
  }

  // Paired generic family: some basis-pair cross term is nonzero, so the
  // certificate must refuse.
  ControlledFrame left = draw_cf(rng, kPositiveKinds, 5, 3);
  ControlledFrame right = draw_cf(rng, kPositiveKinds, 5, 3);
  const DirectSumFrame dsf(std::move(left), std::move(right));
  Trial t;
  try {
    dsum_controlled_bounds(dsf);
    t.failed = true;
  } catch (const CrossTermViolation&) {
  }
  return t;
}

Trial run_trial(const std::string& id, uint64_t seed, int trial) {
  CounterRng rng = CounterRng::keyed(seed, id, static_cast<uint64_t>(trial));
  if (id == "T3.5") return check_t35(std::move(rng));
  if (id == "T3.6") return check_t36(std::move(rng));
  if (id == "T3.7") return check_t37(std::move(rng));
  if (id == "T3.8") return check_t38(std::move(rng));
  if (id == "T3.10") return check_t310(std::move(rng));
  if (id == "R3.11") return check_r311(std::move(rng));
  if (id == "T4.3") return check_t43(std::move(rng), trial);
  if (id == "P4.4") return check_p44(std::move(rng));
  if (id == "P4.5") return check_p45(std::move(rng));
  if (id == "P4.6") return check_p46(std::move(rng));
  if (id == "C4.7") return check_c47(std::move(rng));
  if (id == "T4.8") return check_t48(std::move(rng), trial);
  if (id == "T4.10") return check_t410(std::move(rng));
  if (id == "T4.11") return check_t411(std::move(rng));
  if (id == "T4.15") return check_t415(std::move(rng), trial);
  throw Error("unknown theorem id: " + id);
}

Trial run_trial_guarded(const std::string& id, uint64_t seed, int trial) {
  try {
    return run_trial(id, seed, trial);
  } catch (const std::exception&) {
    // Any unexpected throw counts as a failed trial with a sentinel residual.
    return {false, true, 1e300};
  }
}

std::vector<TheoremReport> run_impl(uint64_t seed, int trials, bool parallel) {
  if (trials < 1) throw Error("trials must be at least 1");
  std::vector<TheoremReport> reports;
  for (const std::string& id : theorem_ids()) {
    TheoremReport rep;
    rep.theorem_id = id;
    rep.trials = trials;
    int skipped = 0;
    int failures = 0;
    double worst = 0.0;
#if NHF_HAVE_OPENMP
#pragma omp parallel for reduction(+ : skipped, failures) reduction(max : worst) if (parallel)
#endif
    for (int trial = 0; trial < trials; ++trial) {
      const Trial t = run_trial_guarded(id, seed, trial);
      if (t.skipped) ++skipped;
      if (t.failed) ++failures;
      worst = std::max(worst, t.residual);
    }
    rep.failures = failures;
    rep.worst_residual = worst;
    if (failures > 0)
      rep.status = "fail";
    else if (skipped == trials)
      rep.status = "skipped_precondition";
    else
      rep.status = "pass";
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace

ControlledFrame generate(const InstanceSpec& spec) {
  CounterRng rng = CounterRng::keyed(spec.seed, "generate", 0);
  return build_instance(rng, spec.ambient_dim, spec.order, spec.family_size, spec.control_kind);
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "T3.5", "T3.6", "T3.7", "T3.8", "T3.10", "R3.11", "T4.3", "P4.4",
      "P4.5", "P4.6", "C4.7", "T4.8", "T4.10", "T4.11", "T4.15"};
  return ids;
}

std::vector<TheoremReport> run_suite(uint64_t seed, int trials) {
  return run_impl(seed, trials, true);
}

std::vector<TheoremReport> run_suite_serial(uint64_t seed, int trials) {
  return run_impl(seed, trials, false);
}

}  // namespace nhf
