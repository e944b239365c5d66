#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhf/propcheck.hpp"
#include "nhf/rng.hpp"

using namespace nhf;

TEST_CASE("counter rng is keyed and order independent") {
  CounterRng a = CounterRng::keyed(0, "label", 3);
  CounterRng b = CounterRng::keyed(0, "label", 3);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_double() == b.next_double());

  CounterRng c = CounterRng::keyed(0, "label", 4);
  CounterRng d = CounterRng::keyed(0, "other", 3);
  CounterRng e = CounterRng::keyed(1, "label", 3);
  const uint64_t base = CounterRng::keyed(0, "label", 3).next_u64();
  CHECK(c.next_u64() != base);
  CHECK(d.next_u64() != base);
  CHECK(e.next_u64() != base);
}

TEST_CASE("rng draws are in range") {
  CounterRng rng = CounterRng::keyed(5, "ranges", 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const int k = rng.next_int(3, 7);
    CHECK(k >= 3);
    CHECK(k <= 7);
  }
}

TEST_CASE("generate is deterministic and honors the control kind") {
  InstanceSpec spec;
  spec.seed = 42;
  spec.ambient_dim = 5;
  spec.order = 3;
  spec.family_size = 6;
  spec.control_kind = ControlKind::random_positive;

  const ControlledFrame a = generate(spec);
  const ControlledFrame b = generate(spec);
  CHECK((a.control().mat - b.control().mat).norm() == 0.0);
  REQUIRE(a.frame().size() == b.frame().size());
  for (int i = 0; i < a.frame().size(); ++i)
    CHECK((a.frame().ambient_vectors()[i] - b.frame().ambient_vectors()[i]).norm() == 0.0);
  CHECK(classify(a.control()).positive);

  spec.control_kind = ControlKind::identity;
  const ControlledFrame id = generate(spec);
  CHECK((id.control().mat - Matrix::Identity(3, 3)).norm() == 0.0);

  spec.control_kind = ControlKind::polynomial_in_SF;
  const ControlledFrame poly = generate(spec);
  CHECK(commutes(poly.control(), poly.plain_operator()));
  CHECK(classify(poly.control()).positive);
}

TEST_CASE("run_suite covers every statement once and rejects bad trial counts") {
  CHECK_THROWS_AS(run_suite(0, 0), Error);

  const auto reports = run_suite(0, 3);
  REQUIRE(reports.size() == theorem_ids().size());
  for (size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].theorem_id == theorem_ids()[i]);
    CHECK(reports[i].trials == 3);
    CHECK(reports[i].failures <= reports[i].trials);
  }
}

TEST_CASE("suite passes and parallel equals serial") {
  const auto parallel = run_suite(0, 10);
  const auto serial = run_suite_serial(0, 10);
  REQUIRE(parallel.size() == serial.size());
  for (size_t i = 0; i < parallel.size(); ++i) {
    INFO(parallel[i].theorem_id);
    CHECK(parallel[i].status == "pass");
    CHECK(serial[i].status == parallel[i].status);
    CHECK(serial[i].failures == parallel[i].failures);
    CHECK(serial[i].worst_residual == parallel[i].worst_residual);
  }

  // Repeatability of the parallel path.
  const auto again = run_suite(0, 10);
  for (size_t i = 0; i < parallel.size(); ++i)
    CHECK(again[i].worst_residual == parallel[i].worst_residual);
}
