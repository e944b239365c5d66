#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhf/framespec.hpp"

using namespace nhf;

namespace {

Json onb_spec() {
  return Json::parse(R"({
    "dim": 3,
    "order": 2,
    "anchors": [[[0,0],[0,0],[1,0]]],
    "vectors": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]]],
    "control": "identity"
  })");
}

}  // namespace

TEST_CASE("parse and build a simple spec") {
  const FrameSpecFile spec = parse_frame_spec(onb_spec());
  CHECK(spec.primary.dim == 3);
  CHECK(spec.primary.order == 2);
  CHECK(spec.primary.anchors.size() == 1);
  CHECK(spec.primary.vectors.size() == 2);
  CHECK_FALSE(spec.secondary.has_value());

  const ControlledFrame cf = spec.primary.build();
  CHECK(cf.frame().space()->quotient_dim() == 2);
  const ControlledBounds b = controlled_bounds(cf);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(1.0));
}

TEST_CASE("control variants") {
  Json j = onb_spec();
  j["control"] = Json{{"scalar", Json::array({2.0, 0.0})}};
  CHECK((parse_frame_spec(j).primary.control.realize(2).mat -
         2.0 * Matrix::Identity(2, 2))
            .norm() < 1e-15);

  j["control"] = Json{{"diag", Json::array({1.0, 3.0})}};
  const Matrix d = parse_frame_spec(j).primary.control.realize(2).mat;
  CHECK(std::abs(d(0, 0) - Cx(1.0)) < 1e-15);
  CHECK(std::abs(d(1, 1) - Cx(3.0)) < 1e-15);

  j["control"] = Json{{"matrix", Json::array({Json::array({Json::array({1.0, 0.0}),
                                                           Json::array({0.0, 1.0})}),
                                              Json::array({Json::array({0.0, -1.0}),
                                                           Json::array({2.0, 0.0})})})}};
  const Matrix m = parse_frame_spec(j).primary.control.realize(2).mat;
  CHECK(std::abs(m(0, 1) - Cx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(m(1, 0) - Cx(0.0, -1.0)) < 1e-15);

  // Wrong-sized diag is rejected at realization time.
  j["control"] = Json{{"diag", Json::array({1.0})}};
  CHECK_THROWS_AS(parse_frame_spec(j).primary.control.realize(2), Error);
}

TEST_CASE("malformed inputs produce anchored errors") {
  Json j = onb_spec();
  j["vectors"][0][1] = Json::array({1.0});  // bad complex pair
  CHECK_THROWS_WITH_AS(parse_frame_spec(j), doctest::Contains("vectors[0][1]"), Error);

  j = onb_spec();
  j.erase("anchors");
  CHECK_THROWS_AS(parse_frame_spec(j), Error);

  j = onb_spec();
  j["order"] = 5;  // order may not exceed dim
  CHECK_THROWS_AS(parse_frame_spec(j), Error);

  j = onb_spec();
  j["control"] = "banana";
  CHECK_THROWS_AS(parse_frame_spec(j), Error);
}

TEST_CASE("two-block specs") {
  Json j = onb_spec();
  j["dim2"] = 3;
  j["order2"] = 2;
  j["anchors2"] = j["anchors"];
  j["vectors2"] = j["vectors"];
  j["control2"] = Json{{"scalar", Json::array({3.0, 0.0})}};
  const FrameSpecFile spec = parse_frame_spec(j);
  REQUIRE(spec.secondary.has_value());
  CHECK(spec.secondary->dim == 3);
  CHECK((spec.secondary->control.realize(2).mat - 3.0 * Matrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("serialization round trip") {
  const FrameSpecFile spec = parse_frame_spec(onb_spec());
  const Json out = frame_spec_to_json(spec);
  const FrameSpecFile back = parse_frame_spec(out);
  CHECK(back.primary.dim == spec.primary.dim);
  CHECK(back.primary.order == spec.primary.order);
  REQUIRE(back.primary.vectors.size() == spec.primary.vectors.size());
  for (size_t i = 0; i < back.primary.vectors.size(); ++i)
    CHECK((back.primary.vectors[i] - spec.primary.vectors[i]).norm() == 0.0);
  // Byte-identical reserialization.
  CHECK(frame_spec_to_json(back).dump() == out.dump());
}

TEST_CASE("block_from_family") {
  const FrameSpecFile spec = parse_frame_spec(onb_spec());
  const ControlledFrame cf = spec.primary.build();
  const FrameBlock block = block_from_family(cf.frame(), spec.primary.control);
  CHECK(block.dim == 3);
  CHECK(block.order == 2);
  CHECK(block.vectors.size() == 2);
  const ControlledFrame rebuilt = block.build();
  CHECK((controlled_frame_operator(rebuilt).mat - controlled_frame_operator(cf).mat).norm() <
        1e-10);
}

TEST_CASE("theorem report serialization") {
  TheoremReport r;
  r.theorem_id = "T3.6";
  r.trials = 50;
  r.failures = 0;
  r.worst_residual = 1.25e-12;
  r.status = "pass";
  const Json j = report_to_json(r);
  CHECK(j["theorem_id"] == "T3.6");
  CHECK(j["trials"] == 50);
  CHECK(j["failures"] == 0);
  CHECK(j["worst_residual"] == 1.25e-12);
  CHECK(j["status"] == "pass");

  const Json arr = reports_to_json({r, r});
  CHECK(arr.size() == 2);
  // Deterministic text output.
  CHECK(reports_to_json({r, r}).dump() == arr.dump());
}
