#ifndef NHF_FRAMESPEC_HPP
#define NHF_FRAMESPEC_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhf/controlled.hpp"
#include "nhf/propcheck.hpp"

namespace nhf {

using Json = nlohmann::ordered_json;

/// Control operator as written in a spec file; realized on the quotient
/// space once its dimension is known.
struct ControlSpec {
  enum class Kind { identity, scalar, diag, matrix } kind = Kind::identity;
  Cx scalar = 1.0;
  std::vector<Cx> diag;
  Matrix matrix;

  Operator realize(int quotient_dim) const;
};

/// One frame block: ambient data plus a control description.
struct FrameBlock {
  int dim = 0;
  int order = 0;
  std::vector<Vector> anchors;
  std::vector<Vector> vectors;
  ControlSpec control;

  ControlledFrame build() const;
};

/// Whole spec file: a primary block and, for tensor/dsum commands, an
/// optional second block (fields dim2/order2/anchors2/vectors2/control2;
/// dim2/order2 default to the primary values).
struct FrameSpecFile {
  FrameBlock primary;
  std::optional<FrameBlock> secondary;
};

/// Parses and validates; throws Error with a field-anchored message on any
/// malformed or inconsistent input.
FrameSpecFile parse_frame_spec(const Json& j);
FrameSpecFile load_frame_spec(const std::string& path);

Json frame_block_to_json(const FrameBlock& block);
Json frame_spec_to_json(const FrameSpecFile& spec);

/// Spec block describing `family` in its own ambient coordinates (anchors
/// from the quotient space, vectors as the ambient representatives).
FrameBlock block_from_family(const FrameFamily& family, const ControlSpec& control);

Json report_to_json(const TheoremReport& report);
Json reports_to_json(const std::vector<TheoremReport>& reports);

}  // namespace nhf

#endif
