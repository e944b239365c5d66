#include "nhf/framespec.hpp"

#include <fstream>

namespace nhf {

namespace {

Cx parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(where + ": complex values must be [re, im] pairs");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

Vector parse_vector(const Json& j, int dim, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected an array");
  if (static_cast<int>(j.size()) != dim)
    throw Error(where + ": expected " + std::to_string(dim) + " entries, got " +
                std::to_string(j.size()));
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = parse_complex(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

ControlSpec parse_control(const Json& j, const std::string& where) {
  ControlSpec c;
  if (j.is_string()) {
    if (j.get<std::string>() != "identity")
      throw Error(where + ": unknown control string \"" + j.get<std::string>() + "\"");
    c.kind = ControlSpec::Kind::identity;
    return c;
  }
  if (!j.is_object() || j.size() != 1)
    throw Error(where + ": control must be \"identity\" or a one-key object");
  if (j.contains("scalar")) {
    c.kind = ControlSpec::Kind::scalar;
    c.scalar = parse_complex(j["scalar"], where + ".scalar");
    return c;
  }
  if (j.contains("diag")) {
    c.kind = ControlSpec::Kind::diag;
    if (!j["diag"].is_array()) throw Error(where + ".diag: expected an array");
    for (size_t i = 0; i < j["diag"].size(); ++i)
      c.diag.push_back(parse_complex(j["diag"][i], where + ".diag[" + std::to_string(i) + "]"));
    return c;
  }
  if (j.contains("matrix")) {
    c.kind = ControlSpec::Kind::matrix;
    const Json& rows = j["matrix"];
    if (!rows.is_array() || rows.empty()) throw Error(where + ".matrix: expected rows");
    const int n = static_cast<int>(rows.size());
    c.matrix = Matrix(n, n);
    for (int i = 0; i < n; ++i)
      c.matrix.row(i) =
          parse_vector(rows[i], n, where + ".matrix[" + std::to_string(i) + "]").transpose();
    return c;
  }
  throw Error(where + ": control key must be scalar, diag, or matrix");
}

FrameBlock parse_block(const Json& j, const std::string& suffix, int default_dim,
                       int default_order) {
  FrameBlock b;
  b.dim = j.contains("dim" + suffix) ? j["dim" + suffix].get<int>() : default_dim;
  b.order = j.contains("order" + suffix) ? j["order" + suffix].get<int>() : default_order;
  if (b.dim < 2) throw Error("dim" + suffix + ": must be at least 2");
  if (b.order < 2 || b.order > b.dim)
    throw Error("order" + suffix + ": must lie in [2, dim]");

  const std::string akey = "anchors" + suffix;
  const std::string vkey = "vectors" + suffix;
  if (!j.contains(akey) || !j[akey].is_array())
    throw Error(akey + ": missing or not an array");
  if (static_cast<int>(j[akey].size()) != b.order - 1)
    throw Error(akey + ": expected " + std::to_string(b.order - 1) + " anchors");
  for (size_t i = 0; i < j[akey].size(); ++i)
    b.anchors.push_back(parse_vector(j[akey][i], b.dim, akey + "[" + std::to_string(i) + "]"));

  if (!j.contains(vkey) || !j[vkey].is_array() || j[vkey].empty())
    throw Error(vkey + ": missing or empty");
  for (size_t i = 0; i < j[vkey].size(); ++i)
    b.vectors.push_back(parse_vector(j[vkey][i], b.dim, vkey + "[" + std::to_string(i) + "]"));

  const std::string ckey = "control" + suffix;
  if (j.contains(ckey)) b.control = parse_control(j[ckey], ckey);
  return b;
}

Json complex_to_json(const Cx& z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Json control_to_json(const ControlSpec& c) {
  switch (c.kind) {
    case ControlSpec::Kind::identity:
      return Json("identity");
    case ControlSpec::Kind::scalar:
      return Json{{"scalar", complex_to_json(c.scalar)}};
    case ControlSpec::Kind::diag: {
      Json d = Json::array();
      for (const Cx& z : c.diag) d.push_back(complex_to_json(z));
      return Json{{"diag", d}};
    }
    case ControlSpec::Kind::matrix: {
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < c.matrix.rows(); ++i)
        rows.push_back(vector_to_json(c.matrix.row(i).transpose()));
      return Json{{"matrix", rows}};
    }
  }
  throw Error("unknown control kind");
}

}  // namespace

Operator ControlSpec::realize(int quotient_dim) const {
  switch (kind) {
    case Kind::identity:
      return Operator::identity(quotient_dim);
    case Kind::scalar:
      return Operator(Matrix(scalar * Matrix::Identity(quotient_dim, quotient_dim)));
    case Kind::diag: {
      if (static_cast<int>(diag.size()) != quotient_dim)
        throw Error("control.diag: expected " + std::to_string(quotient_dim) +
                    " entries for the quotient dimension");
      Matrix m = Matrix::Zero(quotient_dim, quotient_dim);
      for (int i = 0; i < quotient_dim; ++i) m(i, i) = diag[i];
      return Operator(std::move(m));
    }
    case Kind::matrix:
      if (matrix.rows() != quotient_dim)
        throw Error("control.matrix: expected size " + std::to_string(quotient_dim) +
                    " for the quotient dimension");
      return Operator(matrix);
  }
  throw Error("unknown control kind");
}

ControlledFrame FrameBlock::build() const {
  AnchorSet anchor_set(order, anchors);
  SpacePtr space = build_quotient(anchor_set, dim);
  FrameFamily family(space, vectors);
  return ControlledFrame(std::move(family), control.realize(space->quotient_dim()));
}

FrameSpecFile parse_frame_spec(const Json& j) {
  if (!j.is_object()) throw Error("top level: expected an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw Error("dim: missing integer");
  if (!j.contains("order") || !j["order"].is_number_integer())
    throw Error("order: missing integer");
  FrameSpecFile spec;
  spec.primary = parse_block(j, "", j["dim"].get<int>(), j["order"].get<int>());
  if (j.contains("anchors2") || j.contains("vectors2"))
    spec.secondary = parse_block(j, "2", spec.primary.dim, spec.primary.order);
  return spec;
}

FrameSpecFile load_frame_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  return parse_frame_spec(j);
}

Json frame_block_to_json(const FrameBlock& block) {
  Json j;
  j["dim"] = block.dim;
  j["order"] = block.order;
  j["anchors"] = Json::array();
  for (const auto& a : block.anchors) j["anchors"].push_back(vector_to_json(a));
  j["vectors"] = Json::array();
  for (const auto& v : block.vectors) j["vectors"].push_back(vector_to_json(v));
  j["control"] = control_to_json(block.control);
  return j;
}

Json frame_spec_to_json(const FrameSpecFile& spec) {
  Json j = frame_block_to_json(spec.primary);
  if (spec.secondary) {
    const Json s = frame_block_to_json(*spec.secondary);
    j["dim2"] = s["dim"];
    j["order2"] = s["order"];
    j["anchors2"] = s["anchors"];
    j["vectors2"] = s["vectors"];
    j["control2"] = s["control"];
  }
  return j;
}

FrameBlock block_from_family(const FrameFamily& family, const ControlSpec& control) {
  FrameBlock b;
  b.dim = family.space()->ambient_dim();
  b.order = family.space()->anchor_set().order();
  b.anchors = family.space()->anchor_set().anchors();
  b.vectors = family.ambient_vectors();
  b.control = control;
  return b;
}

Json report_to_json(const TheoremReport& report) {
  Json j;
  j["theorem_id"] = report.theorem_id;
  j["trials"] = report.trials;
  j["failures"] = report.failures;
  j["worst_residual"] = report.worst_residual;
  j["status"] = report.status;
  return j;
}

Json reports_to_json(const std::vector<TheoremReport>& reports) {
  Json j = Json::array();
  for (const auto& r : reports) j.push_back(report_to_json(r));
  return j;
}

}  // namespace nhf
