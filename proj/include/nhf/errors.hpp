#ifndef NHF_ERRORS_HPP
#define NHF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nhf {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& msg) : Error("length mismatch: " + msg) {}
};

struct DegenerateAnchors : Error {
  explicit DegenerateAnchors(const std::string& msg) : Error("degenerate anchors: " + msg) {}
};

struct NumericalNegativity : Error {
  explicit NumericalNegativity(const std::string& msg) : Error("numerical negativity: " + msg) {}
};

struct NotPositive : Error {
  explicit NotPositive(const std::string& msg) : Error("operator not positive: " + msg) {}
};

struct Singular : Error {
  explicit Singular(const std::string& msg) : Error("operator singular: " + msg) {}
};

struct NotTight : Error {
  explicit NotTight(const std::string& msg) : Error("frame not tight: " + msg) {}
};

struct NotControlledFrame : Error {
  explicit NotControlledFrame(const std::string& msg) : Error("not a controlled frame: " + msg) {}
};

struct CommutationFailure : Error {
  explicit CommutationFailure(const std::string& msg) : Error("commutation hypothesis fails: " + msg) {}
};

struct NotUnitary : Error {
  explicit NotUnitary(const std::string& msg) : Error("operator not unitary: " + msg) {}
};

struct CrossTermViolation : Error {
  explicit CrossTermViolation(const std::string& msg) : Error("cross-term condition fails: " + msg) {}
};

}  // namespace nhf

#endif
