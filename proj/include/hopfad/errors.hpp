#pragma once

#include <stdexcept>
#include <string>

namespace hopfad {

// Base class for every error raised by the library.  CLI maps these to exit
// code 3 unless a specific handler turns them into report entries.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& msg = "division by zero") : Error(msg) {}
};

// Mixing scalars from incompatible fields (e.g. F_5 with F_7).
struct FieldMismatch : Error {
  explicit FieldMismatch(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Combining modules that live over different algebras.
struct AlgebraMismatch : Error {
  explicit AlgebraMismatch(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

// Requested primitive n-th root of unity does not exist in the field.
struct NoSuchRoot : Error {
  explicit NoSuchRoot(const std::string& msg) : Error(msg) {}
};

// Constructor precondition on the field characteristic fails (e.g. char 2).
struct BadCharacteristic : Error {
  explicit BadCharacteristic(const std::string& msg) : Error(msg) {}
};

// Multiplication table fails the group axioms.
struct NotAGroup : Error {
  explicit NotAGroup(const std::string& msg) : Error(msg) {}
};

// Structure tensors have inconsistent dimensions.
struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};

// Coradical-type computations are only implemented in characteristic zero;
// positive-characteristic built-ins carry constructor certificates instead.
struct UnsupportedCharacteristic : Error {
  explicit UnsupportedCharacteristic(const std::string& msg) : Error(msg) {}
};

// Computation not implemented over the given field (no certificate available).
struct UnsupportedField : Error {
  explicit UnsupportedField(const std::string& msg) : Error(msg) {}
};

// Scalar extension target does not contain the current field.
struct UnsupportedExtension : Error {
  explicit UnsupportedExtension(const std::string& msg) : Error(msg) {}
};

// An operation's documented precondition was violated by the caller.
struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};

// Straightening met data outside the closure hypotheses (witness in message).
struct HypothesisViolated : Error {
  explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

// Products escaped the representable window of a group-algebra ambient.
struct WindowOverflow : Error {
  explicit WindowOverflow(const std::string& msg) : Error(msg) {}
};

// A generator action was asked for a key outside its finite support rules.
struct ActionNotComputable : Error {
  explicit ActionNotComputable(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_ = 0, int column_ = 0)
      : Error(msg + (line_ ? " (line " + std::to_string(line_) +
                                 ", column " + std::to_string(column_) + ")"
                           : "")),
        line(line_), column(column_) {}
};

}  // namespace hopfad
