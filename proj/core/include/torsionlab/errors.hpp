#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed or out-of-domain input (shape mismatch, non-finite entries, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A matrix was singular to working precision where an inverse-like
/// operation was requested. Carries the smallest singular value observed.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& message, double smallest_singular_value)
      : Error(message), smallest_singular_value_(smallest_singular_value) {}
  double smallest_singular_value() const { return smallest_singular_value_; }

 private:
  double smallest_singular_value_;
};

/// Evaluation requested at (or too close to) a pole of a meromorphic
/// continuation. Carries the pole location and its residue.
class PoleError : public Error {
 public:
  PoleError(const std::string& message, double location, double residue)
      : Error(message), location_(location), residue_(residue) {}
  double location() const { return location_; }
  double residue() const { return residue_; }

 private:
  double location_;
  double residue_;
};

/// An edge cocycle failed the flatness condition on some 2-simplex.
class FlatnessError : public Error {
 public:
  FlatnessError(const std::string& message, int a, int b, int c)
      : Error(message), a_(a), b_(b), c_(c) {}
  int triangle_a() const { return a_; }
  int triangle_b() const { return b_; }
  int triangle_c() const { return c_; }

 private:
  int a_, b_, c_;
};

/// An operation's mathematical precondition does not hold (e.g. a
/// non-acyclic complex passed where acyclicity is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A chain complex or simplicial complex violates a structural invariant.
/// Carries the degree at which the violation was detected (-1 if global).
class StructuralError : public Error {
 public:
  StructuralError(const std::string& message, int degree = -1)
      : Error(message), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// A structured text document could not be parsed. The context string
/// names the offending key or position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, const std::string& context)
      : Error(message + " [" + context + "]"), context_(context) {}
  const std::string& context() const { return context_; }

 private:
  std::string context_;
};

/// The requested operation is not defined for this kind of input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace torsionlab
