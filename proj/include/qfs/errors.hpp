#pragma once

#include <stdexcept>
#include <string>

namespace qfs {

/// Raised when an input record is malformed (bad rational syntax, ragged
/// matrix, non-symmetric Gram, size mismatch).  CLI maps this to exit 1.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A typed mathematical refusal: the request is well-formed but the math says
/// no (singular pencil member, factor degree cap, ...).  CLI maps this to
/// exit 2.
struct MathError : std::runtime_error {
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

/// No rational combination of the system's forms is unimodular, so pencil
/// operations that need an invertible member cannot proceed.
struct NoUnimodularCombination : MathError {
  explicit NoUnimodularCombination(const std::string& what) : MathError(what) {}
};

/// Univariate factorization is capped (degree 16); inputs beyond the cap are
/// refused rather than silently mis-factored.
struct DegreeCapExceeded : MathError {
  explicit DegreeCapExceeded(const std::string& what) : MathError(what) {}
};

/// An internal invariant failed; this always signals a bug, never bad input.
/// CLI maps this to exit 3.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qfs
