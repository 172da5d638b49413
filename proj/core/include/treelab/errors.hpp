#pragma once

#include <stdexcept>
#include <string>

namespace treelab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidVertex : public Error { using Error::Error; };
class InvalidAlphabet : public Error { using Error::Error; };
class InvalidAutomorphism : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class WrongWitness : public Error { using Error::Error; };
class ReachViolation : public Error { using Error::Error; };
class DegenerateWindow : public Error { using Error::Error; };
class DimensionMismatch : public Error { using Error::Error; };
class InvalidInput : public Error { using Error::Error; };
class NumericalInconsistency : public Error { using Error::Error; };

/// Raised when a Newton solve does not reach the optimality tolerance.
class SolverFailure : public Error {
public:
  SolverFailure(const std::string& what, int iterations, double gradient_norm)
      : Error(what), iterations_(iterations), gradient_norm_(gradient_norm) {}
  int iterations() const { return iterations_; }
  double gradient_norm() const { return gradient_norm_; }

private:
  int iterations_;
  double gradient_norm_;
};

} // namespace treelab
