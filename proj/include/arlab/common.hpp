#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace arlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Input/contract violations (bad arguments, malformed files). CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures of the engine (non-convergence, collisions, branch
// points, exhausted refinement). CLI exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Tolerance block shared by the continuation machinery. All values are
// absolute unless a caller documents otherwise.
struct Tolerances {
  double root_residual = 1e-12;  // normalized polynomial residual target
  double closure = 1e-9;         // endpoint matching / loop closure
  double collision = 1e-6;       // minimum separation from bad sets
  double zero_guard = 1e-12;     // division / radicand magnitude guard
};

inline bool nearly_equal(cplx a, cplx b, double tol) {
  return std::abs(a - b) <= tol;
}

}  // namespace arlab
