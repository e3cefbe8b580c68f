#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smallholes {

/// The plane is identified with C through (x1, x2) = x1 + i x2.
using Complex = std::complex<double>;
using Point = Complex;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Boundary id of the outer boundary; inclusions use their index 0..N-1.
inline constexpr int kOuterBoundary = -1;

/// Default number of boundary samples per boundary component.
inline constexpr int kDefaultSamples = 256;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the set where a field or map is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inclusions touching the outer boundary, overlapping, or badly separated.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// The logarithmic scale w(x_eps) - ln(eps) is (numerically) zero.
class ScaleDegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A series fit (conformal map) did not reach its residual target.
class FitError : public Error {
 public:
  FitError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Ill-conditioned linear algebra or a refused reference solve.
class NumericalError : public Error {
 public:
  using Error::Error;
};

inline double dist(Point a, Point b) { return std::abs(a - b); }

}  // namespace smallholes
