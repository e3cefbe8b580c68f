#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smallholes/common.hpp"

namespace smallholes {

/// Real one-sided DFT: returns c_k = (1/M) sum_j x_j e^{-2 pi i jk/M}, k = 0..M/2.
std::vector<Complex> real_fourier_coefficients(std::span<const double> samples);

/// Uniform trapezoid mean (1/M) sum_j x_j; spectrally accurate for periodic data.
double periodic_mean(std::span<const double> samples);

/// Angle of sample j out of m on the circle.
inline double sample_angle(std::size_t j, std::size_t m) {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(m);
}

/// A periodic function on a parametrized boundary, held as M uniform samples
/// theta_j = 2 pi j / M together with its Fourier coefficients.
///
/// The samples refer to the mapped-circle parametrization of the boundary
/// they belong to: for an inclusion, theta is the angle of T(Y) on the unit
/// circle; for the outer boundary, the angle of T0(y).
class BoundaryFunction {
 public:
  BoundaryFunction() = default;

  /// M must be a power of two, at least 32.
  static BoundaryFunction from_samples(std::vector<double> samples,
                                       int boundary_id = kOuterBoundary);

  static BoundaryFunction sample(std::size_t m,
                                 const std::function<double(double)>& f,
                                 int boundary_id = kOuterBoundary);

  static BoundaryFunction zeros(std::size_t m, int boundary_id = kOuterBoundary);

  std::size_t size() const { return samples_.size(); }
  int boundary_id() const { return boundary_id_; }
  const std::vector<double>& samples() const { return samples_; }
  /// One-sided coefficients, k = 0..M/2.
  const std::vector<Complex>& fourier() const { return fourier_; }
  double sup_norm() const { return sup_norm_; }
  double mean() const { return periodic_mean(samples_); }
  double angle(std::size_t j) const { return sample_angle(j, size()); }

  /// Trigonometric interpolant at an arbitrary angle.
  double value_at(double theta) const;

  /// Largest |c_k| for k > M/4; large values mean the data is undersampled.
  double high_frequency_content() const;
  bool under_resolved(double rel_tol = 1e-6) const {
    return high_frequency_content() > rel_tol * sup_norm_;
  }

  BoundaryFunction& operator+=(const BoundaryFunction& other);
  BoundaryFunction& operator*=(double s);

 private:
  std::vector<double> samples_;
  std::vector<Complex> fourier_;
  double sup_norm_ = 0.0;
  int boundary_id_ = kOuterBoundary;
};

BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b);
BoundaryFunction operator*(double s, BoundaryFunction a);

}  // namespace smallholes
