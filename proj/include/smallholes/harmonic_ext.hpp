#pragma once

#include <memory>
#include <vector>

#include "smallholes/conformal.hpp"
#include "smallholes/fourier.hpp"

namespace smallholes {

/// Bounded harmonic function in the exterior of an inclusion omega with
/// prescribed trace F on the boundary. Represented in mapped coordinates
/// w = T(X) as the real part of
///   psi0 + sum_{k>=1} d_k w^{-k}.
class HarmonicExteriorField {
 public:
  double psi0() const { return psi0_; }
  /// d_k, k = 1..M/2 (index 0 unused, always 0).
  const std::vector<Complex>& coeffs() const { return d_; }
  /// Coefficients c_k, k >= 2, of the derivative series
  /// d/dw (field) = sum_k c_k w^{-k}; c_{k+1} = -k d_k. Index k holds c_k.
  std::vector<Complex> derivative_coeffs() const;
  int order() const { return static_cast<int>(d_.size()) - 1; }
  double sup_norm() const { return sup_norm_; }
  bool resolution_warning() const { return resolution_warning_; }
  const ExteriorMap& map() const { return *map_; }

  /// Value at an exterior point X (boundary points accepted).
  double operator()(Point X) const;
  /// Value at a mapped point w, |w| >= 1.
  double at_mapped(Complex w) const;
  /// Gradient (d/dX1, d/dX2) stored as a complex number.
  Complex gradient(Point X) const;

 private:
  friend HarmonicExteriorField solve_exterior(std::shared_ptr<const ExteriorMap>,
                                              const BoundaryFunction&);
  std::shared_ptr<const ExteriorMap> map_;
  double psi0_ = 0.0;
  std::vector<Complex> d_;
  double sup_norm_ = 0.0;
  bool resolution_warning_ = false;
};

HarmonicExteriorField solve_exterior(std::shared_ptr<const ExteriorMap> map,
                                     const BoundaryFunction& F);

/// (1/2pi) int_0^{2pi} F(gamma(theta)) d theta by the trapezoid rule.
double psi0_of(const ExteriorMap& map, const BoundaryFunction& F);

double evaluate_exterior(const HarmonicExteriorField& field, Point X);

/// sup over 256 points of |X| = radius of |X|^n |Re sum_{k>=n} d_k T(X)^{-k}|.
double tail_sup(const HarmonicExteriorField& field, int n, double radius);

/// (1/2 pi i) oint psi_hat(T(z)) / z dz on |z| = 2 R, trapezoid rule.
Complex contour_mean_check(const HarmonicExteriorField& field);

/// Samples F(gamma(theta_j)) for a function of the physical boundary point.
template <class Fn>
BoundaryFunction sample_on_inclusion(const ExteriorMap& map, std::size_t m, Fn&& f,
                                     int boundary_id = 0) {
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = f(map.boundary_point(sample_angle(j, m)));
  return BoundaryFunction::from_samples(std::move(s), boundary_id);
}

}  // namespace smallholes
