#pragma once

#include <memory>
#include <vector>

#include "smallholes/conformal.hpp"
#include "smallholes/fourier.hpp"

namespace smallholes {

/// Harmonic extension G[phi] into Omega0. In mapped coordinates w = T0(x)
/// the field is Re g(w) with g(w) = sum_{k>=0} g_k w^k.
class HarmonicInteriorField {
 public:
  /// g_k, k = 0..M/2.
  const std::vector<Complex>& coeffs() const { return g_; }
  double sup_norm() const { return sup_norm_; }
  const InteriorMap& domain() const { return *domain_; }

  /// Value at x in the closure of Omega0; throws DomainError outside.
  double operator()(Point x) const;
  double at_mapped(Complex w) const;
  /// Gradient (d/dx1, d/dx2) stored as a complex number.
  Complex gradient(Point x) const;

 private:
  friend HarmonicInteriorField solve_interior(std::shared_ptr<const InteriorMap>,
                                              const BoundaryFunction&);
  std::shared_ptr<const InteriorMap> domain_;
  std::vector<Complex> g_;
  double sup_norm_ = 0.0;
};

HarmonicInteriorField solve_interior(std::shared_ptr<const InteriorMap> domain,
                                     const BoundaryFunction& phi);

double evaluate_interior(const HarmonicInteriorField& field, Point x);
Complex evaluate_gradient(const HarmonicInteriorField& field, Point x);

/// Samples phi(gamma0(theta_j)) for a function of the physical boundary point.
template <class Fn>
BoundaryFunction sample_on_outer(const InteriorMap& domain, std::size_t m, Fn&& f) {
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = f(domain.boundary_point(sample_angle(j, m)));
  return BoundaryFunction::from_samples(std::move(s), kOuterBoundary);
}

}  // namespace smallholes
