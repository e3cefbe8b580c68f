#pragma once

#include <memory>

#include "smallholes/harmonic_int.hpp"

namespace smallholes {

/// Lifting profile of one inclusion omega_eps = center + eps omega:
///   ell(x)  = ln |T_eps(x)|,
///   w       = G[ln beta |. - center|],
///   corr(x) = ell(x) - w(x),
///   h_eps   = 1 / (w(center) - ln eps).
struct Profile {
  int inclusion_index = 0;
  Point center = 0.0;
  double eps = 0.0;
  double beta = 1.0;
  std::shared_ptr<const ExteriorMap> map;
  HarmonicInteriorField w;
  double w_center = 0.0;
  double h_eps = 0.0;
  /// Measured sup over the outer boundary of |ell - ln beta |x - center|| / eps.
  double M = 0.0;

  /// X = (x - center) / eps.
  Point rescale(Point x) const { return (x - center) / eps; }
  double ell(Point x) const;
  Complex ell_gradient(Point x) const;
  double corrector(Point x) const { return ell(x) - w(x); }
  Complex corrector_gradient(Point x) const { return ell_gradient(x) - w.gradient(x); }
  /// Physical boundary point of omega_eps at mapped angle theta.
  Point inclusion_point(double theta) const {
    return center + eps * map->boundary_point(theta);
  }
};

/// Throws GeometryError when omega_eps is not strictly inside Omega0 and
/// ScaleDegeneracyError when w(center) - ln eps <= 0.
Profile build_profile(std::shared_ptr<const InteriorMap> domain,
                      std::shared_ptr<const ExteriorMap> shape_map, Point center, double eps,
                      int inclusion_index = 0, std::size_t samples = kDefaultSamples);

double evaluate_corrector(const Profile& p, Point x);

/// True when center + eps omega lies in Omega0 with the given margin in mapped
/// coordinates.
bool inclusion_inside(const InteriorMap& domain, const ExteriorMap& map, Point center,
                      double eps, double margin = 1e-9);

}  // namespace smallholes
