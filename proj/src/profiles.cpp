#include "smallholes/profiles.hpp"

#include <cmath>

namespace smallholes {

double Profile::ell(Point x) const {
  return std::log(eps) + std::log(std::abs(map->forward(rescale(x))));
}

Complex Profile::ell_gradient(Point x) const {
  const Point X = rescale(x);
  const Complex d = map->forward_derivative(X) / (map->forward(X) * eps);
  return std::conj(d);
}

bool inclusion_inside(const InteriorMap& domain, const ExteriorMap& map, Point center,
                      double eps, double margin) {
  if (!domain.contains(center, margin)) return false;
  for (Point p : map.boundary_points(256))
    if (!domain.contains(center + eps * p, margin)) return false;
  return true;
}

Profile build_profile(std::shared_ptr<const InteriorMap> domain,
                      std::shared_ptr<const ExteriorMap> shape_map, Point center, double eps,
                      int inclusion_index, std::size_t samples) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!inclusion_inside(*domain, *shape_map, center, eps))
    throw GeometryError("inclusion " + std::to_string(inclusion_index) +
                        " is not strictly inside the domain");
  Profile p;
  p.inclusion_index = inclusion_index;
  p.center = center;
  p.eps = eps;
  p.beta = shape_map->beta();
  p.map = std::move(shape_map);
  const double beta = p.beta;
  p.w = solve_interior(domain, sample_on_outer(*domain, samples, [&](Point y) {
                         return std::log(beta * std::abs(y - center));
                       }));
  p.w_center = p.w(center);
  const double denom = p.w_center - std::log(eps);
  if (!(denom > 0))
    throw ScaleDegeneracyError("w(x_eps) - ln eps = " + std::to_string(denom) +
                               " is not positive; eps too large");
  p.h_eps = 1.0 / denom;
  for (Point y : domain->boundary_points(samples))
    p.M = std::max(p.M, std::abs(p.ell(y) - std::log(beta * std::abs(y - center))) / eps);
  return p;
}

double evaluate_corrector(const Profile& p, Point x) { return p.corrector(x); }

}  // namespace smallholes
