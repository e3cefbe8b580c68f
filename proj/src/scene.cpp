#include "smallholes/scene.hpp"

#include <cmath>
#include <limits>

#include "smallholes/profiles.hpp"

namespace smallholes {

Forcing Forcing::constant(double f0) {
  Forcing f;
  f.kind = Kind::constant;
  f.f0 = f0;
  return f;
}

Forcing Forcing::point_sources(std::vector<Source> sources) {
  Forcing f;
  f.kind = Kind::point_sources;
  f.sources = std::move(sources);
  return f;
}

double Forcing::particular(Point x) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::constant: return -0.25 * f0 * std::norm(x);
    case Kind::point_sources: {
      double v = 0.0;
      for (const auto& s : sources) v += s.charge / kTwoPi * std::log(std::abs(x - s.location));
      return v;
    }
  }
  return 0.0;
}

Complex Forcing::particular_gradient(Point x) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::constant: return -0.5 * f0 * x;
    case Kind::point_sources: {
      Complex g = 0.0;
      for (const auto& s : sources) g += s.charge / kTwoPi * (x - s.location) / std::norm(x - s.location);
      return g;
    }
  }
  return 0.0;
}

std::string_view to_string(Forcing::Kind kind) {
  switch (kind) {
    case Forcing::Kind::zero: return "zero";
    case Forcing::Kind::constant: return "constant";
    case Forcing::Kind::point_sources: return "point_sources";
  }
  return "?";
}

Point Inclusion::center(double eps) const {
  if (offset == 0.0) return base_center;
  return base_center + std::pow(eps, exponent) * offset;
}

Inclusion make_inclusion(const ShapeSpec& shape, Point base_center, Point offset,
                         double exponent, int map_order) {
  if (!(exponent >= 0.0 && exponent < 1.0))
    throw std::invalid_argument("inclusion exponent must lie in [0, 1)");
  Inclusion inc;
  inc.shape = shape;
  inc.map = std::make_shared<ExteriorMap>(build_exterior_map(shape, map_order));
  inc.base_center = base_center;
  inc.offset = offset;
  inc.exponent = exponent;
  return inc;
}

std::vector<Point> Scene::centers() const {
  std::vector<Point> c;
  for (const auto& inc : inclusions) c.push_back(inc.center(eps));
  return c;
}

double min_center_distance(const Scene& scene) {
  const auto c = scene.centers();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) d = std::min(d, std::abs(c[i] - c[j]));
  return d;
}

void validate_scene(const Scene& scene, double min_separation_ratio) {
  const double eps = scene.eps;
  if (!(eps > 0)) throw GeometryError("eps must be positive");
  const auto c = scene.centers();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!inclusion_inside(*scene.domain, *scene.inclusions[i].map, c[i], eps))
      throw GeometryError("inclusion " + std::to_string(i) + " is not strictly inside the domain");
    const double ri = eps * scene.inclusions[i].map->max_boundary_modulus();
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double rj = eps * scene.inclusions[j].map->max_boundary_modulus();
      const double d = std::abs(c[i] - c[j]);
      if (d <= ri + rj)
        throw GeometryError("inclusions " + std::to_string(i) + " and " + std::to_string(j) +
                            " overlap");
      if (d < min_separation_ratio * eps)
        throw GeometryError("inclusions " + std::to_string(i) + " and " + std::to_string(j) +
                            " are closer than " + std::to_string(min_separation_ratio) +
                            " eps");
    }
    for (const auto& s : scene.forcing.sources)
      if (std::abs(s.location - c[i]) < ri + 2.0 * eps)
        throw GeometryError("point source within 2 eps of inclusion " + std::to_string(i));
  }
  for (const auto& s : scene.forcing.sources)
    if (!scene.domain->contains(s.location, 1e-9))
      throw GeometryError("point source outside the domain");
}

}  // namespace smallholes
