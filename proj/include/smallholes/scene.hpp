#pragma once

#include <memory>
#include <vector>

#include "smallholes/conformal.hpp"

namespace smallholes {

/// Right-hand side f of -Delta u = f with a closed-form particular solution.
/// A point source of charge q at s contributes u_p = (q / 2 pi) ln|x - s|,
/// i.e. f = -q delta_s.
struct Forcing {
  enum class Kind { zero, constant, point_sources };
  struct Source {
    Point location;
    double charge;
  };

  Kind kind = Kind::zero;
  double f0 = 0.0;
  std::vector<Source> sources;

  static Forcing zero() { return {}; }
  static Forcing constant(double f0);
  static Forcing point_sources(std::vector<Source> sources);

  /// u_p(x).
  double particular(Point x) const;
  /// grad u_p(x) as a complex number.
  Complex particular_gradient(Point x) const;
};

std::string_view to_string(Forcing::Kind kind);

struct Inclusion {
  ShapeSpec shape;
  std::shared_ptr<const ExteriorMap> map;
  Point base_center = 0.0;
  Point offset = 0.0;
  double exponent = 0.0;

  /// x_eps = base_center + eps^exponent offset.
  Point center(double eps) const;
};

Inclusion make_inclusion(const ShapeSpec& shape, Point base_center, Point offset = 0.0,
                         double exponent = 0.0, int map_order = kDefaultMapOrder);

struct Scene {
  std::shared_ptr<const InteriorMap> domain = std::make_shared<InteriorMap>(InteriorMap::identity());
  std::vector<Inclusion> inclusions;
  Forcing forcing;
  double eps = 0.1;

  std::size_t size() const { return inclusions.size(); }
  std::vector<Point> centers() const;
  Scene at(double new_eps) const {
    Scene s = *this;
    s.eps = new_eps;
    return s;
  }
};

/// Minimum pairwise center distance d_eps (infinity for one inclusion).
double min_center_distance(const Scene& scene);

/// Throws GeometryError unless every inclusion lies strictly inside Omega0,
/// inclusions are pairwise disjoint with d_eps / eps >= min_separation_ratio,
/// and point sources keep a 2 eps margin from every inclusion.
void validate_scene(const Scene& scene, double min_separation_ratio = 10.0);

}  // namespace smallholes
