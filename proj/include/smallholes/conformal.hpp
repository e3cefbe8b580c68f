#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "smallholes/common.hpp"

namespace smallholes {

inline constexpr int kDefaultMapOrder = 32;

enum class ShapeKind { disk, ellipse, laurent, samples };

std::string_view to_string(ShapeKind kind);

/// Description of a reference inclusion shape omega (dimensionless, 0 inside).
struct ShapeSpec {
  ShapeKind kind = ShapeKind::disk;
  /// Ellipse {a^2 x^2 + b^2 y^2 < c^2}.
  double a = 1.0, b = 1.0, c = 1.0;
  /// Inverse-map coefficients z = c_{-1} w + c_0 + sum_k c_k w^{-k}, stored
  /// as [c_{-1}, c_0, c_1, ...].
  std::vector<Complex> laurent;
  /// Boundary points of a closed curve, one per row of the source CSV.
  std::vector<Point> samples;
  /// Text form, as it appears in a scene config.
  std::string text;

  static ShapeSpec disk();
  static ShapeSpec ellipse(double a, double b, double c);
  static ShapeSpec laurent_series(std::vector<Complex> inverse_coeffs);
  static ShapeSpec sampled(std::vector<Point> boundary);

  /// Throws std::invalid_argument when the parameters are not admissible.
  void validate() const;
};

/// Parses `disk`, `ellipse:a,b,c`, `laurent:[...]` or `samples:path.csv`.
/// Relative CSV paths are resolved against base_dir.
ShapeSpec parse_shape(std::string_view text,
                      const std::filesystem::path& base_dir = {});

/// Two-column x,y CSV without header.
std::vector<Point> read_boundary_csv(const std::filesystem::path& path);

/// Winding number of a closed polygon about p.
int winding_number(const std::vector<Point>& polygon, Point p);
bool is_simple_polygon(const std::vector<Point>& polygon);

/// Exterior Riemann map T of an inclusion, normalized by T(inf) = inf and
/// arg T'(inf) = 0, held as truncated Laurent series in both directions:
///   forward  T(z)      = beta z + sum_{k>=0} beta_k z^{-k}
///   inverse  T^{-1}(w) = c_{-1} w + c_0 + sum_{k>=1} c_k w^{-k},  c_{-1} = 1/beta.
///
/// The inverse series is the primary representation. Near the shape the
/// forward map is evaluated by Newton inversion of it; for disk and ellipse
/// both directions use closed forms. Immutable after construction.
class ExteriorMap {
 public:
  ShapeKind kind() const { return kind_; }
  double beta() const { return beta_; }
  /// beta_k, k = 0..K.
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// [c_{-1}, c_0, c_1, ..., c_K].
  const std::vector<Complex>& inv_coeffs() const { return inv_coeffs_; }
  int truncation_order() const { return order_; }
  double validity_radius() const { return validity_radius_; }
  /// sup |T(z) - beta z| over the boundary and the circle |z| = 2 R.
  double far_field_constant() const { return far_field_constant_; }
  /// Relative boundary mismatch of the inverse-series fit (0 for closed forms).
  double fit_residual() const { return fit_residual_; }
  double max_boundary_modulus() const { return max_boundary_modulus_; }

  /// T(z). Points on the boundary are accepted; interior points throw.
  Complex forward(Complex z) const;
  /// T^{-1}(w) for |w| >= 1.
  Complex inverse(Complex w) const;
  Complex inverse_derivative(Complex w) const;
  /// T'(z) = 1 / (T^{-1})'(T(z)).
  Complex forward_derivative(Complex z) const;
  /// Truncated Laurent sum of the forward map, no domain checks.
  Complex forward_series(Complex z) const;
  /// Inverse series at any w != 0, no domain checks (|w| < 1 lands inside omega
  /// for w close enough to the unit circle).
  Complex inverse_unchecked(Complex w) const { return inverse_series(w); }

  /// gamma(theta) = T^{-1}(e^{i theta}).
  Point boundary_point(double theta) const;
  std::vector<Point> boundary_points(std::size_t m) const;
  /// Minimum of |gamma'(theta)| over m samples.
  double min_boundary_speed(std::size_t m = 256) const;

 private:
  friend ExteriorMap build_exterior_map(const ShapeSpec& shape, int order);

  Complex inverse_series(Complex w) const;
  Complex inverse_series_derivative(Complex w) const;
  Complex newton_forward(Complex z) const;
  Complex ellipse_forward(Complex z) const;
  void finalize();

  ShapeKind kind_ = ShapeKind::disk;
  double beta_ = 1.0;
  std::vector<Complex> coeffs_;
  std::vector<Complex> inv_coeffs_;
  int order_ = 0;
  double validity_radius_ = 1.5;
  double far_field_constant_ = 0.0;
  double fit_residual_ = 0.0;
  double max_boundary_modulus_ = 1.0;
  double ea_ = 1.0, eb_ = 1.0, ec_ = 1.0;
  // Newton seeds: (T^{-1}(w), w) on a few rings |w| >= 1.
  std::vector<std::pair<Point, Complex>> seeds_;
};

/// Builds the exterior map of a shape. Closed forms for disk and ellipse; for
/// laurent shapes the given inverse series; for sampled shapes a Nystrom
/// solve of Symm's equation gives the boundary correspondence and the inverse
/// series is fitted by least squares on >= 4 (order+2) collocation angles.
/// Throws FitError when the fit residual exceeds 1e-6 and
/// std::invalid_argument on inadmissible shapes.
ExteriorMap build_exterior_map(const ShapeSpec& shape, int order = kDefaultMapOrder);

inline Complex map_forward(const ExteriorMap& map, Complex z) { return map.forward(z); }
Complex map_inverse(const ExteriorMap& map, Complex w);

/// T_eps(x) = eps T((x - center) / eps): exterior of center + eps omega onto
/// the exterior of B(0, eps).
class RescaledMap {
 public:
  RescaledMap(std::shared_ptr<const ExteriorMap> map, Point center, double eps);
  Complex operator()(Point x) const;
  Point center() const { return center_; }
  double eps() const { return eps_; }
  const ExteriorMap& map() const { return *map_; }

 private:
  std::shared_ptr<const ExteriorMap> map_;
  Point center_;
  double eps_;
};

RescaledMap rescaled_map(std::shared_ptr<const ExteriorMap> map, Point center,
                         double eps);

/// Interior map T0 : Omega0 -> B(0,1). Either the identity (Omega0 the unit
/// disk) or given by its inverse Taylor series z = sum_k a_k w^k.
class InteriorMap {
 public:
  enum class Kind { identity_disk, series };

  static InteriorMap identity();
  /// inverse_coeffs = [a_0, a_1, ...] with a_1 != 0; the image of the unit
  /// circle must be a simple positively oriented curve.
  static InteriorMap from_inverse_series(std::vector<Complex> inverse_coeffs);

  Kind kind() const { return kind_; }
  /// Fitted Taylor coefficients of T0 about 0 (identity: [0, 1]).
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  const std::vector<Complex>& inv_coeffs() const { return inv_coeffs_; }

  /// T0(z); throws DomainError if z lies outside the closure of Omega0.
  Complex forward(Complex z) const;
  /// T0 without the domain check (extension of the inverse series).
  Complex forward_unchecked(Complex z) const;
  Complex inverse(Complex w) const;
  Complex inverse_derivative(Complex w) const;
  Complex forward_derivative(Complex z) const;
  Point boundary_point(double theta) const { return inverse(std::polar(1.0, theta)); }
  std::vector<Point> boundary_points(std::size_t m) const;
  bool contains(Point z, double margin = 0.0) const;
  double diameter() const { return diameter_; }

 private:
  Kind kind_ = Kind::identity_disk;
  std::vector<Complex> coeffs_;
  std::vector<Complex> inv_coeffs_;
  std::vector<std::pair<Point, Complex>> seeds_;
  double diameter_ = 2.0;
};

}  // namespace smallholes
