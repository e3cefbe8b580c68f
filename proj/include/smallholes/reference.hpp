#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "smallholes/expansion.hpp"
#include "smallholes/scene.hpp"

namespace smallholes {

struct ReferenceOptions {
  int outer_sources = 128;
  int inclusion_sources = 64;
  /// Collocation points per source.
  int oversampling = 2;
  /// Source ring radius in the mapped frame of Omega0.
  double outer_radius = 1.4;
  /// Source ring radius in the mapped frame of each inclusion.
  double inner_radius = 0.7;
  double svd_cutoff = 1e-12;
  /// Refuse solutions whose collocation residual exceeds this times the data sup.
  double max_relative_residual = 1e-6;
};

/// Method-of-fundamental-solutions solution of the perforated Dirichlet
/// problem, u = u_p + sum_k q_k (1/2pi) ln|x - s_k| + constant.
struct ReferenceSolution {
  Forcing forcing;
  std::vector<Point> sources;
  Eigen::VectorXd charges;
  double constant_term = 0.0;
  double boundary_residual = 0.0;
  double data_sup = 0.0;
  /// Sum of the charges placed inside inclusion i (including its center source).
  std::vector<double> inclusion_charge;

  double operator()(Point x) const;
};

/// u = 0 on every boundary of the perforated domain.
ReferenceSolution solve_reference(const Scene& scene, const ReferenceOptions& opt = {});

/// Harmonic function with the given boundary data; data(x, boundary_id) with
/// boundary_id = kOuterBoundary or the inclusion index. The forcing is ignored.
ReferenceSolution solve_reference_data(const Scene& scene,
                                       const std::function<double(Point, int)>& data,
                                       const ReferenceOptions& opt = {});

double evaluate_reference(const ReferenceSolution& sol, Point x);

struct GridSpec {
  int n = 48;
  /// Points closer than collar * eps to an inclusion (measured from its
  /// bounding circle) are excluded.
  double collar = 2.0;
  /// Additional fixed exclusion radius around each inclusion center.
  double exclusion_radius = 0.0;
  /// Also sample the curve at distance collar * eps from each inclusion.
  int collar_curve_points = 64;
  /// Points with mapped modulus above this are dropped (outer boundary layer).
  double outer_margin = 0.0;
};

/// Points of Omega_eps used to compare fields.
std::vector<Point> remainder_grid(const Scene& scene, const GridSpec& spec = {});

struct RemainderNorm {
  double sup = 0.0;
  double rms = 0.0;
  std::size_t count = 0;
};

RemainderNorm remainder_norm(const std::function<double(Point)>& reference,
                             const std::function<double(Point)>& approximation,
                             const std::vector<Point>& grid);

/// Compares the reference with the expansion truncated to `level`
/// (see evaluate_level).
RemainderNorm remainder_norm(const ReferenceSolution& sol, const Expansion& e,
                             const GridSpec& spec = {}, int level = INT_MAX);

}  // namespace smallholes
