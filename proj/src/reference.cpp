#include "smallholes/reference.hpp"

#include <cmath>

namespace smallholes {

namespace {

struct Node {
  Point x;
  int boundary;
};

}  // namespace

double ReferenceSolution::operator()(Point x) const {
  double v = forcing.particular(x) + constant_term;
  for (std::size_t k = 0; k < sources.size(); ++k)
    v += charges(static_cast<Eigen::Index>(k)) / kTwoPi * std::log(std::abs(x - sources[k]));
  return v;
}

double evaluate_reference(const ReferenceSolution& sol, Point x) { return sol(x); }

ReferenceSolution solve_reference_data(const Scene& scene,
                                       const std::function<double(Point, int)>& data,
                                       const ReferenceOptions& opt) {
  if (!(scene.eps >= 1e-4) && scene.size() > 0)
    throw NumericalError("reference solver needs eps >= 1e-4");
  const InteriorMap& domain = *scene.domain;
  const auto centers = scene.centers();

  ReferenceSolution sol;
  std::vector<int> owner;  // inclusion index of each source, -1 outside
  for (int k = 0; k < opt.outer_sources; ++k) {
    sol.sources.push_back(domain.inverse(std::polar(opt.outer_radius, kTwoPi * k / opt.outer_sources)));
    owner.push_back(kOuterBoundary);
  }
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const ExteriorMap& map = *scene.inclusions[i].map;
    for (int k = 0; k < opt.inclusion_sources; ++k) {
      const Complex w = std::polar(opt.inner_radius, kTwoPi * (k + 0.5) / opt.inclusion_sources);
      sol.sources.push_back(centers[i] + scene.eps * map.inverse_unchecked(w));
      owner.push_back(static_cast<int>(i));
    }
    sol.sources.push_back(centers[i]);
    owner.push_back(static_cast<int>(i));
  }

  std::vector<Node> nodes;
  const int m_out = opt.oversampling * opt.outer_sources;
  for (int j = 0; j < m_out; ++j)
    nodes.push_back({domain.boundary_point(kTwoPi * j / m_out), kOuterBoundary});
  const int m_in = opt.oversampling * opt.inclusion_sources;
  for (std::size_t i = 0; i < scene.size(); ++i)
    for (int j = 0; j < m_in; ++j)
      nodes.push_back({centers[i] + scene.eps * scene.inclusions[i].map->boundary_point(kTwoPi * j / m_in),
                       static_cast<int>(i)});

  const Eigen::Index rows = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(sol.sources.size()) + 1;
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Point x = nodes[r].x;
    for (std::size_t k = 0; k < sol.sources.size(); ++k)
      a(r, static_cast<Eigen::Index>(k)) = std::log(std::abs(x - sol.sources[k])) / kTwoPi;
    a(r, cols - 1) = 1.0;
    b(r) = data(x, nodes[r].boundary);
  }
  sol.data_sup = b.cwiseAbs().maxCoeff();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(opt.svd_cutoff);
  const Eigen::VectorXd x = svd.solve(b);
  sol.charges = x.head(cols - 1);
  sol.constant_term = x(cols - 1);
  sol.boundary_residual = (a * x - b).cwiseAbs().maxCoeff();
  if (sol.boundary_residual > opt.max_relative_residual * std::max(sol.data_sup, 1e-300) &&
      sol.data_sup > 0)
    throw NumericalError("reference solve refused: collocation residual " +
                         std::to_string(sol.boundary_residual) + " vs data sup " +
                         std::to_string(sol.data_sup));
  sol.inclusion_charge.assign(scene.size(), 0.0);
  for (std::size_t k = 0; k < owner.size(); ++k)
    if (owner[k] >= 0) sol.inclusion_charge[owner[k]] += sol.charges(static_cast<Eigen::Index>(k));
  return sol;
}

ReferenceSolution solve_reference(const Scene& scene, const ReferenceOptions& opt) {
  const Forcing& f = scene.forcing;
  ReferenceSolution sol =
      solve_reference_data(scene, [&](Point x, int) { return -f.particular(x); }, opt);
  sol.forcing = f;
  return sol;
}

std::vector<Point> remainder_grid(const Scene& scene, const GridSpec& spec) {
  const InteriorMap& domain = *scene.domain;
  const auto centers = scene.centers();
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (Point p : domain.boundary_points(256)) {
    lo_x = std::min(lo_x, p.real());
    hi_x = std::max(hi_x, p.real());
    lo_y = std::min(lo_y, p.imag());
    hi_y = std::max(hi_y, p.imag());
  }
  auto excluded = [&](Point x) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double r = scene.eps * (scene.inclusions[i].map->max_boundary_modulus() + spec.collar);
      const double d = std::abs(x - centers[i]);
      if (d < r - 1e-12 || d < spec.exclusion_radius) return true;
    }
    for (const auto& s : scene.forcing.sources)
      if (std::abs(x - s.location) < 0.02) return true;
    return false;
  };

  std::vector<Point> grid;
  for (int iy = 0; iy < spec.n; ++iy) {
    for (int ix = 0; ix < spec.n; ++ix) {
      const Point x(lo_x + (hi_x - lo_x) * (ix + 0.5) / spec.n,
                    lo_y + (hi_y - lo_y) * (iy + 0.5) / spec.n);
      if (!domain.contains(x, spec.outer_margin) || excluded(x)) continue;
      grid.push_back(x);
    }
  }
  for (std::size_t i = 0; i < centers.size() && spec.collar_curve_points > 0; ++i) {
    const ExteriorMap& map = *scene.inclusions[i].map;
    for (int j = 0; j < spec.collar_curve_points; ++j) {
      const Complex w = std::polar(1.0, kTwoPi * j / spec.collar_curve_points);
      const Complex tangent = map.inverse_derivative(w) * Complex(0, 1) * w;
      const Point x = centers[i] + scene.eps * (map.inverse(w) - Complex(0, 1) * spec.collar *
                                                                    tangent / std::abs(tangent));
      if (std::abs(x - centers[i]) < spec.exclusion_radius) continue;
      if (!domain.contains(x, spec.outer_margin)) continue;
      bool inside_other = false;
      for (std::size_t k = 0; k < centers.size(); ++k)
        if (k != i && std::abs(x - centers[k]) <
                          scene.eps * (scene.inclusions[k].map->max_boundary_modulus() + spec.collar))
          inside_other = true;
      if (!inside_other) grid.push_back(x);
    }
  }
  return grid;
}

RemainderNorm remainder_norm(const std::function<double(Point)>& reference,
                             const std::function<double(Point)>& approximation,
                             const std::vector<Point>& grid) {
  RemainderNorm r;
  double sq = 0.0;
  for (Point x : grid) {
    const double d = std::abs(reference(x) - approximation(x));
    r.sup = std::max(r.sup, d);
    sq += d * d;
  }
  r.count = grid.size();
  r.rms = grid.empty() ? 0.0 : std::sqrt(sq / double(grid.size()));
  return r;
}

RemainderNorm remainder_norm(const ReferenceSolution& sol, const Expansion& e,
                             const GridSpec& spec, int level) {
  return remainder_norm([&](Point x) { return sol(x); },
                        [&](Point x) { return evaluate_level(e, x, level); },
                        remainder_grid(e.scene, spec));
}

}  // namespace smallholes
