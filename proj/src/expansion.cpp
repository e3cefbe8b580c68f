#include "smallholes/expansion.hpp"

#include <cmath>

namespace smallholes {

namespace {

BoundaryFunction inclusion_trace(const Profile& p, std::size_t m,
                                 const std::function<double(Point)>& f) {
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = f(p.inclusion_point(sample_angle(j, m)));
  return BoundaryFunction::from_samples(std::move(s), p.inclusion_index);
}

double sup_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

double ResidualReport::max() const { return std::max(outer, max_inclusions()); }

double ResidualReport::max_inclusions() const {
  double m = 0.0;
  for (double v : inclusions) m = std::max(m, v);
  return m;
}

U0Field u0_of(const Scene& scene, std::size_t samples) {
  const Forcing& f = scene.forcing;
  return U0Field{f, solve_interior(scene.domain, sample_on_outer(*scene.domain, samples,
                                                                 [&](Point y) {
                                                                   return -f.particular(y);
                                                                 }))};
}

std::vector<Profile> build_profiles(const Scene& scene, std::size_t samples) {
  std::vector<Profile> profiles;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const auto& inc = scene.inclusions[i];
    profiles.push_back(build_profile(scene.domain, inc.map, inc.center(scene.eps), scene.eps,
                                     static_cast<int>(i), samples));
  }
  return profiles;
}

IterationResult one_iteration(const Profile& profile, std::shared_ptr<const InteriorMap> domain,
                              const BoundaryFunction& phi, const BoundaryFunction& f) {
  if (1.0 / profile.h_eps <= 0.1)
    throw ScaleDegeneracyError("w(x_eps) - ln eps is below 0.1; eps too large");
  const double eps = profile.eps;
  IterationResult r;
  r.v0 = solve_interior(domain, phi);
  r.psi = solve_exterior(profile.map, f);
  r.psi0 = r.psi.psi0();
  r.v0_center = r.v0(profile.center);
  r.weight = (r.v0_center - r.psi0) * profile.h_eps;

  auto trace = [&](Point x) {
    return r.v0(x) + (r.psi(profile.rescale(x)) - r.psi0) + r.weight * profile.corrector(x);
  };

  const std::size_t m_out = phi.size();
  std::vector<double> res_out(m_out);
  for (std::size_t j = 0; j < m_out; ++j)
    res_out[j] = phi.samples()[j] - trace(domain->boundary_point(phi.angle(j)));

  const std::size_t m_in = f.size();
  std::vector<double> res_in(m_in);
  for (std::size_t j = 0; j < m_in; ++j)
    res_in[j] = f.samples()[j] - trace(profile.inclusion_point(f.angle(j)));

  const double input = f.sup_norm() + phi.sup_norm();
  const double res = std::max(sup_abs(res_out), sup_abs(res_in)) / eps;
  r.constant = input > 0 ? res / input : 0.0;
  for (double& v : res_out) v /= eps;
  for (double& v : res_in) v /= eps;
  r.next_phi = BoundaryFunction::from_samples(std::move(res_out), kOuterBoundary);
  r.next_f = BoundaryFunction::from_samples(std::move(res_in), profile.inclusion_index);
  return r;
}

Expansion expand_single_with_data(const Scene& scene, int order, const BoundaryFunction& phi0,
                                  const BoundaryFunction& f0, std::size_t samples) {
  if (scene.size() != 1) throw std::invalid_argument("expand_single needs exactly one inclusion");
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  Expansion e;
  e.eps = scene.eps;
  e.order = order;
  e.scene = scene;
  e.u0 = std::make_shared<U0Field>(u0_of(scene, samples));
  e.profiles = build_profiles(scene, samples);
  const Profile& p = e.profiles[0];

  BoundaryFunction phi = phi0, f = f0;
  double scale = 1.0;
  for (int k = 0; k <= order; ++k) {
    IterationResult it = one_iteration(p, scene.domain, phi, f);
    e.terms.push_back({k, scale, InteriorTerm{it.v0}});
    e.terms.push_back({k, scale, ExteriorTerm{0, it.psi}});
    e.terms.push_back({k, scale, CorrectorTerm{0, it.weight}});
    e.weights.push_back(it.weight);
    e.psi0s.push_back({it.psi0});
    e.constants.push_back(it.constant);
    scale *= scene.eps;
    ResidualReport rep;
    rep.outer = scale * it.next_phi.sup_norm();
    rep.inclusions = {scale * it.next_f.sup_norm()};
    e.residual_history.push_back(rep);
    phi = std::move(it.next_phi);
    f = std::move(it.next_f);
  }
  return e;
}

Expansion expand_single(const Scene& scene, int order, std::size_t samples) {
  if (scene.size() != 1) throw std::invalid_argument("expand_single needs exactly one inclusion");
  const U0Field u0 = u0_of(scene, samples);
  const Profile p = build_profile(scene.domain, scene.inclusions[0].map,
                                  scene.inclusions[0].center(scene.eps), scene.eps, 0, samples);
  const BoundaryFunction f0 = inclusion_trace(p, samples, [&](Point x) { return -u0(x); });
  return expand_single_with_data(scene, order, BoundaryFunction::zeros(samples), f0, samples);
}

InteractionMatrix assemble_interaction_matrix(const Scene& scene, std::size_t samples) {
  const auto profiles = build_profiles(scene, samples);
  const U0Field u0 = u0_of(scene, samples);
  InteractionMatrix m;
  m.eps = scene.eps;
  m.entries = interaction_entries(profiles);
  m.rhs.resize(static_cast<Eigen::Index>(profiles.size()));
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto f = inclusion_trace(profiles[i], samples, [&](Point x) { return -u0(x); });
    m.rhs(static_cast<Eigen::Index>(i)) = psi0_of(*profiles[i].map, f);
  }
  m.regime = detect_regime(scene);
  return m;
}

Expansion expand_multi(const Scene& scene, std::size_t samples) {
  if (scene.size() == 1) return expand_single(scene, 0, samples);
  if (scene.size() == 0) throw std::invalid_argument("scene has no inclusions");
  Expansion e;
  e.eps = scene.eps;
  e.scene = scene;
  e.u0 = std::make_shared<U0Field>(u0_of(scene, samples));
  e.profiles = build_profiles(scene, samples);

  InteractionMatrix m;
  m.eps = scene.eps;
  m.entries = interaction_entries(e.profiles);
  m.rhs.resize(static_cast<Eigen::Index>(scene.size()));
  std::vector<double> psi0s;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const Profile& p = e.profiles[i];
    const auto f = inclusion_trace(p, samples, [&](Point x) { return -(*e.u0)(x); });
    HarmonicExteriorField psi = solve_exterior(p.map, f);
    m.rhs(static_cast<Eigen::Index>(i)) = psi.psi0();
    psi0s.push_back(psi.psi0());
    e.terms.push_back({0, 1.0, ExteriorTerm{static_cast<int>(i), std::move(psi)}});
  }
  m.regime = detect_regime(scene);
  solve_coefficients(m);
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const double a = m.solution(static_cast<Eigen::Index>(i));
    e.coefficients.push_back(a);
    e.terms.push_back({0, 1.0, CorrectorTerm{static_cast<int>(i), a}});
  }
  e.psi0s.push_back(psi0s);
  e.matrix = std::move(m);
  e.residual_history.push_back(boundary_residual(e, INT_MAX, samples));
  return e;
}

double Expansion::term_value(const Term& t, Point x) const {
  return std::visit(
      [&](const auto& body) -> double {
        using B = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<B, InteriorTerm>) {
          return t.scale * body.field(x);
        } else if constexpr (std::is_same_v<B, ExteriorTerm>) {
          const Profile& p = profiles[body.inclusion];
          return t.scale * (body.field(p.rescale(x)) - body.field.psi0());
        } else {
          return t.scale * body.weight * profiles[body.inclusion].corrector(x);
        }
      },
      t.body);
}

double Expansion::evaluate(Point x, int max_order) const {
  double v = (*u0)(x);
  for (const Term& t : terms)
    if (t.order <= max_order) v += term_value(t, x);
  return v;
}

double evaluate_expansion(const Expansion& e, Point x, int max_order) {
  return e.evaluate(x, max_order);
}

double evaluate_level(const Expansion& e, Point x, int level) {
  return e.evaluate(x, level - 1);
}

ResidualReport boundary_residual(const Expansion& e, int max_order, std::size_t samples) {
  ResidualReport rep;
  const InteriorMap& domain = *e.scene.domain;
  for (std::size_t j = 0; j < samples; ++j)
    rep.outer = std::max(
        rep.outer, std::abs(e.evaluate(domain.boundary_point(sample_angle(j, samples)), max_order)));
  for (const Profile& p : e.profiles) {
    double s = 0.0;
    for (std::size_t j = 0; j < samples; ++j)
      s = std::max(s, std::abs(e.evaluate(p.inclusion_point(sample_angle(j, samples)), max_order)));
    rep.inclusions.push_back(s);
  }
  return rep;
}

}  // namespace smallholes
