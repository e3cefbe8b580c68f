#include "smallholes/validate.hpp"

#include <cmath>
#include <random>

#include "smallholes/convergence.hpp"
#include "smallholes/expansion.hpp"
#include "smallholes/reference.hpp"

namespace smallholes {

int ValidationReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

namespace {

class Suite {
 public:
  Suite(ValidationReport& report, bool inject, std::uint64_t seed)
      : report_(report), inject_(inject), rng_(seed) {}

  void set(const char* suite) { suite_ = suite; }

  void le(const std::string& name, double value, double bound) {
    const double b = inject_ ? -1.0 : bound;
    report_.checks.push_back({suite_, name, value, b, !inject_ && value <= b});
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  /// Random 8-mode trigonometric polynomial.
  std::function<double(double)> random_modes() {
    std::vector<double> a(9), b(9);
    for (int k = 0; k <= 8; ++k) {
      a[k] = normal() / (k + 1);
      b[k] = normal() / (k + 1);
    }
    return [a, b](double t) {
      double v = a[0];
      for (int k = 1; k <= 8; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
      return v;
    };
  }

 private:
  ValidationReport& report_;
  bool inject_;
  std::mt19937_64 rng_;
  std::string suite_;
};

double fine_sup(const BoundaryFunction& f) {
  double s = f.sup_norm();
  for (int j = 0; j < 4096; ++j) s = std::max(s, std::abs(f.value_at(kTwoPi * j / 4096.0)));
  return s;
}

std::vector<Point> star(int m, double a3, double a2, double rotation) {
  std::vector<Point> pts;
  for (int j = 0; j < m; ++j) {
    const double t = kTwoPi * j / m;
    pts.push_back(std::polar(1.0 + a3 * std::cos(3 * t) + a2 * std::sin(2 * t), t + rotation));
  }
  return pts;
}

void conformal_suite(Suite& s) {
  s.set("conformal");
  std::vector<std::pair<std::string, ShapeSpec>> shapes;
  shapes.emplace_back("disk", ShapeSpec::disk());
  shapes.emplace_back("ellipse", ShapeSpec::ellipse(s.uniform(0.8, 1.2), s.uniform(1.5, 2.5), s.uniform(1.0, 2.0)));
  shapes.emplace_back("laurent", ShapeSpec::laurent_series({std::polar(s.uniform(0.8, 1.2), s.uniform(0, kTwoPi)),
                                                            Complex(0.0), Complex(s.uniform(-0.1, 0.1), s.uniform(-0.1, 0.1)),
                                                            Complex(s.uniform(-0.05, 0.05), s.uniform(-0.05, 0.05))}));
  shapes.emplace_back("sampled", ShapeSpec::sampled(star(256, s.uniform(0.02, 0.06), s.uniform(0.0, 0.03),
                                                             s.uniform(0, kPi))));
  for (const auto& [name, shape] : shapes) {
    const ExteriorMap map = build_exterior_map(shape, kDefaultMapOrder);
    double rt = 0.0;
    for (double rho : {1.0, 1.5, 3.0})
      for (int j = 0; j < 128; ++j) {
        const Complex w = std::polar(rho, kTwoPi * j / 128.0);
        rt = std::max(rt, std::abs(map.forward(map.inverse(w)) - w) / std::max(1.0, rho));
      }
    s.le(name + ": round trip", rt, 1e-8);

    auto far = [&](double r) {
      double v = 0.0;
      for (int j = 0; j < 256; ++j) {
        const Complex z = std::polar(r, kTwoPi * j / 256.0);
        v = std::max(v, std::abs(map.forward(z) - map.beta() * z));
      }
      return v;
    };
    s.le(name + ": far field at 10R within C", far(10 * map.validity_radius()), map.far_field_constant() + 1e-12);
    s.le(name + ": far field at 100R within C", far(100 * map.validity_radius()), map.far_field_constant() + 1e-12);
    s.le(name + ": boundary speed positive", -map.min_boundary_speed(), 0.0);
  }

  const double a = s.uniform(0.8, 1.2), c = s.uniform(1.0, 2.0);
  double prev = 1e300;
  double growth = 0.0;
  for (int k = 2; k <= 4; ++k) {
    const ExteriorMap m = build_exterior_map(ShapeSpec::ellipse(a, a * (1 + std::pow(10.0, -k)), c));
    const double d = std::abs(m.inv_coeffs()[0] - c / a) + std::abs(m.inv_coeffs()[2]);
    growth = std::max(growth, d - prev);
    prev = d;
  }
  s.le("ellipse degeneracy: coefficients approach the disk", growth, 0.0);
}

void harmonic_ext_suite(Suite& s) {
  s.set("harmonic_ext");
  auto map = std::make_shared<ExteriorMap>(build_exterior_map(
      ShapeSpec::ellipse(s.uniform(0.8, 1.2), s.uniform(1.5, 2.5), s.uniform(1.0, 2.0))));
  const double R = map->validity_radius();
  double mean_violation = -1e300, max_violation = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const auto F = BoundaryFunction::sample(256, s.random_modes(), 0);
    const auto field = solve_exterior(map, F);
    mean_violation = std::max(mean_violation, std::abs(field.psi0()) - F.sup_norm());
    if (trial < 10) {
      const double bound = 2.0 * fine_sup(F) + 1e-8;
      for (int ir = 0; ir < 12; ++ir) {
        const double r = map->max_boundary_modulus() * (1.02 + 0.4 * ir);
        for (int j = 0; j < 48; ++j) {
          const Point X = std::polar(r, kTwoPi * j / 48.0);
          try {
            max_violation = std::max(max_violation, std::abs(field(X)) - bound);
          } catch (const DomainError&) {
          }
        }
      }
    }
  }
  s.le("|psi0| <= sup F (100 random F)", mean_violation, 0.0);
  s.le("|field| <= 2 sup F on an annulus grid", max_violation, 0.0);

  const auto F = BoundaryFunction::sample(256, s.random_modes(), 0);
  const auto field = solve_exterior(map, F);
  double increase = -1e300;
  for (int n = 1; n <= 4; ++n) {
    double prev = tail_sup(field, n, 2 * R);
    for (double r : {4 * R, 8 * R, 16 * R}) {
      const double t = tail_sup(field, n, r);
      increase = std::max(increase, t - prev * (1 + 1e-9));
      prev = t;
    }
  }
  s.le("tail_sup non-increasing in r, n = 1..4", increase, 1e-12);
  s.le("contour mean equals psi0", std::abs(contour_mean_check(field).real() - field.psi0()),
       1e-8 * F.sup_norm());

  const auto G = BoundaryFunction::sample(256, s.random_modes(), 0);
  const double al = s.normal(), be = s.normal();
  const auto lin = solve_exterior(map, al * F + be * G);
  const auto fg = solve_exterior(map, G);
  double lin_err = std::abs(lin.psi0() - al * field.psi0() - be * fg.psi0());
  for (std::size_t k = 1; k < lin.coeffs().size(); ++k)
    lin_err = std::max(lin_err, std::abs(lin.coeffs()[k] - al * field.coeffs()[k] - be * fg.coeffs()[k]));
  s.le("linearity", lin_err, 1e-12 * (1 + std::abs(al) + std::abs(be)) * 10);

  auto disk = std::make_shared<ExteriorMap>(build_exterior_map(ShapeSpec::disk()));
  auto Z = BoundaryFunction::sample(256, s.random_modes(), 0);
  Z = Z + BoundaryFunction::sample(256, [&](double) { return -Z.mean(); }, 0);
  s.le("disk: zero-mean F gives psi0 = 0", std::abs(solve_exterior(disk, Z).psi0()), 1e-14);
}

void harmonic_int_suite(Suite& s) {
  s.set("harmonic_int");
  auto domain = std::make_shared<InteriorMap>(InteriorMap::identity());
  double max_violation = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const auto phi = BoundaryFunction::sample(256, s.random_modes());
    const auto field = solve_interior(domain, phi);
    const double bound = fine_sup(phi) + 1e-12;
    for (int iy = 0; iy < 64; ++iy)
      for (int ix = 0; ix < 64; ++ix) {
        const Point x(-1 + (ix + 0.5) / 32.0, -1 + (iy + 0.5) / 32.0);
        if (std::abs(x) >= 1.0) continue;
        max_violation = std::max(max_violation, std::abs(field(x)) - bound);
      }
  }
  s.le("maximum principle on a 64x64 grid (50 random phi)", max_violation, 0.0);

  const auto phi = BoundaryFunction::sample(256, s.random_modes());
  const auto field = solve_interior(domain, phi);
  s.le("mean value at the mapped center", std::abs(field(domain->inverse(0.0)) - phi.mean()), 1e-12);

  double fd = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Point x = std::polar(s.uniform(0, 0.8), s.uniform(0, kTwoPi));
    const double h = 1e-5;
    const Complex num((field(x + h) - field(x - h)) / (2 * h),
                      (field(x + Complex(0, h)) - field(x - Complex(0, h))) / (2 * h));
    const Complex g = field.gradient(x);
    fd = std::max(fd, std::abs(num - g) / std::max(1.0, std::abs(g)));
  }
  s.le("gradient matches finite differences", fd, 1e-6);

  const auto psi = BoundaryFunction::sample(256, s.random_modes());
  const double al = s.normal(), be = s.normal();
  const auto lin = solve_interior(domain, al * phi + be * psi);
  const auto f2 = solve_interior(domain, psi);
  double err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Point x = std::polar(s.uniform(0, 0.95), s.uniform(0, kTwoPi));
    err = std::max(err, std::abs(lin(x) - al * field(x) - be * f2(x)));
  }
  s.le("linearity", err, 1e-12 * 10 * (1 + std::abs(al) + std::abs(be)));
}

void profiles_suite(Suite& s) {
  s.set("profiles");
  auto domain = std::make_shared<InteriorMap>(InteriorMap::identity());
  auto map = std::make_shared<ExteriorMap>(build_exterior_map(
      ShapeSpec::ellipse(s.uniform(0.8, 1.2), s.uniform(1.5, 2.5), s.uniform(1.0, 2.0))));
  const Point center = std::polar(s.uniform(0.0, 0.4), s.uniform(0, kTwoPi));
  double prev_h = 1e300, h_increase = -1e300, M_first = -1, M_max = 0.0;
  for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
    const Profile p = build_profile(domain, map, center, eps);
    double ell_err = 0.0;
    for (int j = 0; j < 256; ++j)
      ell_err = std::max(ell_err, std::abs(p.ell(p.inclusion_point(kTwoPi * j / 256.0)) - std::log(eps)));
    s.le("ell = ln eps on the inclusion (eps = " + std::to_string(eps) + ")", ell_err, 1e-8);
    s.le("h_eps (w - ln eps) = 1", std::abs(p.h_eps * (p.w_center - std::log(eps)) - 1.0), 1e-15);
    h_increase = std::max(h_increase, p.h_eps - prev_h);
    prev_h = p.h_eps;
    if (M_first < 0) M_first = p.M;
    M_max = std::max(M_max, p.M);
    double w_bound = 0.0;
    for (Point y : domain->boundary_points(256))
      w_bound = std::max(w_bound, std::abs(std::log(p.beta * std::abs(y - center))));
    s.le("|w(x_eps)| within the boundary-data bound", std::abs(p.w_center) - w_bound, 1e-8);
  }
  s.le("h_eps decreases along the sweep", h_increase, 0.0);
  s.le("M bounded over the sweep", M_max, 1.05 * M_first + 1e-10);

  const Profile p = build_profile(domain, map, center, 0.05);
  double lap = 0.0;
  const double h = 1e-3;
  for (int k = 0; k < 50; ++k) {
    Point x;
    do {
      x = std::polar(s.uniform(0, 0.9), s.uniform(0, kTwoPi));
    } while (std::abs(x - center) < 0.3);
    const double v = p.corrector(x);
    const double l = (p.corrector(x + h) + p.corrector(x - h) + p.corrector(x + Complex(0, h)) +
                      p.corrector(x - Complex(0, h)) - 4 * v) / (h * h);
    lap = std::max(lap, std::abs(l));
  }
  s.le("corrector is harmonic (5-point Laplacian)", lap, 1e-4 * 10);
}

Scene two_disks(Point a, Point b, Forcing f, double eps) {
  Scene sc;
  sc.inclusions.push_back(make_inclusion(ShapeSpec::disk(), a));
  sc.inclusions.push_back(make_inclusion(ShapeSpec::disk(), b));
  sc.forcing = std::move(f);
  sc.eps = eps;
  return sc;
}

void expansion_suite(Suite& s) {
  s.set("expansion");
  const Point c = std::polar(s.uniform(0.1, 0.4), s.uniform(0, kTwoPi));
  const Point src = -c / std::abs(c) * s.uniform(0.4, 0.6);
  Scene single;
  single.inclusions.push_back(make_inclusion(ShapeSpec::disk(), c));
  single.forcing = Forcing::point_sources({{src, s.uniform(0.5, 2.0)}});
  single.eps = 0.05;

  const Expansion e = expand_single(single, 2);
  double contract = 0.0;
  for (int k = 0; k <= 2; ++k) {
    const ResidualReport r = boundary_residual(e, k);
    const ResidualReport& h = e.residual_history[k];
    contract = std::max(contract, std::abs(r.outer - h.outer) + std::abs(r.inclusions[0] - h.inclusions[0]));
  }
  s.le("recursion contract: stored traces reproduce the boundary residual", contract, 1e-9);

  double u0_trace = 0.0;
  for (Point y : single.domain->boundary_points(256)) u0_trace = std::max(u0_trace, std::abs((*e.u0)(y)));
  s.le("u0 vanishes on the outer boundary", u0_trace, 1e-8);

  for (const Forcing& f : {Forcing::constant(s.uniform(1, 5)), single.forcing}) {
    double lap = 0.0;
    const double h = 1e-4;
    for (int k = 0; k < 20; ++k) {
      Point x;
      do {
        x = std::polar(s.uniform(0, 0.95), s.uniform(0, kTwoPi));
      } while (f.kind == Forcing::Kind::point_sources && std::abs(x - src) < 0.2);
      const double l = (f.particular(x + h) + f.particular(x - h) + f.particular(x + Complex(0, h)) +
                        f.particular(x - Complex(0, h)) - 4 * f.particular(x)) / (h * h);
      lap = std::max(lap, std::abs(-l - (f.kind == Forcing::Kind::constant ? f.f0 : 0.0)));
    }
    s.le(std::string("-Laplacian of u_p equals f (") + std::string(to_string(f.kind)) + ")", lap, 1e-5);
  }

  const InteractionMatrix m1 = assemble_interaction_matrix(single);
  s.le("N = 1: a = Psi0 / (ln eps - w) equals the corrector weight",
       std::abs(m1.rhs(0) / m1.entries(0, 0) - e.weights[0]), 1e-12);

  // H_N and three-scale closed forms
  double hn = 0.0, det = 0.0, pinv = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial;
    const double ln_eps = std::log(s.uniform(1e-3, 0.1));
    const double ln_eta = s.uniform(0.1, 0.9) * ln_eps;
    const Eigen::MatrixXd m0 = closed_form::m0(n, ln_eps, ln_eta);
    hn = std::max(hn, closed_form::inf_norm(closed_form::m0_inverse(n, ln_eps, ln_eta) - m0.inverse()) /
                          closed_form::inf_norm(m0.inverse()));
    const double al = s.uniform(0.05, 0.95);
    const double be = s.uniform(0.01, al);
    det = std::max(det, std::abs(closed_form::det_m_alpha_beta(al, be) -
                                 closed_form::m_alpha_beta(al, be).determinant()));
    pinv = std::max(pinv, closed_form::inf_norm(closed_form::inverse_m_alpha_beta(al, be) -
                                                closed_form::m_alpha_beta(al, be).inverse()));
  }
  s.le("H_N spectral inverse equals direct inversion", hn, 1e-10);
  s.le("det M_{alpha,beta} closed form", det, 1e-12);
  s.le("eigendecomposition inverse of M_{alpha,beta}", pinv, 1e-10);

  // two inclusions
  const double x0 = s.uniform(0.3, 0.5);
  const Forcing sym = Forcing::point_sources({{Point(0, s.uniform(0.4, 0.6)), 1.0}});
  std::vector<double> scaled;
  for (double eps : {0.05, 0.025, 0.0125}) {
    const Scene sc = two_disks(Point(x0, 0), Point(-x0, 0), sym, eps);
    const Expansion em = expand_multi(sc);
    s.le("symmetric pair: a_1 = a_2", std::abs(em.coefficients[0] - em.coefficients[1]),
         1e-12 * std::abs(em.coefficients[0]) + 1e-15);
    const Eigen::Matrix2d m2 = em.matrix->entries;
    s.le("2x2 inverse through delta(eps)",
         closed_form::inf_norm(closed_form::inverse_2x2(m2) - m2.inverse()) / closed_form::inf_norm(m2.inverse()),
         1e-12);
    scaled.push_back(std::abs(em.coefficients[0] * std::log(eps)));
  }
  s.le("|a_i| |ln eps| bounded over the sweep", max_over_min(scaled), 2.0);

  std::vector<double> rem;
  for (double eps : {0.05, 0.025, 0.0125}) {
    const Scene sc = single.at(eps);
    const InteractionMatrix m = assemble_interaction_matrix(sc);
    const U0Field u0 = u0_of(sc);
    rem.push_back(std::abs(m.rhs(0) + u0(sc.centers()[0])) / eps);
  }
  s.le("|Psi0[F0] + u0(x_eps)| / eps bounded", rem.back(), 2.0 * rem.front() + 1e-12);
}

void reference_suite(Suite& s) {
  s.set("reference");
  const double eps = s.uniform(0.02, 0.1);
  Scene annulus;
  annulus.inclusions.push_back(make_inclusion(ShapeSpec::disk(), 0.0));
  annulus.eps = eps;
  const auto ref = solve_reference_data(annulus, [](Point, int b) { return b < 0 ? 0.0 : 1.0; });
  double err = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double r = eps + (1 - eps) * k / 39.0;
    const Point x = std::polar(r, s.uniform(0, kTwoPi));
    err = std::max(err, std::abs(ref(x) - std::log(r) / std::log(eps)));
  }
  s.le("annulus capacity solution", err, 1e-8);

  Scene sc;
  sc.inclusions.push_back(make_inclusion(ShapeSpec::disk(), std::polar(s.uniform(0.1, 0.4), s.uniform(0, kTwoPi))));
  sc.forcing = Forcing::point_sources({{Point(-0.5, 0.1), 1.0}});
  sc.eps = 0.05;
  const auto a = solve_reference(sc);
  ReferenceOptions fine;
  fine.outer_sources *= 2;
  fine.inclusion_sources *= 2;
  const auto b = solve_reference(sc, fine);
  double diff = 0.0;
  const auto grid = remainder_grid(sc, GridSpec{8});
  for (std::size_t k = 0; k < grid.size() && k < 20; ++k) diff = std::max(diff, std::abs(a(grid[k]) - b(grid[k])));
  s.le("refinement stability", diff, 1e-7);

  std::vector<double> gap;
  const Point c = std::polar(s.uniform(0.1, 0.4), s.uniform(0, kTwoPi));
  for (double e : {0.1, 0.01, 0.001}) {
    Scene cap;
    cap.inclusions.push_back(make_inclusion(ShapeSpec::disk(), c));
    cap.eps = e;
    const auto r = solve_reference_data(cap, [](Point, int bnd) { return bnd < 0 ? 0.0 : 1.0; });
    gap.push_back(std::abs(r.inclusion_charge[0] / (kTwoPi / std::log(e)) - 1.0));
  }
  s.le("total inclusion charge tends to 2 pi / ln eps", std::max(gap[1] - gap[0], gap[2] - gap[1]), 0.0);
}

}  // namespace

ValidationReport run_validate(std::uint64_t seed, bool inject_failure) {
  ValidationReport report;
  report.seed = seed;
  Suite s(report, inject_failure, seed);
  conformal_suite(s);
  harmonic_ext_suite(s);
  harmonic_int_suite(s);
  profiles_suite(s);
  expansion_suite(s);
  reference_suite(s);
  return report;
}

}  // namespace smallholes
