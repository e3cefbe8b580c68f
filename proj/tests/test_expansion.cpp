#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "smallholes/expansion.hpp"

using namespace smallholes;

namespace {

Scene single(const ShapeSpec& shape, Point c, Forcing f, double eps) {
  Scene s;
  s.inclusions.push_back(make_inclusion(shape, c));
  s.forcing = std::move(f);
  s.eps = eps;
  return s;
}

}  // namespace

TEST_SUITE("expansion") {
  TEST_CASE("u0 closed forms") {
    Scene s = single(ShapeSpec::disk(), Point(0.3, 0), Forcing::zero(), 0.05);
    const U0Field zero = u0_of(s);
    CHECK(std::abs(zero(Point(0.2, 0.1))) < 1e-15);

    s.forcing = Forcing::constant(4.0);
    const U0Field quad = u0_of(s);
    for (Point x : {Point(0, 0), Point(0.5, -0.3), Point(-0.7, 0.6)})
      CHECK(quad(x) == doctest::Approx(1 - std::norm(x)).epsilon(1e-12));

    const Point src(0.4, 0);
    s.forcing = Forcing::point_sources({{src, 1.0}});
    const U0Field g = u0_of(s);
    double err = 0.0;
    for (int i = 0; i < 30; ++i)
      for (int j = 0; j < 30; ++j) {
        const Point x(-1 + (i + 0.5) / 15, -1 + (j + 0.5) / 15);
        if (std::abs(x) >= 1 || std::abs(x - src) < 0.05) continue;
        const double closed = (std::log(std::abs(x - src)) - std::log(std::abs(src) * std::abs(x - src / std::norm(src)))) /
                              (2 * oracle::pi);
        err = std::max(err, std::abs(g(x) - closed));
        CHECK(g(x) == doctest::Approx(-oracle::green_disk(x, src)).epsilon(1e-10));
      }
    CHECK(err < 1e-8);
  }

  TEST_CASE("particular solutions solve the Poisson equation") {
    const Forcing c = Forcing::constant(2.5);
    const Forcing p = Forcing::point_sources({{Point(0.1, 0.2), 1.5}, {Point(-0.5, 0), -0.7}});
    for (Point x : {Point(0.4, -0.3), Point(-0.2, 0.6)}) {
      CHECK(-oracle::fd_laplacian([&](Point y) { return c.particular(y); }, x) == doctest::Approx(2.5).epsilon(1e-6));
      CHECK(std::abs(oracle::fd_laplacian([&](Point y) { return p.particular(y); }, x, 1e-4)) < 1e-5);
      CHECK(std::abs(p.particular_gradient(x) - oracle::fd_gradient([&](Point y) { return p.particular(y); }, x)) < 1e-7);
    }
  }

  TEST_CASE("zero data gives a zero expansion") {
    const Scene s = single(ShapeSpec::ellipse(1, 2, 2), Point(0.3, 0), Forcing::zero(), 0.05);
    const Profile p = build_profiles(s)[0];
    const auto it = one_iteration(p, s.domain, BoundaryFunction::zeros(256), BoundaryFunction::zeros(256, 0));
    CHECK(it.weight == 0.0);
    CHECK(it.next_phi.sup_norm() == 0.0);
    CHECK(it.next_f.sup_norm() == 0.0);
    const Expansion e = expand_single(s, 0);
    CHECK(e.evaluate(Point(-0.2, 0.5)) == 0.0);
    CHECK(boundary_residual(e).max() == 0.0);
  }

  TEST_CASE("annulus capacity data") {
    for (double eps : {0.1, 0.05, 0.025}) {
      const Scene s = single(ShapeSpec::disk(), 0.0, Forcing::zero(), eps);
      const auto f1 = BoundaryFunction::sample(256, [](double) { return 1.0; }, 0);
      const Expansion e = expand_single_with_data(s, 0, BoundaryFunction::zeros(256), f1);
      CHECK(evaluate_expansion(e, Point(0.5, 0)) == doctest::Approx(std::log(0.5) / std::log(eps)).epsilon(1e-12));
      CHECK(e.residual_history[0].max() < 1e-10);
    }
  }

  TEST_CASE("recursion bookkeeping") {
    const Scene s = single(ShapeSpec::ellipse(1, 2, 2), Point(0.3, 0),
                           Forcing::point_sources({{Point(-0.5, 0), 1.0}}), 0.05);
    const Expansion e = expand_single(s, 2);
    REQUIRE(e.terms.size() == 9);
    REQUIRE(e.residual_history.size() == 3);
    for (int k = 0; k <= 2; ++k) {
      const ResidualReport r = boundary_residual(e, k);
      CHECK(r.outer == doctest::Approx(e.residual_history[k].outer).epsilon(1e-6));
      CHECK(r.inclusions[0] == doctest::Approx(e.residual_history[k].inclusions[0]).epsilon(1e-6));
    }
    CHECK(e.residual_history[2].max() < e.residual_history[1].max());
    CHECK(e.residual_history[1].max() < e.residual_history[0].max());
    // level 0 is u0, level k keeps orders 0..k-1
    const Point x(-0.1, 0.4);
    CHECK(evaluate_level(e, x, 0) == doctest::Approx((*e.u0)(x)));
    CHECK(evaluate_level(e, x, 2) == doctest::Approx(e.evaluate(x, 1)));
    CHECK_THROWS_AS(e.evaluate(Point(0.3, 0)), DomainError);
  }

  TEST_CASE("corrector weight versus the simplified formula") {
    // exact for a disk by the mean value property
    {
      const Scene s = single(ShapeSpec::disk(), Point(0.3, 0), Forcing::point_sources({{Point(-0.5, 0), 1.0}}), 0.05);
      const Expansion e = expand_single(s, 0);
      CHECK(e.weights[0] == doctest::Approx((*e.u0)(e.profiles[0].center) * e.profiles[0].h_eps).epsilon(1e-12));
    }
    // a shape whose conformal center is shifted: the gap is O(eps)
    double prev = 1e300;
    for (double eps : {0.05, 0.025, 0.0125, 0.00625}) {
      const Scene s = single(ShapeSpec::laurent_series({1.0, 0.4, 0.1}), Point(0.3, 0),
                             Forcing::point_sources({{Point(-0.5, 0), 1.0}}), eps);
      const Expansion e = expand_single(s, 0);
      const Profile& p = e.profiles[0];
      const double simple = (*e.u0)(p.center) * p.h_eps;
      const double gap = std::abs(e.weights[0] - simple) / std::abs(simple);
      CHECK(gap < prev);
      CHECK(gap < 5 * eps * std::abs(std::log(eps)));
      prev = gap;
    }
  }

  TEST_CASE("multi-inclusion: N = 1 matches the single expansion") {
    const Scene s = single(ShapeSpec::disk(), Point(0.3, 0), Forcing::point_sources({{Point(-0.5, 0), 1.0}}), 0.05);
    const Expansion m = expand_multi(s);
    const Expansion e = expand_single(s, 0);
    CHECK(m.evaluate(Point(0.1, 0.5)) == doctest::Approx(e.evaluate(Point(0.1, 0.5))));
  }

  TEST_CASE("multi-inclusion: reflection symmetry") {
    Scene s;
    s.inclusions.push_back(make_inclusion(ShapeSpec::disk(), Point(0.4, 0)));
    s.inclusions.push_back(make_inclusion(ShapeSpec::disk(), Point(-0.4, 0)));
    s.forcing = Forcing::point_sources({{Point(0, 0.6), 1.0}});
    s.eps = 0.02;
    const Expansion e = expand_multi(s);
    CHECK(std::abs(e.coefficients[0] - e.coefficients[1]) < 1e-12 * std::abs(e.coefficients[0]));
    for (Point x : {Point(0.2, 0.3), Point(0.7, -0.1), Point(0.05, -0.6)})
      CHECK(std::abs(e.evaluate(x) - e.evaluate(Point(-x.real(), x.imag()))) < 1e-10);
    const ResidualReport r = boundary_residual(e);
    CHECK(r.max() < 0.01);
  }

  TEST_CASE("zero scene") {
    Scene s;
    s.inclusions.push_back(make_inclusion(ShapeSpec::disk(), Point(0.2, 0.2)));
    s.inclusions.push_back(make_inclusion(ShapeSpec::disk(), Point(-0.2, -0.3)));
    s.forcing = Forcing::zero();
    s.eps = 0.05;
    const Expansion e = expand_multi(s);
    CHECK(e.evaluate(Point(0.5, 0.1)) == 0.0);
  }
}
