#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "smallholes/expansion.hpp"
#include "smallholes/profiles.hpp"

using namespace smallholes;

namespace {

auto unit_disk() { return std::make_shared<InteriorMap>(InteriorMap::identity()); }
auto shape(const ShapeSpec& s) { return std::make_shared<ExteriorMap>(build_exterior_map(s)); }

}  // namespace

TEST_SUITE("profiles") {
  TEST_CASE("concentric annulus") {
    for (double eps : {0.1, 0.05, 0.01}) {
      const Profile p = build_profile(unit_disk(), shape(ShapeSpec::disk()), 0.0, eps);
      CHECK(std::abs(p.w_center) < 1e-14);
      CHECK(p.h_eps == doctest::Approx(-1 / std::log(eps)).epsilon(1e-14));
      CHECK(evaluate_corrector(p, Point(0.5, 0)) == doctest::Approx(std::log(0.5)).epsilon(1e-13));
      CHECK(p.M < 1e-12);
    }
  }

  TEST_CASE("off-center disk: w(x_eps) = ln(1 - |x_eps|^2)") {
    const Point c(0.3, 0);
    const Profile p = build_profile(unit_disk(), shape(ShapeSpec::disk()), c, 0.05);
    CHECK(p.w_center == doctest::Approx(std::log(1 - 0.09)).epsilon(1e-12));
    auto data = [&](double t) { return std::log(std::abs(std::polar(1.0, t) - c)); };
    CHECK(p.w_center == doctest::Approx(oracle::poisson_disk(data, c)).epsilon(1e-8));
    for (Point x : {Point(-0.4, 0.2), Point(0.1, -0.7)})
      CHECK(p.w(x) == doctest::Approx(oracle::poisson_disk(data, x)).epsilon(1e-8));
  }

  TEST_CASE("ell equals ln eps on the inclusion boundary") {
    const Profile p = build_profile(unit_disk(), shape(ShapeSpec::ellipse(1, 2, 2)), 0.0, 0.05);
    for (int j = 0; j < 64; ++j) {
      const Point y = p.inclusion_point(2 * kPi * j / 64);
      CHECK(p.ell(y) == doctest::Approx(std::log(0.05)).epsilon(1e-10));
      CHECK(evaluate_corrector(p, y) == doctest::Approx(std::log(0.05) - p.w(y)).epsilon(1e-10));
    }
  }

  TEST_CASE("corrector on the outer boundary is bounded by M eps") {
    for (double eps : {0.1, 0.05, 0.025}) {
      const Profile p = build_profile(unit_disk(), shape(ShapeSpec::ellipse(1, 2, 2)), Point(0.2, -0.1), eps);
      for (int j = 0; j < 97; ++j)
        CHECK(std::abs(evaluate_corrector(p, std::polar(1.0, 0.61 * j))) <= p.M * eps * (1 + 1e-6) + 1e-14);
    }
  }

  TEST_CASE("h_eps is positive and decreases along a dyadic sweep") {
    double prev = 1e300;
    for (double eps = 0.1; eps > 0.001; eps /= 2) {
      const Profile p = build_profile(unit_disk(), shape(ShapeSpec::ellipse(1, 2, 2)), Point(0.3, 0), eps);
      CHECK(p.h_eps > 0);
      CHECK(p.h_eps < prev);
      CHECK(p.h_eps * (p.w_center - std::log(eps)) == doctest::Approx(1.0));
      prev = p.h_eps;
    }
  }

  TEST_CASE("corrector gradient and harmonicity") {
    const Profile p = build_profile(unit_disk(), shape(ShapeSpec::ellipse(1, 2, 2)), Point(0.3, 0), 0.05);
    for (Point x : {Point(-0.3, 0.4), Point(0.5, 0.5), Point(0.3, 0.2)}) {
      auto f = [&](Point y) { return p.corrector(y); };
      CHECK(std::abs(p.corrector_gradient(x) - oracle::fd_gradient(f, x)) < 1e-6);
      CHECK(std::abs(oracle::fd_laplacian(f, x, 1e-4)) < 1e-4);
    }
  }

  TEST_CASE("geometry and degeneracy errors") {
    CHECK_THROWS_AS(build_profile(unit_disk(), shape(ShapeSpec::disk()), Point(0.95, 0), 0.1), GeometryError);
    CHECK(inclusion_inside(InteriorMap::identity(), *shape(ShapeSpec::disk()), Point(0.85, 0), 0.1));
    CHECK_FALSE(inclusion_inside(InteriorMap::identity(), *shape(ShapeSpec::disk()), Point(0.95, 0), 0.1));
    // a large flat ellipse filling most of the disk: w - ln eps falls below 0.1
    const Profile p = build_profile(unit_disk(), shape(ShapeSpec::ellipse(1 / 9.9, 1 / 8.5, 1)), 0.0, 0.1);
    CHECK(1 / p.h_eps < 0.1);
    const auto zero_out = BoundaryFunction::zeros(64);
    const auto zero_in = BoundaryFunction::zeros(64, 0);
    CHECK_THROWS_AS(one_iteration(p, unit_disk(), zero_out, zero_in), ScaleDegeneracyError);
  }
}
