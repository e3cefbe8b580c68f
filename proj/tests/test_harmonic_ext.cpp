#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smallholes/harmonic_ext.hpp"

using namespace smallholes;

namespace {

std::shared_ptr<const ExteriorMap> shared(const ShapeSpec& s) {
  return std::make_shared<ExteriorMap>(build_exterior_map(s));
}

}  // namespace

TEST_SUITE("harmonic_ext") {
  TEST_CASE("constants and a single mode on the disk") {
    auto disk = shared(ShapeSpec::disk());
    const auto c = solve_exterior(disk, BoundaryFunction::sample(64, [](double) { return 5.0; }, 0));
    CHECK(c.psi0() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(c(Point(7, -3)) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(tail_sup(c, 1, 3.0) == 0.0);
    CHECK(std::abs(contour_mean_check(c) - Complex(5.0)) < 1e-12);

    const auto f = solve_exterior(disk, BoundaryFunction::sample(64, [](double t) { return std::cos(t); }, 0));
    CHECK(std::abs(f.psi0()) < 1e-15);
    CHECK(evaluate_exterior(f, Point(2, 0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f(std::polar(3.0, 1.1)) == doctest::Approx(std::cos(1.1) / 3).epsilon(1e-13));
    CHECK(tail_sup(f, 2, 4.0) < 1e-15);
    CHECK(std::abs(contour_mean_check(f)) < 1e-10);
  }

  TEST_CASE("zero-mean modes have psi0 = 0 on any map") {
    for (const auto& s : {ShapeSpec::disk(), ShapeSpec::ellipse(1, 2, 2),
                          ShapeSpec::laurent_series({1.2, 0.1, Complex(0.1, 0.05), -0.03})}) {
      const auto m = build_exterior_map(s);
      CHECK(std::abs(psi0_of(m, BoundaryFunction::sample(128, [](double t) { return std::sin(3 * t); }, 0))) < 1e-14);
    }
  }

  TEST_CASE("ellipse, F = X1: matches an exterior MFS solve") {
    auto m = shared(ShapeSpec::ellipse(1, 2, 2));
    const auto field = solve_exterior(m, sample_on_inclusion(*m, 256, [](Point y) { return y.real(); }));
    CHECK(std::abs(field.psi0()) < 1e-14);
    const auto bnd = oracle::curve([](double t) { return Point(2 * std::cos(t), std::sin(t)); }, 400);
    const auto mfs = oracle::exterior_mfs(bnd, [](Point y) { return y.real(); }, 0.9, 200);
    CHECK(std::abs(mfs.c) < 1e-9);
    for (Point X : {Point(10, 0), Point(3, 1), Point(0, 2), Point(-2.2, -0.5)})
      CHECK(field(X) == doctest::Approx(mfs(X)).epsilon(1e-6));
  }

  TEST_CASE("psi0 agrees with the surface-integral form and the circle mean") {
    auto m = shared(ShapeSpec::ellipse(1, 2, 2));
    auto F = [](Point y) { return y.real() * y.real(); };
    const auto field = solve_exterior(m, sample_on_inclusion(*m, 256, F));
    // (1/2pi) oint F |T'| ds along the ellipse (2 cos s, sin s), with |T'|
    // from central differences of the forward map just outside the boundary
    // extrapolated to it.
    const int n = 2000;
    double integral = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = 2 * oracle::pi * j / n;
      const Point y(2 * std::cos(s), std::sin(s));
      const Point tangent(-2 * std::sin(s), std::cos(s));
      const double h = 1e-6;
      const double jac = std::abs(m->forward(Point(2 * std::cos(s + h), std::sin(s + h))) -
                                  m->forward(Point(2 * std::cos(s - h), std::sin(s - h)))) /
                         (2 * h * std::abs(tangent));
      integral += F(y) * jac * std::abs(tangent);
    }
    integral *= (2 * oracle::pi / n) / (2 * oracle::pi);
    CHECK(field.psi0() == doctest::Approx(integral).epsilon(1e-8));
    CHECK(field.psi0() == doctest::Approx(2.0).epsilon(1e-14));

    double circle = 0.0;
    for (int j = 0; j < 512; ++j) circle += field(std::polar(6.0, 2 * oracle::pi * j / 512));
    CHECK(circle / 512 == doctest::Approx(field.psi0()).epsilon(1e-10));
    CHECK(std::abs(contour_mean_check(field).real() - field.psi0()) < 1e-8);
  }

  TEST_CASE("laurent shape: psi0 matches the MFS value at infinity") {
    auto m = shared(ShapeSpec::laurent_series({1.2, 0.1, Complex(0.1, 0.05), -0.03}));
    auto F = [](Point y) { return std::sin(y.real()) + y.imag() * y.imag(); };
    const auto field = solve_exterior(m, sample_on_inclusion(*m, 256, F));
    // boundary straight from the inverse series, independent of the library
    const auto bnd = oracle::curve(
        [](double t) {
          const Complex w = std::polar(1.0, t);
          return 1.2 * w + 0.1 + Complex(0.1, 0.05) / w - 0.03 / (w * w);
        },
        400);
    const auto mfs = oracle::exterior_mfs(bnd, F, 0.5, 120);
    CHECK(field.psi0() == doctest::Approx(mfs.c).epsilon(1e-8));
    CHECK(field(Point(4, 1)) == doctest::Approx(mfs(Point(4, 1))).epsilon(1e-8));
  }

  TEST_CASE("bounds on random data") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    auto m = shared(ShapeSpec::ellipse(1, 2, 2));
    int psi_violations = 0, max_violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> a(9), b(9);
      for (int k = 0; k < 9; ++k) a[k] = n01(rng), b[k] = n01(rng);
      const auto F = BoundaryFunction::sample(
          256,
          [&](double t) {
            double v = a[0];
            for (int k = 1; k < 9; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
            return v;
          },
          0);
      const auto field = solve_exterior(m, F);
      if (std::abs(field.psi0()) > F.sup_norm()) ++psi_violations;
      if (std::abs(contour_mean_check(field).real() - field.psi0()) > 1e-8) ++psi_violations;
      for (int ir = 0; ir < 6; ++ir)
        for (int j = 0; j < 32; ++j)
          if (std::abs(field(std::polar(2.05 + ir, 2 * oracle::pi * j / 32))) > 2 * F.sup_norm()) ++max_violations;
    }
    CHECK(psi_violations == 0);
    CHECK(max_violations == 0);
  }

  TEST_CASE("tail bound and far field") {
    auto m = shared(ShapeSpec::ellipse(1, 2, 2));
    const auto field = solve_exterior(m, sample_on_inclusion(*m, 256, [](Point y) { return y.real() * y.real(); }));
    double prev = 1e300;
    for (double r : {5.0, 10.0, 20.0}) {
      const double t = tail_sup(field, 1, r);
      CHECK(t <= prev);
      CHECK(t <= 2 * field.sup_norm());
      prev = t;
    }
    const double R = 1e6 * m->validity_radius();
    CHECK(std::abs(field(Point(R, 0)) - field.psi0()) <= 2 * field.sup_norm() / 1e6);
  }

  TEST_CASE("gradient and domain checks") {
    auto m = shared(ShapeSpec::ellipse(1, 2, 2));
    const auto field = solve_exterior(m, sample_on_inclusion(*m, 256, [](Point y) { return y.real() * y.imag(); }));
    for (Point X : {Point(2.5, 0.3), Point(-1, 1.4)}) {
      const Complex fd = oracle::fd_gradient([&](Point p) { return field(p); }, X);
      CHECK(std::abs(field.gradient(X) - fd) < 1e-7);
    }
    CHECK_THROWS_AS(field(Point(0.5, 0.2)), DomainError);
  }

  TEST_CASE("undersampled data raises the resolution warning") {
    auto m = shared(ShapeSpec::disk());
    CHECK(solve_exterior(m, BoundaryFunction::sample(32, [](double t) { return std::cos(14 * t); }, 0))
              .resolution_warning());
    CHECK_FALSE(solve_exterior(m, BoundaryFunction::sample(32, [](double t) { return std::cos(2 * t); }, 0))
                    .resolution_warning());
  }
}
