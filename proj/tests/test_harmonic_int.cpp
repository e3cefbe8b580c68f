#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smallholes/harmonic_int.hpp"

using namespace smallholes;

namespace {

auto identity() { return std::make_shared<InteriorMap>(InteriorMap::identity()); }

}  // namespace

TEST_SUITE("harmonic_int") {
  TEST_CASE("constants, cos theta and its gradient") {
    const auto c = solve_interior(identity(), BoundaryFunction::sample(64, [](double) { return 3.0; }));
    CHECK(c(Point(0.3, -0.2)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(c.gradient(Point(0.1, 0.4))) < 1e-14);

    const auto f = solve_interior(identity(), BoundaryFunction::sample(64, [](double t) { return std::cos(t); }));
    CHECK(std::abs(evaluate_interior(f, 0.0)) < 1e-15);
    CHECK(f(std::polar(0.6, 0.8)) == doctest::Approx(0.6 * std::cos(0.8)).epsilon(1e-14));
    CHECK(std::abs(evaluate_gradient(f, Point(0.2, 0.5)) - Complex(1, 0)) < 1e-14);
  }

  TEST_CASE("logarithm of an exterior point is reproduced") {
    const Point p(2, 0);
    const auto f = solve_interior(identity(), sample_on_outer(InteriorMap::identity(), 256,
                                                              [&](Point y) { return std::log(std::abs(y - p)); }));
    double err = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const Point x(-1 + (i + 0.5) / 10, -1 + (j + 0.5) / 10);
        if (std::abs(x) < 1) err = std::max(err, std::abs(f(x) - std::log(std::abs(x - p))));
      }
    CHECK(err < 1e-8);
  }

  TEST_CASE("random data against the Poisson integral") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n01;
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> a(9), b(9);
    for (int k = 0; k < 9; ++k) a[k] = n01(rng), b[k] = n01(rng);
    auto phi = [&](double t) {
      double v = a[0];
      for (int k = 1; k < 9; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
      return v;
    };
    const auto field = solve_interior(identity(), BoundaryFunction::sample(128, phi));
    for (int k = 0; k < 20; ++k) {
      const Point x = std::polar(0.9 * std::sqrt(u(rng)), 2 * oracle::pi * u(rng));
      CHECK(field(x) == doctest::Approx(oracle::poisson_disk(phi, x)).epsilon(1e-7));
    }
    CHECK(field(0.0) == doctest::Approx(a[0]).epsilon(1e-13));
    const Complex fd = oracle::fd_gradient([&](Point p) { return field(p); }, 0.0);
    CHECK(std::abs(field.gradient(0.0) - fd) < 1e-6);
  }

  TEST_CASE("series domain: mean value at the preimage of 0 and harmonicity") {
    auto d = std::make_shared<InteriorMap>(InteriorMap::from_inverse_series({0.1, 1.0, 0.15}));
    auto phi = [](Point y) { return y.real() * y.real() - y.imag() * y.imag() + y.imag(); };
    const auto field = solve_interior(d, sample_on_outer(*d, 256, phi));
    for (Point x : {Point(0.1, 0.0), Point(0.3, 0.4), Point(-0.5, -0.2)})
      CHECK(field(x) == doctest::Approx(phi(x)).epsilon(1e-10));
    const auto g = solve_interior(d, sample_on_outer(*d, 256, [](Point y) { return std::exp(y.real()) * std::cos(y.imag()) + y.real() * y.real(); }));
    double mean = 0.0;
    for (int j = 0; j < 256; ++j) {
      const Point y = d->boundary_point(2 * oracle::pi * j / 256);
      mean += std::exp(y.real()) * std::cos(y.imag()) + y.real() * y.real();
    }
    CHECK(g(d->inverse(0.0)) == doctest::Approx(mean / 256).epsilon(1e-12));
    CHECK_THROWS_AS(field(Point(3, 0)), DomainError);
  }

  TEST_CASE("maximum principle") {
    const auto phi = BoundaryFunction::sample(256, [](double t) { return std::cos(5 * t) + 0.3 * std::sin(t); });
    const auto field = solve_interior(identity(), phi);
    for (int j = 0; j < 500; ++j) {
      const Point x = std::polar(0.999 * j / 500, 0.37 * j);
      CHECK(std::abs(field(x)) <= 1.3);
    }
  }
}
