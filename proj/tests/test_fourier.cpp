#include <doctest.h>

#include <cmath>

#include "smallholes/convergence.hpp"
#include "smallholes/fourier.hpp"

using namespace smallholes;

TEST_SUITE("fourier") {
  TEST_CASE("coefficients of a trigonometric polynomial") {
    const auto f = BoundaryFunction::sample(64, [](double t) { return 2 + 3 * std::cos(t) - std::sin(4 * t); });
    CHECK(f.fourier()[0].real() == doctest::Approx(2).epsilon(1e-14));
    CHECK(f.fourier()[1].real() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(f.fourier()[4].imag() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f.mean() == doctest::Approx(2).epsilon(1e-14));
    CHECK(f.value_at(0.3) == doctest::Approx(2 + 3 * std::cos(0.3) - std::sin(1.2)).epsilon(1e-13));
    CHECK_FALSE(f.under_resolved());
  }

  TEST_CASE("sizes must be powers of two") {
    CHECK_THROWS(BoundaryFunction::from_samples(std::vector<double>(48, 1.0)));
    CHECK_THROWS(BoundaryFunction::from_samples(std::vector<double>(16, 1.0)));
    CHECK_NOTHROW(BoundaryFunction::from_samples(std::vector<double>(32, 1.0)));
  }

  TEST_CASE("under-resolved data is flagged") {
    const auto f = BoundaryFunction::sample(32, [](double t) { return std::cos(12 * t); });
    CHECK(f.under_resolved());
  }

  TEST_CASE("arithmetic") {
    const auto a = BoundaryFunction::sample(32, [](double t) { return std::cos(t); });
    const auto b = BoundaryFunction::sample(32, [](double t) { return std::sin(t); });
    const auto c = 2.0 * a + b;
    CHECK(c.value_at(1.0) == doctest::Approx(2 * std::cos(1.0) + std::sin(1.0)).epsilon(1e-13));
    CHECK(c.sup_norm() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-2));
  }

  TEST_CASE("log-log slope and variation") {
    std::vector<double> x{0.1, 0.05, 0.025}, y;
    for (double e : x) y.push_back(3 * e * e);
    CHECK(loglog_slope(x, y) == doctest::Approx(2).epsilon(1e-12));
    CHECK(variation({1.0, 1.2, 0.8}) == doctest::Approx(0.5));
    CHECK(max_over_min({2.0, 4.0}) == doctest::Approx(2.0));
  }
}
