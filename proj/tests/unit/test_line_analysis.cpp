#include <cmath>
#include <limits>

#include "doctest.h"
#include "dressline/line_analysis.hpp"

using namespace dressline;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
double lorentz(double x, double c, double h) { return h / (constants::pi * (h * h + (x - c) * (x - c))); }
}  // namespace

TEST_CASE("peak and width of analytic profiles") {
  auto L = [](double x) { return lorentz(x, 1.25, 0.4); };
  const WidthMeasurement w = measure_fwhm(L, -10.0, 10.0);
  CHECK(w.peak.position == doctest::Approx(1.25).epsilon(1e-8));
  CHECK(w.fwhm() == doctest::Approx(0.8).epsilon(1e-9));

  auto G = [](double x) { return std::exp(-(x + 2.0) * (x + 2.0) / 9.0); };
  const WidthMeasurement g = measure_fwhm(G, -20.0, 20.0);
  CHECK(g.peak.position == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(g.fwhm() == doctest::Approx(2.0 * std::sqrt(std::log(2.0)) * 3.0).epsilon(1e-9));
}

TEST_CASE("width errors") {
  auto L = [](double x) { return lorentz(x, 0.0, 1.0); };
  CHECK_THROWS_AS(measure_fwhm(L, -0.5, 0.5), RegimeError);
  CHECK_THROWS_AS(measure_fwhm([](double) { return 0.0; }, -1.0, 1.0), RegimeError);
  CHECK_THROWS_AS(measure_fwhm(L, 1.0, -1.0), DomainError);
}

TEST_CASE("integrated intensity") {
  auto L = [](double x) { return lorentz(x, 3.0, 0.01); };
  CHECK(integrated_intensity(L, {-inf, inf, 3.0, 0.01}) == doctest::Approx(1.0).epsilon(1e-8));
  auto G = [](double x) { return std::exp(-x * x); };
  CHECK(integrated_intensity(G, {-inf, inf, 0.0, 1.0}) == doctest::Approx(constants::sqrt_pi).epsilon(1e-10));

  auto two = [](double x) { return lorentz(x, -5.0, 0.5) + lorentz(x, 5.0, 0.5); };
  CHECK_THROWS_AS(integrated_intensity(two, {-inf, inf, -5.0, 0.5}), UnresolvedComponentError);
  // window through the middle of a line
  CHECK_THROWS_AS(integrated_intensity(L, {3.0, inf, 3.1, 0.01}), UnresolvedComponentError);
  CHECK_THROWS_AS(integrated_intensity(L, {-inf, inf, 3.0, 0.0}), DomainError);
}
