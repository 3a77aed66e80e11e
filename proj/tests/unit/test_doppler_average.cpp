#include <cmath>
#include <limits>

#include "doctest.h"
#include "dressline/doppler_average.hpp"
#include "dressline/line_analysis.hpp"
#include "dressline/oracle.hpp"
#include "dressline/stationary_spectrum.hpp"
#include "test_support.hpp"

using namespace dressline;
using dressline::testing::Random;
using dressline::testing::rel_err;

namespace {
constexpr double pi = constants::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("effective wave vector") {
  CHECK(effective_q(1.0, 1.0, pi, 1.0).q == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(effective_q(1.0, 1.0, 0.0, 1.0).q == 0.0);
  CHECK(effective_q(1.0, 0.5, 0.0, 0.5).q == 0.0);
  CHECK(effective_q(3.0, 1.7, 1.1, 0.0).q == 1.7);
  CHECK(effective_q(1.0, 1.5, pi / 3.0, 1.0).q == doctest::Approx(std::sqrt(1.0 + 2.25 - 1.5)).epsilon(1e-14));

  Random rng(3);
  for (int i = 0; i < 100; ++i) {
    const double k = rng.uniform(0.0, 3.0), kmu = rng.uniform(0.0, 3.0), M = rng.uniform(0.0, 1.0);
    double previous = -1.0;
    for (int j = 0; j <= 20; ++j) {
      const double q = effective_q(k, kmu, pi * j / 20.0, M).q;
      CHECK(q >= previous - 1e-15);
      previous = q;
    }
  }
  // luminescence reverses the angular dependence
  const auto lum = ProcessKind::TwoQuantumLuminescence;
  CHECK(effective_q(1.0, 3.0, pi, 0.5, lum).q == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(effective_q(1.0, 3.0, 0.0, 0.5, lum).q == doctest::Approx(3.5).epsilon(1e-14));

  CHECK_THROWS_AS(effective_q(1.0, 1.0, 4.0, 0.5), DomainError);
  CHECK_THROWS_AS(effective_q(1.0, 1.0, 1.0, 1.5), DomainError);
  CHECK_THROWS_AS(effective_q(-1.0, 1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("averaged resonance against quadrature") {
  QuadratureSettings s;
  s.order = 8192;
  for (const complex c : {complex(1.0, 0.0), complex(0.5, 3.0), complex(2.0, -1.0)}) {
    for (double D : {0.1, 1.0, 4.0}) {
      auto f = [&](double kv, double) { return std::real(1.0 / (c - complex(0.0, kv))); };
      const double numeric = velocity_average(f, {D, 0.0, 0.0}, s).value;
      CHECK(rel_err(doppler_averaged_resonance(c, D).real(), numeric) < 1e-9);
    }
  }
  CHECK(doppler_averaged_resonance(complex(2.0, 1.0), 0.0) == 1.0 / complex(2.0, 1.0));
  // the asymptotic branch joins the erfcx branch smoothly
  const complex c(3.0, 4.0);
  CHECK(rel_err(doppler_averaged_resonance(c, 5e-12 * 0.99), doppler_averaged_resonance(c, 5e-12 * 1.01)) < 1e-10);
  CHECK(voigt_parameters(complex(0.3, -2.0), 0.5).p.real() > 0.0);
  CHECK_THROWS_AS(doppler_averaged_resonance(complex(0.0, 1.0), 1.0), DomainError);
  CHECK_THROWS_AS(voigt_parameters(complex(1.0, 0.0), 0.0), DomainError);
}

TEST_CASE("weak doublet: Gaussian and Lorentzian limits") {
  const ProbeField probe(1.0, 1.0, pi);
  const DriveField drive(0.01, 500.0, 1.0);
  SUBCASE("Gaussian") {
    const LevelScheme s(0.01, 0.01, 0.01);
    const ThermalEnsemble e(10.0);  // k_mu vbar = 10 >= 100 natural widths (0.04)
    const double Ds = 10.0, Dr = 20.0;
    const WeakDoubletTerms peak = doppler_weak_gaussian(s, drive, probe, e, 0.0);
    const WeakDoubletTerms peak_r = doppler_weak_gaussian(s, drive, probe, e, 500.0);
    for (double u : linear_grid(-2.0, 2.0, 41)) {
      const WeakDoubletTerms a = doppler_weak_terms(s, drive, probe, e, u * Ds);
      const WeakDoubletTerms g = doppler_weak_gaussian(s, drive, probe, e, u * Ds);
      CHECK(std::abs(a.stepwise - g.stepwise) <= 0.01 * peak.stepwise);
      const WeakDoubletTerms ar = doppler_weak_terms(s, drive, probe, e, 500.0 + u * Dr);
      const WeakDoubletTerms gr = doppler_weak_gaussian(s, drive, probe, e, 500.0 + u * Dr);
      CHECK(std::abs(ar.raman - gr.raman) <= 0.01 * peak_r.raman);
    }
    // peak-height ratio raman/stepwise = k_mu gamma_m / (q gamma_n)
    const LevelScheme u(0.01, 0.02, 0.01);
    const WeakDoubletTerms hs = doppler_weak_gaussian(u, drive, probe, e, 0.0);
    const WeakDoubletTerms hr = doppler_weak_gaussian(u, drive, probe, e, 500.0);
    CHECK(hr.raman / hs.stepwise == doctest::Approx(1.0 * 0.01 / (2.0 * 0.02)).epsilon(1e-12));
  }
  SUBCASE("Lorentzian") {
    const LevelScheme s(1.0, 2.0, 0.5);
    const ThermalEnsemble e(0.01);  // Doppler scales 0.01, 0.02 << natural widths 1.5, 2.5
    for (double x : linear_grid(-15.0, 15.0, 31)) {
      const WeakDoubletTerms a = doppler_weak_terms(s, drive, probe, e, x);
      const WeakDoubletTerms ar = doppler_weak_terms(s, drive, probe, e, 500.0 + x);
      const double pre = 1e-4 / (500.0 * 500.0);
      CHECK(rel_err(a.stepwise, pre * 1.5 / (1.0 * (1.5 * 1.5 + x * x))) < 0.01);
      CHECK(rel_err(ar.raman, pre * 2.5 / (2.0 * (2.5 * 2.5 + x * x))) < 0.01);
    }
  }
}

TEST_CASE("weak doublet: forward Raman component is exactly Lorentzian") {
  const LevelScheme s(0.5, 0.7, 0.2);
  const DriveField d(0.05, 60.0, 2.0);
  const ProbeField p(1.0, 2.0, 0.0);
  const ThermalEnsemble e(3.0);
  for (double x : {55.0, 59.0, 60.0, 61.5, 70.0}) {
    const double expected = 0.0025 / 3600.0 * std::real(1.0 / (0.7 * complex(0.9, x - 60.0)));
    CHECK(rel_err(doppler_weak_terms(s, d, p, e, x).raman, expected) < 1e-14);
  }
}

TEST_CASE("weak doublet against 2-D quadrature") {
  const LevelScheme s(0.8, 0.4, 0.3);
  const DriveField d(0.1, 40.0, 1.0);
  const ProbeField p(1.0, 1.3, 2.0);
  const ThermalEnsemble e(1.5);
  QuadratureSettings q;
  q.order = 512;
  q.doubling = true;
  for (double x : linear_grid(-6.0, 46.0, 27)) {
    const double numeric =
        velocity_average(weak_doublet_integrand(s, d, p, x), doppler_geometry(d, p, e), q).value;
    CHECK(rel_err(doppler_weak_doublet(s, d, p, e, x), numeric) < 1e-8);
  }
  CHECK_THROWS_AS(doppler_weak_doublet(s, DriveField(0.1, 0.0, 1.0), p, e, 0.0), RegimeError);
}

TEST_CASE("strong doublet") {
  const LevelScheme s(1.0, 1.0, 0.5);
  const ThermalEnsemble e(1.0);
  SUBCASE("symmetric at resonance") {
    const DriveField d(20.0, 0.0, 1.0);
    const ProbeField p(1.0, 1.0, 1.0);
    for (double x : {0.5, 5.0, 19.0, 20.0, 30.0}) {
      CHECK(rel_err(doppler_strong_doublet(s, d, p, e, x), doppler_strong_doublet(s, d, p, e, -x)) < 1e-12);
    }
    auto first = [&](double x) { return doppler_strong_terms(s, d, p, e, x).first; };
    CHECK(locate_peak(first, 5.0, 40.0).position == doctest::Approx(20.0).epsilon(1e-6));
  }
  SUBCASE("separation and quadrature") {
    const DriveField d(15.0, 8.0, 1.0);
    const ProbeField p(1.0, 1.4, 2.2);
    const StrongDoubletTerms t = doppler_strong_terms(s, d, p, e, 0.0);
    CHECK(t.total() == doctest::Approx(doppler_strong_doublet(s, d, p, e, 0.0)));
    const DressedPair pair = dressed_exponents(s, d);
    auto first = [&](double x) { return doppler_strong_terms(s, d, p, e, x).first; };
    auto second = [&](double x) { return doppler_strong_terms(s, d, p, e, x).second; };
    const double c1 = locate_peak(first, pair.alpha1.imag() - 10.0, pair.alpha1.imag() + 10.0).position;
    const double c2 = locate_peak(second, pair.alpha2.imag() - 10.0, pair.alpha2.imag() + 10.0).position;
    CHECK(c1 - c2 == doctest::Approx(std::sqrt(64.0 + 900.0)).epsilon(1e-6));

    QuadratureSettings q;
    q.order = 256;
    q.doubling = true;
    for (double x : linear_grid(-30.0, 40.0, 15)) {
      const double numeric =
          velocity_average(strong_doublet_integrand(s, d, p, x), doppler_geometry(d, p, e), q).value;
      CHECK(rel_err(doppler_strong_doublet(s, d, p, e, x), numeric) < 1e-6);
    }
  }
  SUBCASE("reduces to the weak doublet") {
    const LevelScheme u(0.6, 0.9, 0.3);
    const DriveField d(0.02, 25.0, 1.0);
    const ProbeField p(1.0, 1.2, 1.3);
    for (double x : linear_grid(-5.0, 30.0, 36)) {
      CHECK(rel_err(doppler_strong_doublet(u, d, p, e, x), doppler_weak_doublet(u, d, p, e, x)) < 1e-4);
    }
  }
  SUBCASE("natural-width line when k_mu = M k") {
    const DriveField d(10.0, 7.5, 2.0);
    const MemoryFactors M = memory_factors(d);
    const ProbeField p(1.0, M.M2 * 2.0, 0.0);
    const DressedPair pair = dressed_exponents(s, d);
    auto second = [&](double x) { return doppler_strong_terms(s, d, p, ThermalEnsemble(5.0), x).second; };
    const WidthMeasurement w = measure_fwhm(second, pair.alpha2.imag() - 20.0, pair.alpha2.imag() + 20.0);
    CHECK(w.fwhm() == doctest::Approx(2.0 * (0.5 + pair.alpha2.real())).epsilon(1e-6));
  }
}

TEST_CASE("fluorescence triplet") {
  const LevelScheme s(1.0, 1.0, 1.0);
  const DriveField d(100.0, 2.0, 1.0);
  const ThermalEnsemble e(1.0);
  SUBCASE("centres, heights and areas at theta = 0") {
    auto f = [&](double x) { return fluorescence_triplet(s, d, e, 0.0, x); };
    const double lo = locate_peak(f, -250.0, -150.0).position;
    const double mid = locate_peak(f, -50.0, 50.0).position;
    const double hi = locate_peak(f, 150.0, 250.0).position;
    CHECK(lo - 2.0 == doctest::Approx(-200.0).epsilon(1e-4));
    CHECK(mid == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(hi - 2.0 == doctest::Approx(200.0).epsilon(1e-4));
    CHECK(f(mid) / f(hi) == doctest::Approx(2.0).epsilon(1e-3));
    // each component is a Lorentzian of half-width Gamma
    const TripletTerms t = fluorescence_triplet_terms(s, d, e, 0.0, 3.0);
    CHECK(rel_err(t.central, 2.0 / (4.0 * pi) * 2.0 / (4.0 + 1.0)) < 1e-14);
  }
  SUBCASE("unit area with weights 1:2:1") {
    const double theta = 1.2;
    auto comp = [&](int which) {
      return [&, which](double x) {
        const TripletTerms t = fluorescence_triplet_terms(s, d, e, theta, x);
        return which == 0 ? t.lower : which == 1 ? t.central : t.upper;
      };
    };
    const double a0 = integrated_intensity(comp(0), {-inf, inf, -198.0, 3.0});
    const double a1 = integrated_intensity(comp(1), {-inf, inf, 2.0, 3.0});
    const double a2 = integrated_intensity(comp(2), {-inf, inf, 202.0, 3.0});
    CHECK(a0 == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(a1 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(a2 == doctest::Approx(0.25).epsilon(1e-6));
  }
  SUBCASE("against quadrature") {
    QuadratureSettings q;
    q.order = 128;
    q.doubling = true;
    for (double x : linear_grid(-210.0, 210.0, 43)) {
      const double numeric = velocity_average(triplet_integrand(s, d, x), {1.0, 1.0, 2.0}, q).value;
      CHECK(rel_err(fluorescence_triplet(s, d, e, 2.0, x), numeric) < 1e-9);
    }
  }
  CHECK_THROWS_AS(fluorescence_triplet(s, d, e, -0.1, 0.0), DomainError);
}

TEST_CASE("triplet resonance positions") {
  const LevelScheme s(1.0, 1.0, 1.0);
  SUBCASE("strong field collapses to three points") {
    const DriveField d(1000.0, 0.0);
    const auto r = triplet_resonance_positions(dressed_exponents(s, d), 1.0, 1.0, 0.5);
    CHECK(r[0].center == 0.0);
    CHECK(r[1].center == 0.0);
    CHECK(r[2].center == doctest::Approx(2000.0));
    CHECK(r[3].center == doctest::Approx(-2000.0));
    CHECK(r[2].half_width == 2.0);
    CHECK(r[2].vector == DopplerVector::Probe);
  }
  SUBCASE("no field") {
    const DriveField d(0.0, 5.0);
    const auto r = triplet_resonance_positions(dressed_exponents(s, d), 1.0, 1.0, 0.5);
    std::vector<double> centres{r[0].center, r[1].center, r[2].center, r[3].center};
    CHECK(centres[0] == 5.0);
    CHECK(centres[1] == 5.0);
    std::sort(centres.begin() + 2, centres.end());
    CHECK(centres[2] == doctest::Approx(0.0));
    CHECK(centres[3] == doctest::Approx(10.0));
  }
}

TEST_CASE("regime ratios") {
  const RegimeRatios r = regime_ratios(LevelScheme(1.0, 2.0, 0.5), DriveField(3.0, 4.0, 2.0), ThermalEnsemble(0.5));
  CHECK(r.weak_field == doctest::Approx(3.0 / std::sqrt(17.0)));
  CHECK(r.detuning_over_doppler == doctest::Approx(4.0));
  CHECK(r.field_over_doppler == doctest::Approx(3.0));
  CHECK(r.triplet == doctest::Approx(0.75));
  const DopplerScales d = doppler_scales(DriveField(1.0, 0.0, 2.0), ProbeField(1.0, 3.0), ThermalEnsemble(0.5));
  CHECK(d.drive == 1.0);
  CHECK(d.probe == 1.5);
}
