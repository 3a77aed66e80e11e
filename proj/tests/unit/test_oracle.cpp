#include <cmath>

#include "doctest.h"
#include "dressline/oracle.hpp"
#include "dressline/stationary_spectrum.hpp"
#include "test_support.hpp"

using namespace dressline;
using dressline::testing::rel_err;

TEST_CASE("time-domain oracle basics") {
  const LevelScheme s(1.0, 2.0, 0.5);
  CHECK(w_mu_time_domain(s, DriveField(0.0, 1.0), ProbeField(1.0), 0.3).w == 0.0);

  // weak field at rest: agrees with the perturbative form within its regime
  const DriveField weak(1e-3, 4.0);
  for (double x : {-2.0, 0.0, 4.0}) {
    CHECK(rel_err(w_mu_time_domain(s, weak, ProbeField(1.0), x).w, w_mu_weak(s, weak, ProbeField(1.0), x).w) < 1e-4);
  }

  OdeSettings tight;
  tight.verify = true;
  const TimeDomainResult r = w_mu_time_domain(s, DriveField(2.0, 1.0), ProbeField(1.0), 0.5, {0, 0, 0}, tight);
  CHECK(r.horizon == doctest::Approx(40.0 / 0.5));
  CHECK(r.steps > 0);
  // a further refinement moves the value by less than the reported estimate
  OdeSettings tighter = tight;
  tighter.rel_tol *= 0.01;
  tighter.abs_tol *= 0.01;
  tighter.verify = false;
  const double refined = w_mu_time_domain(s, DriveField(2.0, 1.0), ProbeField(1.0), 0.5, {0, 0, 0}, tighter).w;
  CHECK(std::abs(refined - r.w) <= std::max(r.error_estimate, 1e-14));

  // the lower-order integrator agrees
  OdeSettings dp;
  dp.order = IntegratorOrder::DormandPrince5;
  const double w5 = w_mu_time_domain(s, DriveField(2.0, 1.0), ProbeField(1.0), 0.5, {0, 0, 0}, dp).w;
  CHECK(rel_err(w5, r.w) < 1e-8);

  OdeSettings bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(w_mu_time_domain(s, DriveField(1.0, 1.0), ProbeField(1.0), 0.0, {0, 0, 0}, bad), DomainError);
}

TEST_CASE("moving atom picks up Doppler shifts") {
  const LevelScheme s(1.0, 1.5, 0.5);
  const DriveField d(2.0, 3.0, 2.0);
  const ProbeField p(1.0, 1.0, 0.0);
  // velocity v along x: Omega -> Omega - 2 v, Omega_mu -> Omega_mu - v
  const double v = 0.7;
  const double moving = w_mu_time_domain(s, d, p, 1.0, {v, 0.0, 0.0}).w;
  const double shifted = w_mu_exact(s, d.with_Omega(3.0 - 2.0 * v), p, 1.0 - v);
  CHECK(rel_err(moving, shifted) < 1e-7);
  // velocity along z is invisible
  CHECK(rel_err(w_mu_time_domain(s, d, p, 1.0, {0.0, 0.0, 5.0}).w, w_mu_exact(s, d, p, 1.0)) < 1e-7);
}

TEST_CASE("population decay along the numerical trajectory") {
  const LevelScheme s(0.6, 1.4, 1.0);
  const DriveField d(3.0, -2.0);
  std::vector<double> times;
  for (int i = 0; i <= 400; ++i) times.push_back(0.01 * i);
  const auto traj = time_domain_amplitudes(s, d, times);
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const double P_prev = std::norm(traj[i - 1].a_n) + std::norm(traj[i - 1].a_m);
    const double P_next = std::norm(traj[i + 1].a_n) + std::norm(traj[i + 1].a_m);
    const double dPdt = (P_next - P_prev) / 0.02;
    const double rhs = -2.0 * 1.4 * std::norm(traj[i].a_n) - 2.0 * 0.6 * std::norm(traj[i].a_m);
    CHECK(rhs <= 0.0);
    CHECK(std::abs(dPdt - rhs) < 1e-3);
  }
  CHECK_THROWS_AS(time_domain_amplitudes(s, d, {1.0, 0.5}), DomainError);
}

TEST_CASE("velocity averages of simple integrands") {
  const DopplerGeometry g{1.3, 0.7, 1.0};
  QuadratureSettings q;
  q.order = 96;
  CHECK(velocity_average([](double, double) { return 2.5; }, g, q).value == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(velocity_average([](double, double) { return 2.5; }, g, q).dimensions == 2);

  // <exp(-(k.v)^2/c^2)> = c / sqrt(c^2 + D^2)
  const double c = 0.9;
  auto f = [&](double kv, double) { return std::exp(-kv * kv / (c * c)); };
  CHECK(velocity_average(f, g, q).value == doctest::Approx(c / std::hypot(c, 1.3)).epsilon(1e-12));
  // observed projection k_mu.v has Doppler scale 0.7 regardless of theta
  auto h = [&](double, double kmv) { return std::exp(-kmv * kmv / (c * c)); };
  CHECK(velocity_average(h, g, q).value == doctest::Approx(c / std::hypot(c, 0.7)).epsilon(1e-12));
  // correlation <(k.v)(k_mu.v)> = D D_mu cos(theta) / 2
  auto corr = [](double a, double b) { return a * b; };
  CHECK(velocity_average(corr, g, q).value == doctest::Approx(1.3 * 0.7 * std::cos(1.0) / 2.0).epsilon(1e-12));

  // collinear geometry runs in one dimension
  const QuadratureResult one = velocity_average(corr, {1.3, 0.7, constants::pi}, q);
  CHECK(one.dimensions == 1);
  CHECK(one.value == doctest::Approx(-1.3 * 0.7 / 2.0).epsilon(1e-12));

  QuadratureSettings small;
  small.order = 4;
  CHECK_THROWS_AS(velocity_average(corr, g, small), DomainError);
}

TEST_CASE("doubling check") {
  // a Lorentzian much narrower than the Doppler scale is not resolved by 16 nodes
  auto narrow = [](double kv, double) { return 0.01 / (0.0001 + kv * kv); };
  QuadratureSettings q;
  q.order = 16;
  q.doubling = true;
  CHECK_THROWS_AS(velocity_average(narrow, {1.0, 0.0, 0.0}, q), ConvergenceError);

  auto smooth = [](double kv, double) { return 1.0 / (1.0 + kv * kv); };
  q.order = 256;
  const QuadratureResult r = velocity_average(smooth, {1.0, 0.0, 0.0}, q);
  REQUIRE(r.doubled.has_value());
  CHECK(r.relative_change < 1e-9);
}

TEST_CASE("exact strong-field integrand approaches the linearised one") {
  const LevelScheme s(1.0, 1.0, 0.5);
  const DriveField d(200.0, 5.0, 1.0);
  const ProbeField p(1.0, 1.2, 1.0);
  auto a = strong_doublet_integrand(s, d, p, 150.0);
  auto b = strong_doublet_exact_integrand(s, d, p, 150.0);
  for (double kv : {-1.0, 0.0, 0.5}) CHECK(rel_err(b(kv, 0.3 * kv), a(kv, 0.3 * kv)) < 1e-3);
}

TEST_CASE("certify outcomes") {
  CertificationCase c{LevelScheme(1.0, 2.0, 0.5), DriveField(3.0, 4.0), ProbeField(1.0), ThermalEnsemble(1.0)};
  c.ode.verify = true;
  const CertificationReport pass = certify(ClosedForm::Eq2_6, c, 1e-6);
  CHECK(pass.outcome == CertificationOutcome::Pass);
  CHECK(pass.max_deviation < 1e-6);
  CHECK(pass.points == default_certification_grid(ClosedForm::Eq2_6, c).size());

  const CertificationReport tight = certify(ClosedForm::Eq2_6, c, 1e-14);
  CHECK(tight.outcome == CertificationOutcome::ToleranceUnattainable);
  CHECK(std::isnan(tight.max_deviation));

  // weak-field form with a strong drive
  CHECK(certify(ClosedForm::Eq2_7, c, 1e-4).outcome == CertificationOutcome::RegimeViolation);

  // triplet below its regime
  CertificationCase t{LevelScheme(1.0, 1.0, 1.0), DriveField(3.0, 0.0, 1.0), ProbeField(1.0, 1.0, 0.5),
                      ThermalEnsemble(1.0)};
  const CertificationReport r = certify(ClosedForm::Eq5_2, t, 1e-6);
  CHECK(r.outcome == CertificationOutcome::RegimeViolation);
  CHECK_FALSE(r.note.empty());
  CHECK(format_report_record(r).find("\"regime_violation\"") != std::string::npos);

  // a deliberately loose quadrature fails rather than passing silently
  CertificationCase w{LevelScheme(0.05, 0.05, 0.05), DriveField(0.1, 50.0, 1.0), ProbeField(1.0, 1.0, 1.0),
                      ThermalEnsemble(2.0)};
  w.quadrature.order = 16;
  CHECK(certify(ClosedForm::Eq3_2, w, 1e-8).outcome == CertificationOutcome::Fail);

  CHECK(closed_form_from_id("eq4_2") == ClosedForm::Eq4_2);
  CHECK_THROWS_AS(closed_form_from_id("eq9_9"), DomainError);
  CHECK_THROWS_AS(certify(ClosedForm::Eq2_6, c, 0.0), DomainError);
}
