#include "doctest.h"
#include "dressline/core_model.hpp"
#include "test_support.hpp"

using namespace dressline;
using dressline::testing::rel_err;

TEST_CASE("rabi_from_field") {
  CHECK(rabi_from_field(0.0, 123.0) == 0.0);
  CHECK(rabi_from_field(3.0e-30, 0.0) == 0.0);
  // 1 Debye in 1 MV/m; d E / (2 hbar) evaluated in 50-digit arithmetic.
  CHECK(rel_err(rabi_from_field(3.33564e-30, 1e6), 15815139122.004433) < 1e-14);
  CHECK_THROWS_AS(rabi_from_field(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rabi_from_field(1.0, -1.0), DomainError);
}

TEST_CASE("vbar_from_temperature") {
  const double mass = 1.0e-26;
  const double T_unit = mass / (2.0 * constants::boltzmann);
  CHECK(rel_err(vbar_from_temperature(T_unit, mass), 1.0) < 1e-15);
  CHECK(rel_err(vbar_from_temperature(4.0 * 300.0, mass), 2.0 * vbar_from_temperature(300.0, mass)) < 1e-15);
  // Neon at 300 K, high-precision reference.
  CHECK(rel_err(vbar_from_temperature(300.0, 3.3509e-26), 497.2061968724464) < 1e-14);
  for (double T : {1e-3, 1.0, 300.0, 1e5}) {
    CHECK(rel_err(temperature_from_vbar(vbar_from_temperature(T, mass), mass), T) < 1e-12);
  }
  CHECK_THROWS_AS(vbar_from_temperature(0.0, mass), DomainError);
  CHECK_THROWS_AS(vbar_from_temperature(300.0, -1.0), DomainError);

  const ThermalEnsemble e = ThermalEnsemble::from_temperature(300.0, 3.3509e-26);
  CHECK(e.vbar() == vbar_from_temperature(300.0, 3.3509e-26));
  REQUIRE(e.temperature().has_value());
  CHECK(*e.temperature() == 300.0);
  CHECK_THROWS_AS(ThermalEnsemble(0.0), DomainError);
}

TEST_CASE("process signs") {
  using K = ProcessKind;
  const auto [a, b] = apply_process_signs(K::RamanUpperIntermediate, 2.0, -3.0);
  CHECK(a == 2.0);
  CHECK(b == -3.0);

  // luminescence: the Raman combination Omega_mu - Omega becomes Omega_mu + Omega
  const auto [c, d] = apply_process_signs(K::TwoQuantumLuminescence, 2.0, 3.0);
  CHECK(d - c == doctest::Approx(2.0 + 3.0));

  for (K kind : {K::TwoQuantumLuminescence, K::TwoQuantumAbsorption, K::RamanLowerIntermediate}) {
    CHECK(process_signs(kind).drive * process_signs(kind).probe != 0);
    const auto [x, y] = apply_process_signs(kind, 1.5, -0.25);
    const auto [x2, y2] = apply_process_signs(kind, x, y);
    CHECK(x2 == 1.5);
    CHECK(y2 == -0.25);
    CHECK(process_kind_from_string(to_string(kind)) == kind);
  }
  CHECK(process_signs(K::RamanUpperIntermediate).product() == 1);
  CHECK(process_signs(K::RamanLowerIntermediate).product() == 1);
  CHECK(process_signs(K::TwoQuantumLuminescence).product() == -1);
  CHECK(process_signs(K::TwoQuantumAbsorption).product() == -1);
  CHECK_THROWS_AS(process_kind_from_string("stokes"), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(LevelScheme(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(LevelScheme(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(LevelScheme(1.0, 1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(DriveField(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ProbeField(-1.0), DomainError);
  CHECK_THROWS_AS(ProbeField(1.0, 1.0, -0.1), DomainError);
  CHECK_THROWS_AS(ProbeField(1.0, 1.0, 3.2), DomainError);
  CHECK_NOTHROW(ProbeField(1.0, 1.0, constants::pi));

  const LevelScheme s = LevelScheme(1.0, 2.0, 3.0).with_frequencies(10.0, 25.0);
  REQUIRE(s.omega_ln().has_value());
  CHECK(*s.omega_ln() == 15.0);
  CHECK_FALSE(LevelScheme(1.0, 2.0, 3.0).omega_ln().has_value());
  CHECK_THROWS_AS(LevelScheme(1.0, 2.0, 3.0).with_frequencies(-1.0, 2.0), DomainError);
  CHECK(s.with_gamma_l(0.5).gamma_l() == 0.5);
}
