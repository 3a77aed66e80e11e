#include <cmath>

#include "doctest.h"
#include "dressline/core_model.hpp"
#include "dressline/faddeeva.hpp"
#include "test_support.hpp"

using namespace dressline;
using dressline::testing::rel_err;
using cplx = std::complex<double>;

TEST_CASE("erfcx special values") {
  CHECK(erfcx_complex(cplx(0.0, 0.0)) == cplx(1.0, 0.0));
  CHECK(rel_err(erfcx_complex(cplx(10.0, 0.0)), cplx(0.056140992743822586, 0.0)) < 1e-15);
  CHECK(rel_err(erfcx_complex(cplx(1.0, 1.0)), cplx(0.30474420525691259, -0.20821893820283163)) < 1e-14);
  // real axis agrees with the standard library erfc
  for (double x : {0.01, 0.5, 1.0, 3.0, 5.0}) {
    CHECK(rel_err(erfcx_complex(cplx(x, 0.0)).real(), std::exp(x * x) * std::erfc(x)) < 1e-12);
  }
  // symmetry erfcx(conj z) = conj erfcx(z)
  const cplx z(0.7, 2.3);
  CHECK(std::abs(erfcx_complex(std::conj(z)) - std::conj(erfcx_complex(z))) < 1e-15);
}

TEST_CASE("erfcx against the high-precision reference grid") {
  const auto samples = dressline::testing::load_erfcx_reference(std::string(DRESSLINE_TEST_DATA) + "/erfcx_reference.csv");
  REQUIRE(samples.size() == 1000);
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, rel_err(erfcx_complex(s.z), s.value));
  CHECK(worst <= 1e-10);
}

TEST_CASE("erfcx asymptotic region") {
  // leading terms of the continued fraction, |z| = 2e4
  const cplx z(1.2e4, -1.6e4);
  const cplx approx = 1.0 / (constants::sqrt_pi * z) * (1.0 - 0.5 / (z * z));
  CHECK(rel_err(erfcx_complex(z), approx) < 1e-12);
}

TEST_CASE("erfcx rejects the left half-plane") {
  CHECK_THROWS_AS(erfcx_complex(cplx(-0.1, 1.0)), DomainError);
  CHECK_THROWS_AS(erfcx_complex(cplx(std::nan(""), 0.0)), DomainError);
}

TEST_CASE("reflected form") {
  // e^{z^2}[1 + erf z] for real z
  for (double x : {-2.0, -0.3, 0.0, 0.4, 1.5}) {
    CHECK(rel_err(erfcx_reflected(cplx(x, 0.0)).real(), std::exp(x * x) * (1.0 + std::erf(x))) < 1e-12);
  }
  const cplx z(-1.0, 0.5);
  CHECK(std::abs(erfcx_reflected(z) - erfcx_complex(-z)) < 1e-15);
  CHECK_THROWS_AS(erfcx_reflected(cplx(7.0, 0.0)), RegimeError);
}

TEST_CASE("Faddeeva function in the upper half-plane") {
  // w(iy) = erfcx(y)
  for (double y : {0.0, 0.2, 2.0, 5.0}) {
    CHECK(rel_err(faddeeva_upper(cplx(0.0, y)).real(), std::exp(y * y) * std::erfc(y)) < 1e-12);
  }
  // |w(x)| on the real axis: Re w(x) = exp(-x^2)
  CHECK(rel_err(faddeeva_upper(cplx(1.3, 0.0)).real(), std::exp(-1.69)) < 1e-13);
}
