#pragma once

#include <complex>

namespace dressline {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im z >= 0.
std::complex<double> faddeeva_upper(std::complex<double> z);

// Scaled complementary error function e^{z^2} erfc(z) = e^{z^2}[1 - Phi(z)]
// for Re z >= 0. Throws DomainError for Re z < 0 or non-finite input.
std::complex<double> erfcx_complex(std::complex<double> z);

// e^{z^2}[1 + Phi(z)] = erfcx(-z). Uses erfcx(-z) for Re z <= 0 and
// 2 e^{z^2} - erfcx(z) for Re z > 0 when Re(z^2) <= 30; throws RegimeError
// beyond, where the value itself grows like e^{Re z^2}.
std::complex<double> erfcx_reflected(std::complex<double> z);

}  // namespace dressline
