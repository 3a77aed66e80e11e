#include "dressline/faddeeva.hpp"

#include <cmath>

#include "dressline/core_model.hpp"

namespace dressline {
namespace {

constexpr double two_over_sqrt_pi = 1.12837916709551257389615890312154517;
constexpr double inv_sqrt_pi = 0.564189583547756286948079451560772586;

// Region-split evaluation after Poppe & Wijers (ACM TOMS 680): a Taylor series
// of e^{-z^2} erfc(-iz) near the origin, Laplace continued fraction far out,
// and a truncated Taylor expansion about z + ih in between. x, y >= 0.
std::complex<double> faddeeva_first_quadrant(double xabs, double yabs) {
  const double x = xabs / 6.3;
  const double y = yabs / 4.4;
  double qrho = x * x + y * y;
  const double xquad = xabs * xabs - yabs * yabs;
  const double yquad = 2.0 * xabs * yabs;

  double u = 0.0;
  double v = 0.0;
  if (qrho < 0.085264) {
    qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -two_over_sqrt_pi * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = two_over_sqrt_pi * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    const double u2 = daux * std::cos(yquad);
    const double v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0;
    double h2 = 0.0;
    int kapn = 0;
    int nu = 0;
    if (qrho > 1.0) {
      qrho = std::sqrt(qrho);
      nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
    } else {
      qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
      h = 1.88 * qrho;
      h2 = 2.0 * h;
      kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
      nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
    }
    const bool taylor = h > 0.0;
    double qlambda = taylor ? std::pow(h2, kapn) : 0.0;
    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const double np1 = n + 1.0;
      double tx = yabs + h + np1 * rx;
      const double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (taylor && n <= kapn) {
        tx = qlambda + sx;
        sx = rx * tx - ry * sy;
        sy = ry * tx + rx * sy;
        qlambda /= h2;
      }
    }
    if (taylor) {
      u = two_over_sqrt_pi * sx;
      v = two_over_sqrt_pi * sy;
    } else {
      u = two_over_sqrt_pi * rx;
      v = two_over_sqrt_pi * ry;
    }
    if (yabs == 0.0) u = std::exp(-xabs * xabs);
  }
  return {u, v};
}

// w(z) ~ i / (sqrt(pi) z) * (1 + 1/(2z^2) + 3/(4z^4) + 15/(8z^6)) for |z| > 1e4.
std::complex<double> faddeeva_asymptotic(std::complex<double> z) {
  const std::complex<double> r = 1.0 / (z * z);
  const std::complex<double> series = 1.0 + r * (0.5 + r * (0.75 + r * 1.875));
  return std::complex<double>(0.0, inv_sqrt_pi) / z * series;
}

}  // namespace

std::complex<double> faddeeva_upper(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("faddeeva: non-finite argument");
  }
  if (z.imag() < 0.0) throw DomainError("faddeeva_upper: Im z must be >= 0");
  if (std::abs(z) > 1e4) return faddeeva_asymptotic(z);
  const std::complex<double> w = faddeeva_first_quadrant(std::abs(z.real()), z.imag());
  // w(-x + iy) = conj(w(x + iy))
  return z.real() < 0.0 ? std::conj(w) : w;
}

std::complex<double> erfcx_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("erfcx_complex: non-finite argument");
  }
  if (z.real() < 0.0) throw DomainError("erfcx_complex: Re z must be >= 0");
  // e^{z^2} erfc(z) = w(iz), and Im(iz) = Re z >= 0.
  return faddeeva_upper(std::complex<double>(-z.imag(), z.real()));
}

std::complex<double> erfcx_reflected(std::complex<double> z) {
  if (z.real() <= 0.0) return erfcx_complex(-z);
  const std::complex<double> z2 = z * z;
  if (z2.real() > 30.0) {
    throw RegimeError("erfcx_reflected: Re(z^2) > 30 with Re z > 0; e^{z^2}[1 + erf z] overflows the safe range");
  }
  return 2.0 * std::exp(z2) - erfcx_complex(z);
}

}  // namespace dressline
