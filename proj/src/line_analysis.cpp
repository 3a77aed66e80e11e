#include "dressline/line_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

namespace dressline {
namespace {

std::vector<double> sample(const SpectrumFunction& f, double lo, double hi, std::size_t n, std::vector<double>& xs) {
  xs.resize(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    ys[i] = f(xs[i]);
  }
  return ys;
}

double bisect_half(const SpectrumFunction& f, double inside, double outside, double level) {
  // f(inside) >= level > f(outside)
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (f(mid) >= level) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return 0.5 * (inside + outside);
}

void check_window(double lo, double hi, std::size_t samples) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("line analysis: window must be finite with hi > lo");
  }
  if (samples < 3) throw DomainError("line analysis: need at least 3 samples");
}

}  // namespace

PeakLocation locate_peak(const SpectrumFunction& f, double lo, double hi, std::size_t samples) {
  check_window(lo, hi, samples);
  std::vector<double> xs;
  const std::vector<double> ys = sample(f, lo, hi, samples, xs);
  const auto best = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[best + 1 >= samples ? samples - 1 : best + 1];
  const auto [x, neg] = boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, a, b, 52);
  if (-neg >= ys[best]) return {x, -neg};
  return {xs[best], ys[best]};
}

WidthMeasurement measure_fwhm(const SpectrumFunction& f, double lo, double hi, std::size_t samples) {
  check_window(lo, hi, samples);
  const PeakLocation peak = locate_peak(f, lo, hi, samples);
  if (!(peak.value > 0.0)) throw RegimeError("measure_fwhm: spectrum has no positive maximum in window");
  const double level = 0.5 * peak.value;
  const double step = (hi - lo) / static_cast<double>(samples - 1);

  auto crossing = [&](double direction) {
    double inside = peak.position;
    for (std::size_t i = 1; i < 4 * samples; ++i) {
      const double x = peak.position + direction * step * static_cast<double>(i);
      if (x < lo - 0.5 * step || x > hi + 0.5 * step) break;
      if (f(x) < level) return bisect_half(f, inside, x, level);
      inside = x;
    }
    throw RegimeError("measure_fwhm: half maximum not reached inside the window");
  };
  return {peak, crossing(-1.0), crossing(+1.0)};
}

double integrated_intensity(const SpectrumFunction& f, const ComponentWindow& window, double rel_tol) {
  if (!(window.hi > window.lo)) throw DomainError("integrated_intensity: window must have hi > lo");
  if (!(window.scale > 0.0)) throw DomainError("integrated_intensity: scale must be > 0");
  if (!(window.center >= window.lo && window.center <= window.hi)) {
    throw DomainError("integrated_intensity: center outside window");
  }

  // Resolution check on the finite part of the window around the component.
  const double scan_lo = std::max(window.lo, window.center - 50.0 * window.scale);
  const double scan_hi = std::min(window.hi, window.center + 50.0 * window.scale);
  std::vector<double> xs;
  const std::vector<double> ys = sample(f, scan_lo, scan_hi, 4001, xs);
  const double peak = *std::max_element(ys.begin(), ys.end());
  if (!(peak > 0.0)) throw RegimeError("integrated_intensity: no positive signal in window");

  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    if (ys[i] >= ys[i - 1] && ys[i] > ys[i + 1] && ys[i] > 0.05 * peak) maxima.push_back(static_cast<double>(i));
  }
  for (std::size_t m = 1; m < maxima.size(); ++m) {
    const auto i0 = static_cast<std::size_t>(maxima[m - 1]);
    const auto i1 = static_cast<std::size_t>(maxima[m]);
    const double dip = *std::min_element(ys.begin() + static_cast<long>(i0), ys.begin() + static_cast<long>(i1) + 1);
    if (dip < 0.8 * std::min(ys[i0], ys[i1])) {
      throw UnresolvedComponentError(
          "integrated_intensity: window holds more than one component; integrate the full spectrum instead");
    }
  }
  if ((std::isfinite(window.lo) && f(window.lo) > 0.5 * peak) ||
      (std::isfinite(window.hi) && f(window.hi) > 0.5 * peak)) {
    throw UnresolvedComponentError(
        "integrated_intensity: window edge above half maximum; component not isolated, use the full-spectrum area");
  }

  std::vector<double> cuts{window.lo, window.hi};
  for (double offset : {-20.0, -2.0, 0.0, 2.0, 20.0}) {
    const double x = window.center + offset * window.scale;
    if (x > window.lo && x < window.hi) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double error = 0.0;
    area += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return f(x); }, cuts[i], cuts[i + 1], 20, rel_tol, &error);
  }
  return area;
}

}  // namespace dressline
