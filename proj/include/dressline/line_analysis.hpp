#pragma once

#include <functional>

#include "dressline/core_model.hpp"

namespace dressline {

using SpectrumFunction = std::function<double(double)>;

class UnresolvedComponentError : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

struct PeakLocation {
  double position;
  double value;
};

// Grid argmax over [lo, hi] followed by Brent refinement.
PeakLocation locate_peak(const SpectrumFunction& f, double lo, double hi, std::size_t samples = 4001);

struct WidthMeasurement {
  PeakLocation peak;
  double left;   // half-maximum crossing below the peak
  double right;  // half-maximum crossing above the peak
  double fwhm() const noexcept { return right - left; }
};

// Half-maximum crossings found by walking the sample grid outward from the
// maximum and bisecting the bracketing interval to relative 1e-10. Throws
// RegimeError if a crossing is not inside [lo, hi].
WidthMeasurement measure_fwhm(const SpectrumFunction& f, double lo, double hi, std::size_t samples = 4001);

// Integration window for one component. lo/hi may be infinite; center and
// scale (a rough width) place the quadrature breakpoints and bound the
// resolution check.
struct ComponentWindow {
  double lo;
  double hi;
  double center;
  double scale;
};

// Adaptive Gauss-Kronrod area of f over the window to relative `rel_tol`.
// Throws UnresolvedComponentError if the window holds more than one distinct
// peak or cuts through the component (an edge above half the peak value).
double integrated_intensity(const SpectrumFunction& f, const ComponentWindow& window, double rel_tol = 1e-8);

}  // namespace dressline
