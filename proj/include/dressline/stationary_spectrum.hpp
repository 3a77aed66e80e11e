#pragma once

// Probe emission probability w_mu(Omega_mu) for an atom at rest,
//   w_mu = 2 gamma_l \int_0^\infty |a_l(t)|^2 dt,
// to first order in G_mu and exactly in G. w_mu is dimensionless; it is not
// renormalised to unit area.

#include <complex>
#include <span>
#include <vector>

#include "dressline/core_model.hpp"
#include "dressline/dressed_dynamics.hpp"

namespace dressline {

struct SpectrumPoint {
  double Omega_mu;
  double w;
};

// Complex pieces of the weak-field expression. The physical density is
// prefactor * Re(stepwise + raman); each of stepwise/raman already includes its
// interference part when requested.
struct WeakFieldBreakdown {
  double prefactor;                  // |G G_mu|^2 / |gamma_n - gamma_m + i Omega|^2
  complex stepwise;                  // [1/gamma_m - 2/(Gamma + i Omega)] / (gamma_l + gamma_m + i Omega_mu)
  complex raman;                     // [1/gamma_n - 2/(Gamma - i Omega)] / (gamma_l + gamma_n + i (Omega_mu - Omega))
  complex stepwise_interference;     // the -2/(Gamma + i Omega) part of `stepwise`
  complex raman_interference;        // the -2/(Gamma - i Omega) part of `raman`
};

struct WeakFieldResult {
  double w;
  WeakFieldBreakdown breakdown;
  double regime_ratio;  // G / |Omega - i gamma|; the expansion needs this << 1
};

double w_mu_exact(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                  double Omega_mu, ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Same as w_mu_exact with a precomputed pair (already sign-adjusted).
double w_mu_from_pair(const DressedPair& pair, double gamma_l, double G_mu, double Omega_mu);

WeakFieldResult w_mu_weak(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                          double Omega_mu, bool include_interference = true,
                          ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Pointwise w_mu_exact over a strictly increasing grid. Output order follows the
// grid; `threads` > 1 splits the grid into contiguous chunks.
std::vector<SpectrumPoint> scan_spectrum(const LevelScheme& scheme, const DriveField& drive,
                                         const ProbeField& probe, std::span<const double> grid,
                                         ProcessKind kind = ProcessKind::RamanUpperIntermediate,
                                         unsigned threads = 1);

std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace dressline
