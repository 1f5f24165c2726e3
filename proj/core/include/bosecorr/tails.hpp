#pragma once

#include <functional>

namespace bosecorr {

// Radius of the continuum ball whose volume (in n-units) equals the number of
// lattice points it replaces: M ball points plus the zero mode.
double effective_radius(std::size_t ball_points);

// Continuum estimate of sum_{|q| > R_eff} g(|q|):
//   (1 / 2 pi^2) int_{R_eff}^{upper} q^2 g(q) dq
// Log-spaced Gauss-Legendre panels, additionally capped in width by `scale`
// so oscillating integrands are resolved.
double radial_tail(const std::function<double(double)>& g, double r_eff, double upper, double scale);

// Continuum estimate of sum_{|q| > R_eff} k(|p - q|) g(|q|) for |p| = p:
//   (1 / 4 pi^2) int q^2 g(q) dq int_{-1}^{1} k(sqrt(p^2 + q^2 - 2 p q t)) dt
double convolution_tail(double p, const std::function<double(double)>& k, const std::function<double(double)>& g,
                        double r_eff, double upper, double scale);

// Tail of a lattice sum whose summand behaves like C |p|^{-s} (s > 3),
// estimated from the summand magnitude at the boundary radius:
//   C K^{3-s} / ((s - 3) 2 pi^2).
double power_law_tail(double boundary_value, double K, double s);

}  // namespace bosecorr
