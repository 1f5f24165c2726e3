#pragma once

#include <vector>

#include "bosecorr/convolution.hpp"
#include "bosecorr/lattice_potential.hpp"

namespace bosecorr {

struct ScatteringOptions {
  double tol = 1e-11;
  int max_iter = 200;
  ConvMethod method = ConvMethod::Auto;
};

// Solution of
//   p^2 eta_p + (1/2N) sum_{q in ball} v^_N^beta(p - q) eta_q = -v^_N^beta(p)/2
// on a lattice ball, with eta_0 = 0.
struct ScatteringSolution {
  std::vector<double> eta;
  double N = 0.0;
  double beta = 0.0;
  int iterations = 0;
  double residual_norm = 0.0;
  double final_damping = 1.0;
  // max_p |p^2 eta_p + v^(p)/2|, the size of the correction to first Born
  double born_deviation = 0.0;
  // max_p p^2 |eta_p| / v^(0); the bound |eta_p| <= v^(0)/p^2 holds iff <= 1
  double decay_ratio = 0.0;
};

// Damped fixed-point iteration started from the first Born term. The damping
// factor starts at 1 and is halved whenever the residual grows.
// Throws NonConvergence when the residual is still above tol after max_iter.
ScatteringSolution solve_eta(const LatticeBall& ball, const ScaledPotentialTable& vt,
                             const ScatteringOptions& opt = {});
ScatteringSolution solve_eta(const Potential& pot, const LatticeBall& ball, double N, double beta, double tol = 1e-11,
                             int max_iter = 200);

// (1/2N)(v^ * eta)_p over the ball, q = p included
std::vector<double> scattering_convolution(const LatticeBall& ball, const ScaledPotentialTable& vt,
                                           const std::vector<double>& eta, ConvMethod method = ConvMethod::Auto);

// max-norm defect of the scattering equation for a given eta table
double residual(const std::vector<double>& eta, const ScaledPotentialTable& vt, const LatticeBall& ball,
                ConvMethod method = ConvMethod::Auto);
double residual(const ScatteringSolution& sol, const ScaledPotentialTable& vt, const LatticeBall& ball);

// first Born closure beyond the cutoff: -v^_N^beta(p) / (2 p^2)
double eta_tail(const Potential& pot, double N, double beta, double pabs);

std::vector<double> born_eta(const LatticeBall& ball, const ScaledPotentialTable& vt);

struct ScatteringLength {
  double a = 0.0;           // box scattering length
  double excess = 0.0;      // (1/N) sum_p v^(p) eta_p, i.e. 8 pi a - v^(0)
  double tail_estimate = 0.0;  // Born-closure estimate of the sum beyond the ball
  bool below_vhat0 = true;  // 8 pi a < v^(0) (or kappa = 0)
};

ScatteringLength scattering_length(const ScatteringSolution& sol, const ScaledPotentialTable& vt,
                                   const LatticeBall& ball);

}  // namespace bosecorr
