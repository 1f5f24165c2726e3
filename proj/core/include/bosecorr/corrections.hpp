#pragma once

#include <string>
#include <vector>

#include "bosecorr/quadratic.hpp"

namespace bosecorr {

// Symmetric cubic vertex f(p, q) built from the tables at p, q and p + q
// (all three must be nonzero and inside the ball).
double f_pq(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball, const IVec3& p,
            const IVec3& q);

// Coefficients at one momentum, so f can also be evaluated where p + q
// leaves the ball (first Born closure, tau = 0 there).
struct ModeCoeffs {
  double v, c, s, ct, st, e;
};
ModeCoeffs coeffs_at(const BogoliubovTables& t, const ScaledPotentialTable& vt, std::size_t i);
ModeCoeffs born_coeffs(const ScaledPotentialTable& vt, int n2);
double f_value(const ModeCoeffs& a, const ModeCoeffs& b, const ModeCoeffs& ab);

struct EPertResult {
  double value = 0.0;       // -(6/N) sum f^2 / (e(p+q) + e(p) + e(q)), p, q in the K2 ball
  std::size_t pairs = 0;
  std::size_t fallback_pairs = 0;  // p + q outside the K ball
};

EPertResult e_pert_tilde(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball,
                         const LatticeBall& ball2);

// <chi_0, G_2 chi_0> as the sum of two Wick pairings of the quartic term:
// `direct` from the anomalous <a a> contractions (weights s~ c~), `exchange`
// from the normal <a+ a> contractions (weights s~^2).
struct G2Expectation {
  double direct = 0.0;
  double exchange = 0.0;
  double value = 0.0;
  double certificate = 0.0;  // N |value|
};

G2Expectation g2_expectation(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball,
                             ConvMethod method = ConvMethod::Auto);

struct CConstant {
  double C1_sc_eta = 0.0;   // (1/2) sum (s c - eta)
  double C1_bog = 0.0;      // v^(0)^2 sum 1 / (S0 (p^2 + S0))
  double C1 = 0.0, C2 = 0.0, C = 0.0;
  double tail_estimate = 0.0;
};

double c1_bog_summand(double p2, double v0);
double c2_summand(double c, double s, double ct, double st);
CConstant c_constant(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball);

// sum_p v^_N^beta(p)^2 / (2 p^2): lattice part and continuum remainder
struct BornSum {
  double ball = 0.0;
  double tail = 0.0;
  double total() const { return ball + tail; }
};
BornSum born2_sum(const ScaledPotentialTable& vt, const LatticeBall& ball);

struct ECorr {
  double value = 0.0;       // uses the full Born sum
  double value_ball = 0.0;  // Born sum restricted to the ball
};
ECorr e_corr(const CConstant& C, const BornSum& S, double N);

// eta_p + tau_p = (1/4) ln((p^2 - X) / (p^2 + 2 v^ + X))
double eta_plus_tau(double p2, double vhat_p, double cs_conv_p, double N);
SumWithTail depletion(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball);

struct RunParams {
  Potential pot;
  double N = 1e4;
  double beta = 0.75;
  double K = 40.0 * kPi;
  double K2 = 20.0 * kPi;
  ScatteringOptions scattering;
};

struct EnergyReport {
  RunParams params;
  std::size_t ball_points = 0, ball2_points = 0;

  double a_box = 0.0;
  double a_excess = 0.0;  // 8 pi a - v^(0)
  double a_tail = 0.0;
  double leading = 0.0;
  double E00 = 0.0, E00_tail = 0.0;
  E01Parts E01;
  CConstant Cnb;
  BornSum born2;
  ECorr Ecorr;
  G2Expectation g2;
  EPertResult e_pert;
  double e_pert_reduced = 0.0;  // C2 * (-(1/2N) sum v^2 / 2p^2)
  double E0 = 0.0, E0_tail = 0.0;
  ConstantC Cconst;
  double total_A = 0.0, total_B = 0.0;
  double route_discrepancy = 0.0;
  double corr_vs_expansion = 0.0;  // E_corr - (E01 + e_pert + g2)
  double depletion = 0.0, depletion_tail = 0.0;

  int scattering_iterations = 0;
  double scattering_residual = 0.0;
  double t_scatter_ms = 0.0, t_sums_ms = 0.0;
  std::vector<std::string> warnings;
};

// Everything downstream of a solved scattering problem.
EnergyReport assemble_report(const RunParams& params, const LatticeBall& ball, const LatticeBall& ball2,
                             const ScaledPotentialTable& vt, const ScatteringSolution& sol,
                             const BogoliubovTables& t);

// Full pipeline: lattices, scattering solve, tables, report.
EnergyReport compute_energy(const RunParams& params);

}  // namespace bosecorr
