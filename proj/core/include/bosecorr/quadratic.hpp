#pragma once

#include <string>
#include <vector>

#include "bosecorr/convolution.hpp"
#include "bosecorr/lattice_potential.hpp"
#include "bosecorr/scattering.hpp"

namespace bosecorr {

// sinh(x) cosh(x) - x without cancellation for small x
double sc_minus_eta(double x);

// Per-momentum tables over a lattice ball (same ordering as the ball).
struct BogoliubovTables {
  double N = 0.0;
  double beta = 0.0;
  std::vector<double> eta, s, c;
  std::vector<double> sc;        // s c
  std::vector<double> sc_eta;    // s c - eta, stable form
  std::vector<double> cs_conv;   // sum_{q != p} v^(p - q) c_q s_q
  std::vector<double> F, G;
  std::vector<double> F_minus_G, F_plus_G;  // factored: (c-s)^2 (p^2 - X), (c+s)^2 (p^2 + 2v^ + X)
  std::vector<double> tau, st, ct;          // tau and its sinh / cosh
  std::vector<double> e;                    // sqrt(F^2 - G^2)
  double max_G_over_F = 0.0;
  std::vector<std::string> warnings;

  std::size_t size() const { return eta.size(); }
};

std::pair<std::vector<double>, std::vector<double>> hyperbolics(const std::vector<double>& eta);

// (v^ * cs)_p with the q = p term removed
std::vector<double> cs_convolution(const std::vector<double>& s, const std::vector<double>& c,
                                   const ScaledPotentialTable& vt, const LatticeBall& ball,
                                   ConvMethod method = ConvMethod::Auto);

void coefficients_FG(BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball);

// tanh(2 tau) = -G/F. Throws DiagonalizationFailure when |G| >= F anywhere.
std::vector<double> tau_table(const std::vector<double>& F, const std::vector<double>& G, const LatticeBall& ball);

// Hyperbolics, cs convolution, F, G, tau and dispersion in one pass.
BogoliubovTables build_tables(const ScatteringSolution& sol, const ScaledPotentialTable& vt, const LatticeBall& ball,
                              ConvMethod method = ConvMethod::Auto);

struct SumWithTail {
  double value = 0.0;
  double tail_estimate = 0.0;  // reported, not included in value
};

// (1/2) sum_p (-F_p + sqrt(F_p^2 - G_p^2)), evaluated as -(1/2) sum G^2 / (F + e)
SumWithTail bogoliubov_ground_energy(const BogoliubovTables& t, const LatticeBall& ball);
double bogoliubov_ground_energy(double F, double G);

struct ConstantC {
  double half_N_v0 = 0.0;   // (N-1) v^(0) / 2
  double kinetic = 0.0;     // sum (p^2 + v^) s^2
  double pairing = 0.0;     // sum v^ c s
  double convolution = 0.0; // (1/2N) sum (v^*cs) c s
  double cubic = 0.0;       // -(1/N) sum v^ (cs/2 + c s^3)
  // everything except the (N-1) v^(0)/2 term, summed without forming the large total
  double reduced = 0.0;
  double total = 0.0;
};

ConstantC constant_C(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball);

// summand of E00 at p^2 with v = v^(0):
//   -p^2 - v + sqrt(p^4 + 2 p^2 v) + v^2 / (2 p^2) = v^3 (S + 3p^2) / (S + p^2)^3
double e00_summand(double p2, double v0);
SumWithTail E00(double v0, const LatticeBall& ball);

// helpers of the second-order expansion of sqrt(F^2 - G^2)
double A_p(double vhat_p, double cs_conv_p, double N);
double B_p(double A, double vhat_p, double p2);
// v^(p)^2 / (S (p^2 + S)) with S = sqrt(p^4 + 2 p^2 v^(p))
double bp_weight(double vhat_p, double p2);

struct E01Parts {
  double first = 0.0;   // -(1/2N) sum (sc - eta)_p (v^ * [sc + v^/q^2])_p
  double second = 0.0;  // (1/N) sum w_p (v^ * sc)_p
  double total = 0.0;
  // the same sums with the inner q-sum restricted to the lattice ball
  double first_ball = 0.0, second_ball = 0.0, total_ball = 0.0;
  double outer_tail_estimate = 0.0;  // p beyond K2, not included
  double certificate = 0.0;          // |E01| / N^(beta-1)
};

// Outer momentum p runs over ball2 (K2 <= K), inner q over the K ball plus the
// continuum beyond it, where sc_q ~ -v^(q)/(2q^2).
E01Parts E01(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball,
             const LatticeBall& ball2, ConvMethod method = ConvMethod::Auto);

// Per-run bounds; ratios are the measured constants.
struct TableCertificates {
  double cosh_sinh_identity = 0.0;   // max |c^2 - s^2 - 1|
  double tilde_identity = 0.0;       // max |ct^2 - st^2 - 1|
  double min_F_over_p2 = 0.0;        // must be >= 1/2
  double max_F_over_1p2 = 0.0;       // F <= c (1 + p^2)
  double max_G_over_F = 0.0;         // <= 1/2 in regime
  double min_e_over_p2 = 0.0;        // >= sqrt(3)/2 when |G|/F <= 1/2
  double tanh_identity = 0.0;        // max |tanh(2 tau) + G/F|
  double s_decay = 0.0;              // max p^2 |s_p|
  double s_decay_bound = 0.0;        // sinh(max p^2 |eta_p|)
  double sc_eta_decay = 0.0;         // max |p|^6 |s c - eta| over the first three shells
  double conv_over_Nbeta = 0.0;      // sup |v^*cs| / N^beta
  double G_decay = 0.0;              // max p^2 |G_p|
  double tau_decay = 0.0;            // max p^4 |tau_p|
  double negation_asymmetry = 0.0;   // max over tables of |x_p - x_-p|
};

TableCertificates certify(const BogoliubovTables& t, const LatticeBall& ball, const ScaledPotentialTable& vt);

}  // namespace bosecorr
