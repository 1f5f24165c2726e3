#include "bosecorr/corrections.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bosecorr/errors.hpp"
#include "bosecorr/summation.hpp"
#include "bosecorr/tails.hpp"

namespace bosecorr {

ModeCoeffs coeffs_at(const BogoliubovTables& t, const ScaledPotentialTable& vt, std::size_t i) {
  return {vt.values[i], t.c[i], t.s[i], t.ct[i], t.st[i], t.e[i]};
}

ModeCoeffs born_coeffs(const ScaledPotentialTable& vt, int n2) {
  const double p2 = kTwoPi * kTwoPi * n2;
  const double v = vt.radial(n2);
  const double eta = -v / (2.0 * p2);
  return {v, std::cosh(eta), std::sinh(eta), 1.0, 0.0, std::sqrt(p2 * p2 + 2.0 * p2 * v)};
}

// Both groups carry 1/6, the weight of one of the six orderings of a
// momentum triple. A weight of 1/3 on the second group would double the
// cubic creation amplitude of G~1.
double f_value(const ModeCoeffs& a, const ModeCoeffs& b, const ModeCoeffs& ab) {
  const double g1 = a.v * (a.ct + a.st) * (ab.ct * b.st + b.ct * ab.st) +
                    b.v * (b.ct + b.st) * (ab.ct * a.st + a.ct * ab.st) +
                    ab.v * (ab.ct + ab.st) * (a.ct * b.st + b.ct * a.st);
  const double g2 = a.v * a.c * (ab.c * b.s + b.c * ab.s) + b.v * b.c * (ab.c * a.s + a.c * ab.s) +
                    ab.v * ab.c * (a.c * b.s + b.c * a.s);
  return ab.c * a.c * b.c * g1 / 6.0 + (a.ct * b.ct * ab.ct + a.st * b.st * ab.st) * g2 / 6.0;
}

double f_pq(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball, const IVec3& p,
            const IVec3& q) {
  const IVec3 k = p + q;
  if (norm2(p) == 0 || norm2(q) == 0 || norm2(k) == 0) throw ZeroMomentumArgument("f(p,q) needs p, q, p+q != 0");
  const auto ip = ball.find(p), iq = ball.find(q), ik = ball.find(k);
  if (!ip || !iq || !ik) throw InvalidArgument("f(p,q) arguments outside the lattice ball");
  return f_value(coeffs_at(t, vt, *ip), coeffs_at(t, vt, *iq), coeffs_at(t, vt, *ik));
}

EPertResult e_pert_tilde(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball,
                         const LatticeBall& ball2) {
  if (ball2.size() > ball.size()) throw InconsistentLattice("e_pert needs K2 <= K");
  const std::size_t M2 = ball2.size();
  std::vector<ModeCoeffs> all(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) all[i] = coeffs_at(t, vt, i);
  std::vector<std::size_t> idx(M2);
  for (std::size_t i = 0; i < M2; ++i) idx[i] = *ball.find(ball2.points[i]);

  // Born closure where p + q leaves the ball, tabulated by |n|^2
  std::vector<ModeCoeffs> born(static_cast<std::size_t>(4 * norm2(ball2.points.empty() ? IVec3{0, 0, 0}
                                                                                      : ball2.points.back())) + 1);
  std::vector<char> have(born.size(), 0);
  for (std::size_t i = 0; i < M2; ++i)
    for (std::size_t j = i; j < M2; ++j) {
      const IVec3 k = ball2.points[i] + ball2.points[j];
      const auto m = static_cast<std::size_t>(norm2(k));
      if (m > 0 && !have[m] && ball.index_of(k) < 0) {
        born[m] = born_coeffs(vt, static_cast<int>(m));
        have[m] = 1;
      }
    }

  // the summand is symmetric in p and q, so sum j >= i with weight 2 off the diagonal
  std::vector<std::size_t> fallback(M2, 0), pairs(M2, 0);
  EPertResult r;
  const double s = det_sum(M2, [&](std::size_t i) {
    const ModeCoeffs& a = all[idx[i]];
    const IVec3& p = ball2.points[i];
    KahanSum inner;
    for (std::size_t j = i; j < M2; ++j) {
      const IVec3 k = p + ball2.points[j];
      const int m = norm2(k);
      if (m == 0) continue;
      const std::size_t w = j == i ? 1 : 2;
      pairs[i] += w;
      const ModeCoeffs& b = all[idx[j]];
      const auto ik = ball.index_of(k);
      if (ik < 0) fallback[i] += w;
      const ModeCoeffs& ab = ik >= 0 ? all[static_cast<std::size_t>(ik)] : born[static_cast<std::size_t>(m)];
      const double f = f_value(a, b, ab);
      inner.add(static_cast<double>(w) * f * f / (ab.e + a.e + b.e));
    }
    return inner.value();
  });
  r.value = -6.0 * s / t.N;
  for (std::size_t i = 0; i < M2; ++i) {
    r.pairs += pairs[i];
    r.fallback_pairs += fallback[i];
  }
  return r;
}

G2Expectation g2_expectation(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball,
                             ConvMethod method) {
  const std::size_t M = ball.size();
  std::vector<double> A(M), B(M);
  for (std::size_t i = 0; i < M; ++i) {
    const double c2 = t.c[i] * t.c[i];
    A[i] = c2 * t.st[i] * t.ct[i];
    B[i] = c2 * t.st[i] * t.st[i];
  }
  Convolver conv(ball, ball, vt.radial_table(), method);
  const auto cA = conv.apply(A);
  const auto cB = conv.apply(B);
  const double v0 = vt.at_zero();
  G2Expectation g;
  g.direct = det_sum(M, [&](std::size_t i) { return A[i] * (cA[i] - v0 * A[i]); }) / (2.0 * t.N);
  g.exchange = det_sum(M, [&](std::size_t i) { return B[i] * (cB[i] - v0 * B[i]); }) / (2.0 * t.N);
  g.value = g.direct + g.exchange;
  g.certificate = t.N * std::abs(g.value);
  return g;
}

double c1_bog_summand(double p2, double v0) {
  const double S = std::sqrt(p2 * p2 + 2.0 * p2 * v0);
  return v0 * v0 / (S * (p2 + S));
}

double c2_summand(double c, double s, double ct, double st) {
  const double x = c * st + ct * s;  // sinh(eta + tau)
  return 4.0 * x * x;
}

CConstant c_constant(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball) {
  CConstant k;
  const std::size_t M = ball.size();
  const double v0 = vt.at_zero();
  k.C1_sc_eta = 0.5 * det_sum(M, [&](std::size_t i) { return t.sc_eta[i]; });
  k.C1_bog = det_sum(M, [&](std::size_t i) { return c1_bog_summand(ball.p2(i), v0); });
  k.C1 = k.C1_sc_eta + k.C1_bog;
  k.C2 = det_sum(M, [&](std::size_t i) { return c2_summand(t.c[i], t.s[i], t.ct[i], t.st[i]); });
  k.C = k.C1 + k.C2;
  const std::size_t last = M - 1;
  const double K = ball.pabs(last);
  k.tail_estimate = power_law_tail(c1_bog_summand(ball.p2(last), v0), K, 4.0) +
                    power_law_tail(c2_summand(t.c[last], t.s[last], t.ct[last], t.st[last]), K, 4.0) +
                    power_law_tail(0.5 * t.sc_eta[last], K, 6.0);
  return k;
}

BornSum born2_sum(const ScaledPotentialTable& vt, const LatticeBall& ball) {
  BornSum b;
  b.ball = det_sum(ball.size(), [&](std::size_t i) { return vt.values[i] * vt.values[i] / (2.0 * ball.p2(i)); });
  if (vt.pot.kappa != 0.0) {
    const double scale = vt.scale / vt.pot.R;
    const double r_eff = effective_radius(ball.size());
    b.tail = radial_tail(
        [&](double q) {
          const double v = vt.at(q);
          return v * v / (2.0 * q * q);
        },
        r_eff, std::max(r_eff, 60.0 * scale), scale);
  }
  return b;
}

ECorr e_corr(const CConstant& C, const BornSum& S, double N) {
  return {C.C * (-S.total() / (2.0 * N)), C.C * (-S.ball / (2.0 * N))};
}

double eta_plus_tau(double p2, double vhat_p, double cs_conv_p, double N) {
  const double X = cs_conv_p / N;
  return 0.25 * std::log1p(-2.0 * (vhat_p + X) / (p2 + 2.0 * vhat_p + X));
}

SumWithTail depletion(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball) {
  auto term = [&](std::size_t i) {
    const double sh = std::sinh(eta_plus_tau(ball.p2(i), vt.values[i], t.cs_conv[i], t.N));
    return sh * sh;
  };
  SumWithTail r;
  r.value = det_sum(ball.size(), term);
  const std::size_t last = ball.size() - 1;
  r.tail_estimate = power_law_tail(term(last), ball.pabs(last), 4.0);
  return r;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

EnergyReport assemble_report(const RunParams& params, const LatticeBall& ball, const LatticeBall& ball2,
                             const ScaledPotentialTable& vt, const ScatteringSolution& sol,
                             const BogoliubovTables& t) {
  if (ball2.cutoff_K > ball.cutoff_K * (1.0 + 1e-12)) throw InconsistentLattice("K2 must not exceed K");
  if (sol.eta.size() != ball.size() || t.size() != ball.size() || vt.values.size() != ball.size())
    throw InconsistentLattice("component tables were built on different lattices");
  const auto t0 = std::chrono::steady_clock::now();
  EnergyReport r;
  r.params = params;
  r.ball_points = ball.size();
  r.ball2_points = ball2.size();
  r.scattering_iterations = sol.iterations;
  r.scattering_residual = sol.residual_norm;
  r.warnings = t.warnings;

  const double N = params.N;
  const double v0 = vt.at_zero();
  const auto a = scattering_length(sol, vt, ball);
  r.a_box = a.a;
  r.a_excess = a.excess;
  r.a_tail = a.tail_estimate;
  r.leading = 0.5 * (N - 1.0) * (v0 + a.excess);
  if (!a.below_vhat0) r.warnings.push_back("8 pi a >= v^(0)");

  const auto e00 = E00(v0, ball);
  r.E00 = e00.value;
  r.E00_tail = e00.tail_estimate;
  r.E01 = E01(t, vt, ball, ball2, params.scattering.method);
  r.Cnb = c_constant(t, vt, ball);
  r.born2 = born2_sum(vt, ball);
  r.Ecorr = e_corr(r.Cnb, r.born2, N);
  r.g2 = g2_expectation(t, vt, ball, params.scattering.method);
  r.e_pert = e_pert_tilde(t, vt, ball, ball2);
  r.e_pert_reduced = r.Cnb.C2 * (-r.born2.total() / (2.0 * N));
  const auto e0 = bogoliubov_ground_energy(t, ball);
  r.E0 = e0.value;
  r.E0_tail = e0.tail_estimate;
  r.Cconst = constant_C(t, vt, ball);
  const auto dep = depletion(t, vt, ball);
  r.depletion = dep.value;
  r.depletion_tail = dep.tail_estimate;

  r.total_A = r.leading + r.E00 + r.Ecorr.value;
  r.total_B = r.Cconst.total + r.E0 + r.e_pert.value + r.g2.value;
  // The two totals agree to far below their size; difference the small pieces
  // directly instead of subtracting two O(N) numbers.
  KahanSum d;
  d.add(0.5 * (N - 1.0) * a.excess);
  d.add(r.E00);
  d.add(r.Ecorr.value);
  for (double x : {r.Cconst.kinetic, r.Cconst.pairing, r.Cconst.convolution, r.Cconst.cubic, r.E0, r.e_pert.value,
                   r.g2.value})
    d.add(-x);
  r.route_discrepancy = std::abs(d.value());
  r.corr_vs_expansion = r.Ecorr.value - (r.E01.total + r.e_pert.value + r.g2.value);

  if (params.pot.kappa > 0.0 && !(r.Ecorr.value < 0.0)) r.warnings.push_back("E_corr is not negative");
  r.t_sums_ms = ms_since(t0);
  return r;
}

EnergyReport compute_energy(const RunParams& params) {
  params.pot.validate();
  if (!(params.K2 <= params.K * (1.0 + 1e-12))) throw InconsistentLattice("K2 must not exceed K");
  const auto ball = enumerate_lattice(params.K);
  const auto ball2 = enumerate_lattice(params.K2);
  const auto vt = scaled_table(params.pot, ball, params.N, params.beta);
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = solve_eta(ball, vt, params.scattering);
  const double t_scatter = ms_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  const auto tables = build_tables(sol, vt, ball, params.scattering.method);
  const double t_tables = ms_since(t1);
  auto r = assemble_report(params, ball, ball2, vt, sol, tables);
  r.t_scatter_ms = t_scatter;
  r.t_sums_ms += t_tables;
  return r;
}

}  // namespace bosecorr
