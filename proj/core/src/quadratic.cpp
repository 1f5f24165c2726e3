#include "bosecorr/quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "bosecorr/errors.hpp"
#include "bosecorr/summation.hpp"
#include "bosecorr/tails.hpp"

namespace bosecorr {

double sc_minus_eta(double x) {
  // sum_k>=1 (2x)^(2k+1) / (2 (2k+1)!), where the closed form cancels
  if (std::abs(x) < 0.5) {
    const double y2 = 4.0 * x * x;
    double term = x * y2 / 6.0, sum = 0.0;
    for (int k = 1; k < 30; ++k) {
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      term *= y2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum;
  }
  return 0.5 * std::sinh(2.0 * x) - x;
}

std::pair<std::vector<double>, std::vector<double>> hyperbolics(const std::vector<double>& eta) {
  std::vector<double> s(eta.size()), c(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    s[i] = std::sinh(eta[i]);
    c[i] = std::cosh(eta[i]);
  }
  return {std::move(s), std::move(c)};
}

std::vector<double> cs_convolution(const std::vector<double>& s, const std::vector<double>& c,
                                   const ScaledPotentialTable& vt, const LatticeBall& ball, ConvMethod method) {
  std::vector<double> cs(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) cs[i] = c[i] * s[i];
  auto out = Convolver(ball, ball, vt.radial_table(), method).apply(cs);
  const double v0 = vt.at_zero();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= v0 * cs[i];
  return out;
}

void coefficients_FG(BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball) {
  const std::size_t M = ball.size();
  t.F.resize(M);
  t.G.resize(M);
  t.F_minus_G.resize(M);
  t.F_plus_G.resize(M);
  for (std::size_t i = 0; i < M; ++i) {
    const double p2 = ball.p2(i), v = vt.values[i], s = t.s[i], c = t.c[i];
    const double X = t.cs_conv[i] / t.N;
    const double cps = (c + s) * (c + s), cms = (c - s) * (c - s);
    t.F[i] = (c * c + s * s) * p2 + cps * v + 2.0 * X * c * s;
    t.G[i] = 2.0 * c * s * p2 + cps * v + X * (c * c + s * s);
    t.F_minus_G[i] = cms * (p2 - X);
    t.F_plus_G[i] = cps * (p2 + 2.0 * v + X);
  }
}

std::vector<double> tau_table(const std::vector<double>& F, const std::vector<double>& G, const LatticeBall& ball) {
  std::vector<double> tau(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (!(F[i] > 0.0) || !(std::abs(G[i]) < F[i])) {
      const auto& n = ball.points[i];
      throw DiagonalizationFailure(n[0], n[1], n[2], F[i], G[i]);
    }
    tau[i] = -0.5 * std::atanh(G[i] / F[i]);
  }
  return tau;
}

BogoliubovTables build_tables(const ScatteringSolution& sol, const ScaledPotentialTable& vt, const LatticeBall& ball,
                              ConvMethod method) {
  if (sol.eta.size() != ball.size()) throw InconsistentLattice("scattering table does not match lattice");
  BogoliubovTables t;
  t.N = vt.N;
  t.beta = vt.beta;
  t.eta = sol.eta;
  std::tie(t.s, t.c) = hyperbolics(t.eta);
  const std::size_t M = ball.size();
  t.sc.resize(M);
  t.sc_eta.resize(M);
  for (std::size_t i = 0; i < M; ++i) {
    t.sc[i] = t.s[i] * t.c[i];
    t.sc_eta[i] = sc_minus_eta(t.eta[i]);
  }
  t.cs_conv = cs_convolution(t.s, t.c, vt, ball, method);
  coefficients_FG(t, vt, ball);
  for (std::size_t i = 0; i < M; ++i) t.max_G_over_F = std::max(t.max_G_over_F, std::abs(t.G[i]) / t.F[i]);
  t.tau = tau_table(t.F, t.G, ball);
  t.st.resize(M);
  t.ct.resize(M);
  t.e.resize(M);
  for (std::size_t i = 0; i < M; ++i) {
    t.st[i] = std::sinh(t.tau[i]);
    t.ct[i] = std::cosh(t.tau[i]);
    t.e[i] = std::sqrt(t.F_minus_G[i] * t.F_plus_G[i]);
  }
  if (t.max_G_over_F > 0.5) t.warnings.push_back("|G_p|/F_p exceeds 1/2; coupling is outside the perturbative regime");
  return t;
}

double bogoliubov_ground_energy(double F, double G) {
  const double e = std::sqrt((F - G) * (F + G));
  return -0.5 * G * G / (F + e);
}

SumWithTail bogoliubov_ground_energy(const BogoliubovTables& t, const LatticeBall& ball) {
  SumWithTail r;
  r.value = det_sum(ball.size(), [&](std::size_t i) { return -0.5 * t.G[i] * t.G[i] / (t.F[i] + t.e[i]); });
  const std::size_t last = ball.size() - 1;
  r.tail_estimate = power_law_tail(0.5 * t.G[last] * t.G[last] / (t.F[last] + t.e[last]), ball.pabs(last), 6.0);
  return r;
}

ConstantC constant_C(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball) {
  ConstantC k;
  const double N = t.N;
  const std::size_t M = ball.size();
  k.half_N_v0 = 0.5 * (N - 1.0) * vt.at_zero();
  k.kinetic = det_sum(M, [&](std::size_t i) { return (ball.p2(i) + vt.values[i]) * t.s[i] * t.s[i]; });
  k.pairing = det_sum(M, [&](std::size_t i) { return vt.values[i] * t.sc[i]; });
  k.convolution = det_sum(M, [&](std::size_t i) { return t.cs_conv[i] * t.sc[i]; }) / (2.0 * N);
  k.cubic = -det_sum(M, [&](std::size_t i) {
              return vt.values[i] * (0.5 * t.sc[i] + t.c[i] * t.s[i] * t.s[i] * t.s[i]);
            }) / N;
  KahanSum red;
  for (double x : {k.kinetic, k.pairing, k.convolution, k.cubic}) red.add(x);
  k.reduced = red.value();
  k.total = k.half_N_v0 + k.reduced;
  return k;
}

double e00_summand(double p2, double v0) {
  const double S = std::sqrt(p2 * p2 + 2.0 * p2 * v0);
  const double D = S + p2;
  return v0 * v0 * v0 * (S + 3.0 * p2) / (D * D * D);
}

SumWithTail E00(double v0, const LatticeBall& ball) {
  SumWithTail r;
  r.value = 0.5 * det_sum(ball.size(), [&](std::size_t i) { return e00_summand(ball.p2(i), v0); });
  const std::size_t last = ball.size() - 1;
  r.tail_estimate = power_law_tail(0.5 * e00_summand(ball.p2(last), v0), ball.pabs(last), 4.0);
  return r;
}

double A_p(double vhat_p, double cs_conv_p, double N) {
  return -(2.0 * vhat_p * cs_conv_p + cs_conv_p * cs_conv_p / N) / N;
}

double B_p(double A, double vhat_p, double p2) {
  const double S = std::sqrt(p2 * p2 + 2.0 * p2 * vhat_p);
  return A * vhat_p / (S * (p2 + S));
}

double bp_weight(double vhat_p, double p2) {
  const double S = std::sqrt(p2 * p2 + 2.0 * p2 * vhat_p);
  return vhat_p * vhat_p / (S * (p2 + S));
}

E01Parts E01(const BogoliubovTables& t, const ScaledPotentialTable& vt, const LatticeBall& ball,
             const LatticeBall& ball2, ConvMethod method) {
  if (ball2.cutoff_K > ball.cutoff_K * (1.0 + 1e-12) || ball2.size() > ball.size())
    throw InconsistentLattice("E01 needs K2 <= K");
  const double N = t.N;
  const std::size_t M = ball.size(), M2 = ball2.size();
  const double v0 = vt.at_zero();

  std::vector<double> u(M);
  for (std::size_t i = 0; i < M; ++i) u[i] = t.sc[i] + vt.values[i] / ball.p2(i);
  auto conv_u = Convolver(ball2, ball, vt.radial_table(), method).apply(u);

  // The continuum tail of both inner sums shares one integral: beyond the
  // ball sc_q + v^/q^2 ~ v^/(2q^2) and sc_q ~ -v^/(2q^2).
  const double scale = vt.scale / vt.pot.R;
  const double r_eff = effective_radius(M);
  const double upper = std::max(r_eff, 60.0 * scale);
  std::vector<double> shell_tail(ball2.shell_count(), 0.0);
  if (vt.pot.kappa != 0.0) {
    auto k = [&](double q) { return vt.at(q); };
    auto g = [&](double q) { return vt.at(q) / (2.0 * q * q); };
    parallel_chunks(ball2.shell_count(), 1, [&](std::size_t b, std::size_t e) {
      for (std::size_t sh = b; sh < e; ++sh)
        shell_tail[sh] = convolution_tail(ball2.pabs(ball2.shell_begin[sh]), k, g, r_eff, upper, scale);
    });
  }
  std::vector<double> tail(M2);
  for (std::size_t sh = 0; sh < ball2.shell_count(); ++sh)
    for (std::size_t i = ball2.shell_begin[sh]; i < ball2.shell_begin[sh + 1]; ++i) tail[i] = shell_tail[sh];

  std::vector<std::size_t> idx(M2);
  for (std::size_t i = 0; i < M2; ++i) idx[i] = *ball.find(ball2.points[i]);

  auto first_term = [&](std::size_t i, bool with_tail) {
    const std::size_t j = idx[i];
    const double inner = conv_u[i] - v0 * u[j] + (with_tail ? tail[i] : 0.0);
    return t.sc_eta[j] * inner;
  };
  auto second_term = [&](std::size_t i, bool with_tail) {
    const std::size_t j = idx[i];
    const double inner = t.cs_conv[j] - (with_tail ? tail[i] : 0.0);
    return bp_weight(vt.values[j], ball.p2(j)) * inner;
  };

  E01Parts r;
  r.first = -det_sum(M2, [&](std::size_t i) { return first_term(i, true); }) / (2.0 * N);
  r.second = det_sum(M2, [&](std::size_t i) { return second_term(i, true); }) / N;
  r.first_ball = -det_sum(M2, [&](std::size_t i) { return first_term(i, false); }) / (2.0 * N);
  r.second_ball = det_sum(M2, [&](std::size_t i) { return second_term(i, false); }) / N;
  r.total = r.first + r.second;
  r.total_ball = r.first_ball + r.second_ball;
  const std::size_t last = M2 - 1;
  r.outer_tail_estimate = power_law_tail(second_term(last, true) / N, ball2.pabs(last), 4.0);
  r.certificate = std::abs(r.total) / std::pow(N, t.beta - 1.0);
  return r;
}

TableCertificates certify(const BogoliubovTables& t, const LatticeBall& ball, const ScaledPotentialTable& vt) {
  TableCertificates k;
  const std::size_t M = ball.size();
  k.min_F_over_p2 = INFINITY;
  k.min_e_over_p2 = INFINITY;
  double max_p2eta = 0.0, max_conv = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const double p2 = ball.p2(i);
    k.cosh_sinh_identity = std::max(k.cosh_sinh_identity, std::abs(t.c[i] * t.c[i] - t.s[i] * t.s[i] - 1.0));
    k.tilde_identity = std::max(k.tilde_identity, std::abs(t.ct[i] * t.ct[i] - t.st[i] * t.st[i] - 1.0));
    k.min_F_over_p2 = std::min(k.min_F_over_p2, t.F[i] / p2);
    k.max_F_over_1p2 = std::max(k.max_F_over_1p2, t.F[i] / (1.0 + p2));
    k.max_G_over_F = std::max(k.max_G_over_F, std::abs(t.G[i]) / t.F[i]);
    k.min_e_over_p2 = std::min(k.min_e_over_p2, t.e[i] / p2);
    k.tanh_identity = std::max(k.tanh_identity, std::abs(std::tanh(2.0 * t.tau[i]) + t.G[i] / t.F[i]));
    k.s_decay = std::max(k.s_decay, p2 * std::abs(t.s[i]));
    max_p2eta = std::max(max_p2eta, p2 * std::abs(t.eta[i]));
    max_conv = std::max(max_conv, std::abs(t.cs_conv[i]));
    k.G_decay = std::max(k.G_decay, p2 * std::abs(t.G[i]));
    k.tau_decay = std::max(k.tau_decay, p2 * p2 * std::abs(t.tau[i]));
    const std::size_t j = ball.neg(i);
    for (const auto* v : {&t.eta, &t.s, &t.c, &t.cs_conv, &t.F, &t.G, &t.tau, &t.e, &vt.values})
      k.negation_asymmetry = std::max(k.negation_asymmetry, std::abs((*v)[i] - (*v)[j]));
  }
  k.s_decay_bound = std::sinh(max_p2eta);
  const std::size_t shells = std::min<std::size_t>(3, ball.shell_count());
  for (std::size_t i = 0; i < ball.shell_begin[shells]; ++i) {
    const double p2 = ball.p2(i);
    k.sc_eta_decay = std::max(k.sc_eta_decay, p2 * p2 * p2 * std::abs(t.sc_eta[i]));
  }
  k.conv_over_Nbeta = max_conv / vt.scale;
  return k;
}

}  // namespace bosecorr
