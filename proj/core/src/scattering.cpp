#include "bosecorr/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "bosecorr/errors.hpp"
#include "bosecorr/summation.hpp"
#include "bosecorr/tails.hpp"

namespace bosecorr {

std::vector<double> born_eta(const LatticeBall& ball, const ScaledPotentialTable& vt) {
  std::vector<double> eta(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) eta[i] = -vt.values[i] / (2.0 * ball.p2(i));
  return eta;
}

std::vector<double> scattering_convolution(const LatticeBall& ball, const ScaledPotentialTable& vt,
                                           const std::vector<double>& eta, ConvMethod method) {
  auto c = Convolver(ball, ball, vt.radial_table(), method).apply(eta);
  for (double& x : c) x /= 2.0 * vt.N;
  return c;
}

namespace {

double defect_max(const LatticeBall& ball, const ScaledPotentialTable& vt, const std::vector<double>& eta,
                  const std::vector<double>& half_conv) {
  double r = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i)
    r = std::max(r, std::abs(ball.p2(i) * eta[i] + half_conv[i] + 0.5 * vt.values[i]));
  return r;
}

void fill_diagnostics(ScatteringSolution& sol, const LatticeBall& ball, const ScaledPotentialTable& vt) {
  double dev = 0.0, ratio = 0.0;
  const double v0 = vt.at_zero();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    dev = std::max(dev, std::abs(ball.p2(i) * sol.eta[i] + 0.5 * vt.values[i]));
    if (v0 > 0.0) ratio = std::max(ratio, ball.p2(i) * std::abs(sol.eta[i]) / v0);
  }
  sol.born_deviation = dev;
  sol.decay_ratio = ratio;
}

}  // namespace

ScatteringSolution solve_eta(const LatticeBall& ball, const ScaledPotentialTable& vt, const ScatteringOptions& opt) {
  if (!(opt.tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (ball.size() == 0) throw InvalidArgument("empty lattice");
  Convolver conv(ball, ball, vt.radial_table(), opt.method);
  const double inv2N = 1.0 / (2.0 * vt.N);

  ScatteringSolution sol;
  sol.N = vt.N;
  sol.beta = vt.beta;
  sol.eta = born_eta(ball, vt);

  // Once the defect is below tol, keep sweeping while it still halves: the
  // map contracts strongly, so this reaches the roundoff floor in a step or two.
  double damping = 1.0;
  double prev = INFINITY;
  std::vector<double> best;
  double best_r = INFINITY;
  int best_it = 0;
  std::vector<double> half(ball.size());
  for (int it = 1; it <= opt.max_iter; ++it) {
    auto c = conv.apply(sol.eta);
    for (std::size_t i = 0; i < c.size(); ++i) half[i] = c[i] * inv2N;
    const double r = defect_max(ball, vt, sol.eta, half);
    if (r < best_r) {
      best = sol.eta;
      best_r = r;
      best_it = it;
    }
    sol.iterations = it;
    sol.residual_norm = r;
    if (best_r <= opt.tol && (r > 0.5 * prev || r == 0.0)) break;
    if (r > prev) damping *= 0.5;
    prev = r;
    if (it == opt.max_iter) break;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const double next = -(0.5 * vt.values[i] + half[i]) / ball.p2(i);
      sol.eta[i] = damping == 1.0 ? next : (1.0 - damping) * sol.eta[i] + damping * next;
    }
  }
  if (!(best_r <= opt.tol)) throw NonConvergence(sol.iterations, sol.residual_norm);
  sol.eta = std::move(best);
  sol.residual_norm = best_r;
  sol.iterations = best_it;
  sol.final_damping = damping;
  fill_diagnostics(sol, ball, vt);
  return sol;
}

ScatteringSolution solve_eta(const Potential& pot, const LatticeBall& ball, double N, double beta, double tol,
                             int max_iter) {
  auto vt = scaled_table(pot, ball, N, beta);
  ScatteringOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_eta(ball, vt, opt);
}

double residual(const std::vector<double>& eta, const ScaledPotentialTable& vt, const LatticeBall& ball,
                ConvMethod method) {
  return defect_max(ball, vt, eta, scattering_convolution(ball, vt, eta, method));
}

double residual(const ScatteringSolution& sol, const ScaledPotentialTable& vt, const LatticeBall& ball) {
  return residual(sol.eta, vt, ball);
}

double eta_tail(const Potential& pot, double N, double beta, double pabs) {
  if (pabs == 0.0) throw ZeroMomentumArgument("eta_tail needs p != 0");
  return -vhat(pot, pabs / std::pow(N, beta)) / (2.0 * pabs * pabs);
}

ScatteringLength scattering_length(const ScatteringSolution& sol, const ScaledPotentialTable& vt,
                                   const LatticeBall& ball) {
  ScatteringLength out;
  const double s = det_sum(ball.size(), [&](std::size_t i) { return vt.values[i] * sol.eta[i]; });
  out.excess = s / vt.N;
  out.a = (vt.at_zero() + out.excess) / (8.0 * kPi);
  const double scale = vt.scale / vt.pot.R;
  const double r_eff = effective_radius(ball.size());
  out.tail_estimate = radial_tail(
      [&](double q) {
        const double v = vt.at(q);
        return -v * v / (2.0 * q * q);
      },
      r_eff, std::max(r_eff, 60.0 * scale), scale) / vt.N;
  out.below_vhat0 = vt.pot.kappa == 0.0 || out.excess < 0.0;
  return out;
}

}  // namespace bosecorr
