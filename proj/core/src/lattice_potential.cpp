#include "bosecorr/lattice_potential.hpp"

#include <algorithm>
#include <cmath>

#include "bosecorr/errors.hpp"

namespace bosecorr {

void Potential::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InvalidPotential("kappa must be finite and >= 0");
  if (!(R > 0.0 && R <= 0.25)) throw InvalidPotential("R must lie in (0, 1/4]");
}

double Potential::vhat0() const {
  const double ball = 4.0 * kPi * R * R * R / 3.0;
  return kappa * ball * ball;
}

namespace {

// (sin r - r cos r) / r^3. Below r = 1 the closed form cancels, so sum
// the series (-1)^k (2k+2) r^2k / (2k+3)! instead.
double ball_profile(double r) {
  if (r < 1.0) {
    const double r2 = r * r;
    double term = 1.0 / 6.0, sum = 0.0;  // r^2k / (2k+3)!
    for (int k = 0; k < 20; ++k) {
      const double t = (k % 2 ? -1.0 : 1.0) * (2.0 * k + 2.0) * term;
      sum += t;
      if (std::abs(t) < 1e-18 * std::abs(sum)) break;
      term *= r2 / ((2.0 * k + 4.0) * (2.0 * k + 5.0));
    }
    return sum;
  }
  return (std::sin(r) - r * std::cos(r)) / (r * r * r);
}

}  // namespace

double vhat(const Potential& pot, double pabs) {
  if (pot.kappa == 0.0) return 0.0;
  const double r = pot.R * std::abs(pabs);
  const double a = 4.0 * kPi * pot.R * pot.R * pot.R * ball_profile(r);
  return pot.kappa * a * a;
}

double vhat(const Potential& pot, const std::array<double, 3>& p) {
  return vhat(pot, std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
}

double LatticeBall::pabs(std::size_t i) const { return kTwoPi * std::sqrt(static_cast<double>(n2[i])); }

std::int64_t LatticeBall::index_of(const IVec3& n) const {
  const int w = 2 * n_max + 1;
  for (int k = 0; k < 3; ++k)
    if (n[k] < -n_max || n[k] > n_max) return -1;
  return cube_[static_cast<std::size_t>(((n[0] + n_max) * w + (n[1] + n_max)) * w + (n[2] + n_max))];
}

std::optional<std::size_t> LatticeBall::find(const IVec3& n) const {
  auto i = index_of(n);
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

int max_shell(double K) {
  const double r = K / kTwoPi;
  return static_cast<int>(std::floor(r * r * (1.0 + 1e-12)));
}

LatticeBall enumerate_lattice(double K) {
  if (!(K >= kTwoPi * (1.0 - 1e-12))) throw CutoffTooSmall("cutoff K must be >= 2 pi");
  LatticeBall b;
  b.cutoff_K = K;
  const int m = max_shell(K);
  const int nm = static_cast<int>(std::floor(std::sqrt(static_cast<double>(m))));
  b.n_max = nm;
  for (int x = -nm; x <= nm; ++x)
    for (int y = -nm; y <= nm; ++y)
      for (int z = -nm; z <= nm; ++z) {
        const int s = x * x + y * y + z * z;
        if (s > 0 && s <= m) b.points.push_back({x, y, z});
      }
  std::stable_sort(b.points.begin(), b.points.end(), [](const IVec3& a, const IVec3& c) {
    const int na = norm2(a), nc = norm2(c);
    if (na != nc) return na < nc;
    return a < c;
  });
  const int w = 2 * nm + 1;
  b.cube_.assign(static_cast<std::size_t>(w) * w * w, -1);
  b.n2.reserve(b.points.size());
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    const auto& n = b.points[i];
    b.n2.push_back(norm2(n));
    b.cube_[static_cast<std::size_t>(((n[0] + nm) * w + (n[1] + nm)) * w + (n[2] + nm))] = static_cast<std::int32_t>(i);
    if (i == 0 || b.n2[i] != b.n2[i - 1]) b.shell_begin.push_back(i);
  }
  b.shell_begin.push_back(b.points.size());
  b.neg_.resize(b.points.size());
  for (std::size_t i = 0; i < b.points.size(); ++i) b.neg_[i] = static_cast<std::size_t>(b.index_of(-b.points[i]));
  return b;
}

ScaledPotentialTable scaled_table(const Potential& pot, const LatticeBall& ball, double N, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw BetaOutOfRange("beta must lie in (0, 1)");
  if (!(N >= 2.0)) throw InvalidArgument("N must be >= 2");
  ScaledPotentialTable t;
  t.pot = pot;
  t.N = N;
  t.beta = beta;
  t.scale = std::pow(N, beta);
  const int mmax = 12 * ball.n_max * ball.n_max;
  t.radial_.resize(static_cast<std::size_t>(mmax) + 1);
  for (int m = 0; m <= mmax; ++m)
    t.radial_[static_cast<std::size_t>(m)] = vhat(pot, kTwoPi * std::sqrt(static_cast<double>(m)) / t.scale);
  t.values.resize(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) t.values[i] = t.radial(ball.n2[i]);
  return t;
}

}  // namespace bosecorr
