#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numeric>

#include "bosecorr/errors.hpp"
#include "bosecorr/quadratic.hpp"

using namespace bosecorr;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

struct Setup {
  LatticeBall ball;
  ScaledPotentialTable vt;
  ScatteringSolution sol;
  BogoliubovTables t;
};

Setup make(double kappa, double N, double beta, double K) {
  Setup s;
  s.ball = enumerate_lattice(K);
  s.vt = scaled_table(Potential{kappa, 0.25}, s.ball, N, beta);
  s.sol = solve_eta(s.ball, s.vt);
  s.t = build_tables(s.sol, s.vt, s.ball);
  return s;
}

}  // namespace

TEST(ScMinusEta, SeriesAndDirectAgree) {
  for (double x : {1e-8, 1e-5, 3e-4, 0.999e-3, 1e-3, 1.001e-3, 0.01, 0.3, -0.2, -2e-4}) {
    const Big X = x;
    const double ref = static_cast<double>(sinh(X) * cosh(X) - X);
    EXPECT_NEAR(sc_minus_eta(x), ref, 1e-13 * std::abs(ref)) << x;
  }
  EXPECT_EQ(sc_minus_eta(0.0), 0.0);
  // leading coefficient is 2/3, not 1/3
  EXPECT_NEAR(sc_minus_eta(1e-6) / 1e-18, 2.0 / 3.0, 1e-10);
}

TEST(Tau, ClosedFormAtThreeFifths) {
  const auto ball = enumerate_lattice(kTwoPi);
  const std::vector<double> F(6, 5.0), G(6, -3.0);
  const auto tau = tau_table(F, G, ball);
  for (double x : tau) EXPECT_NEAR(x, 0.25 * std::log(4.0), 1e-15);
  EXPECT_NEAR(bogoliubov_ground_energy(5.0, 3.0), -0.5, 1e-15);
  EXPECT_NEAR(bogoliubov_ground_energy(5.0, -3.0), -0.5, 1e-15);
}

TEST(Tau, DiagonalizationFailure) {
  const auto ball = enumerate_lattice(kTwoPi);
  std::vector<double> F(6, 1.0), G(6, 0.1);
  G[4] = -1.0;
  try {
    tau_table(F, G, ball);
    FAIL();
  } catch (const DiagonalizationFailure& e) {
    EXPECT_EQ(e.F, 1.0);
    EXPECT_EQ(e.G, -1.0);
    const IVec3 n{e.n[0], e.n[1], e.n[2]};
    EXPECT_EQ(n, ball.points[4]);
  }
}

TEST(E00, SummandIdentity) {
  for (double v : {1.0, 0.3, 1e-3}) {
    for (double p2 : {4.0 * kPi * kPi, 8.0 * kPi * kPi, 400.0 * kPi * kPi}) {
      const Big P = p2, V = v;
      const double direct = static_cast<double>(-P - V + sqrt(P * P + 2 * P * V) + V * V / (2 * P));
      EXPECT_NEAR(e00_summand(p2, v), direct, 1e-13 * std::abs(direct));
    }
  }
}

TEST(E00, PinnedValue) {
  // v^(0) = 1 on |n|^2 <= 2: 6 points at p^2 = 4 pi^2 and 12 at 8 pi^2
  const auto ball = enumerate_lattice(kTwoPi * std::sqrt(2.0));
  auto term = [](const Big& p2) { return -p2 - 1 + sqrt(p2 * p2 + 2 * p2) + 1 / (2 * p2); };
  const Big pi = boost::math::constants::pi<Big>();
  const double ref = static_cast<double>((6 * term(4 * pi * pi) + 12 * term(8 * pi * pi)) / 2);
  EXPECT_NEAR(E00(1.0, ball).value, ref, 1e-12 * ref);
  EXPECT_NEAR(ref, 1.4067356431742179e-03, 1e-18);
  EXPECT_GT(E00(1.0, ball).tail_estimate, 0.0);
}

TEST(Tables, HyperbolicsAndFactoredForms) {
  const auto s = make(0.5, 100.0, 0.6, kTwoPi * 3.0);
  const auto& t = s.t;
  for (std::size_t i = 0; i < s.ball.size(); ++i) {
    EXPECT_DOUBLE_EQ(t.s[i], std::sinh(t.eta[i]));
    EXPECT_DOUBLE_EQ(t.c[i], std::cosh(t.eta[i]));
    EXPECT_NEAR(t.F_minus_G[i], t.F[i] - t.G[i], 1e-12 * t.F[i]);
    EXPECT_NEAR(t.F_plus_G[i], t.F[i] + t.G[i], 1e-12 * t.F[i]);
    EXPECT_NEAR(t.e[i] * t.e[i], t.F[i] * t.F[i] - t.G[i] * t.G[i], 1e-12 * t.F[i] * t.F[i]);
    EXPECT_NEAR(std::tanh(2.0 * t.tau[i]), -t.G[i] / t.F[i], 1e-14);
  }
}

TEST(Tables, CsConvolutionAndFGAgainstBruteForce) {
  const auto s = make(0.5, 100.0, 0.6, kTwoPi * 2.0);
  const auto& b = s.ball;
  const auto& t = s.t;
  const double N = 100.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    long double conv = 0.0L;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (j != i) conv += s.vt.of_diff(b.points[i] - b.points[j]) * t.c[j] * t.s[j];
    EXPECT_NEAR(t.cs_conv[i], static_cast<double>(conv), 1e-14 * std::abs(static_cast<double>(conv)) + 1e-300);
    const double c = t.c[i], sn = t.s[i], v = s.vt.values[i], p2 = b.p2(i);
    const double X = static_cast<double>(conv) / N;
    const double F = (c * c + sn * sn) * p2 + (c + sn) * (c + sn) * v + 2.0 * X * c * sn;
    const double G = 2.0 * c * sn * p2 + (c + sn) * (c + sn) * v + X * (c * c + sn * sn);
    EXPECT_NEAR(t.F[i], F, 1e-13 * F);
    EXPECT_NEAR(t.G[i], G, 1e-12 * std::abs(G));
  }
}

TEST(Tables, GroundEnergyAgainstDirectSum) {
  const auto s = make(0.5, 100.0, 0.6, kTwoPi * 3.0);
  Big sum = 0;
  for (std::size_t i = 0; i < s.ball.size(); ++i) {
    const Big F = s.t.F[i], G = s.t.G[i];
    sum += (-F + sqrt(F * F - G * G)) / 2;
  }
  const double ref = static_cast<double>(sum);
  EXPECT_NEAR(bogoliubov_ground_energy(s.t, s.ball).value, ref, 1e-12 * std::abs(ref));
  EXPECT_LT(bogoliubov_ground_energy(s.t, s.ball).value, 0.0);
}

TEST(Tables, ZeroCoupling) {
  const auto s = make(0.0, 1e4, 0.75, kTwoPi * 3.0);
  for (std::size_t i = 0; i < s.ball.size(); ++i) {
    EXPECT_EQ(s.t.G[i], 0.0);
    EXPECT_EQ(s.t.F[i], s.ball.p2(i));
    EXPECT_EQ(s.t.tau[i], 0.0);
    EXPECT_EQ(s.t.e[i], s.ball.p2(i));
  }
  EXPECT_EQ(bogoliubov_ground_energy(s.t, s.ball).value, 0.0);
  EXPECT_EQ(E00(0.0, s.ball).value, 0.0);
  const auto C = constant_C(s.t, s.vt, s.ball);
  EXPECT_EQ(C.total, 0.0);
}

TEST(Tables, CertificatesAtReference) {
  const auto s = make(0.1, 1e4, 0.75, 40.0 * kPi);
  const auto k = certify(s.t, s.ball, s.vt);
  EXPECT_LE(k.cosh_sinh_identity, 1e-12);
  EXPECT_GE(k.min_F_over_p2, 0.5);
  EXPECT_LE(k.max_G_over_F, 0.5);
  EXPECT_GE(k.min_e_over_p2, std::sqrt(3.0) / 2.0);
  EXPECT_LE(k.tanh_identity, 1e-12);
  EXPECT_EQ(k.negation_asymmetry, 0.0);
  EXPECT_LE(k.s_decay, k.s_decay_bound * (1.0 + 1e-12));
  EXPECT_TRUE(s.t.warnings.empty());
}

TEST(ConstantC, PartsAgainstBruteForce) {
  const auto s = make(0.5, 100.0, 0.6, kTwoPi * 2.0);
  const auto& b = s.ball;
  const auto& t = s.t;
  const double N = 100.0, v0 = s.vt.at_zero();
  long double kin = 0, pair = 0, conv = 0, cubic = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const long double c = t.c[i], sn = t.s[i], v = s.vt.values[i];
    kin += (b.p2(i) + v) * sn * sn;
    pair += v * c * sn;
    long double cv = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (j != i) cv += s.vt.of_diff(b.points[i] - b.points[j]) * t.c[j] * t.s[j];
    conv += cv * c * sn / (2.0L * N);
    cubic -= v * (0.5L * c * sn + c * sn * sn * sn) / N;
  }
  const auto C = constant_C(t, s.vt, b);
  EXPECT_NEAR(C.kinetic, static_cast<double>(kin), 1e-13 * static_cast<double>(kin));
  EXPECT_NEAR(C.pairing, static_cast<double>(pair), 1e-13 * std::abs(static_cast<double>(pair)));
  EXPECT_NEAR(C.convolution, static_cast<double>(conv), 1e-12 * std::abs(static_cast<double>(conv)));
  EXPECT_NEAR(C.cubic, static_cast<double>(cubic), 1e-13 * std::abs(static_cast<double>(cubic)));
  EXPECT_NEAR(C.half_N_v0, 0.5 * (N - 1.0) * v0, 1e-15);
  EXPECT_NEAR(C.total, C.half_N_v0 + C.reduced, 1e-15 * C.total);
}

TEST(E01, BallPartAgainstBruteForce) {
  const auto s = make(0.5, 100.0, 0.6, kTwoPi * std::sqrt(3.0));
  const auto ball2 = enumerate_lattice(kTwoPi * std::sqrt(2.0));
  const auto& b = s.ball;
  const auto& t = s.t;
  const double N = 100.0;
  long double first = 0, second = 0;
  for (const auto& p : ball2.points) {
    const std::size_t i = *b.find(p);
    const long double vp = s.vt.values[i], p2 = b.p2(i);
    const long double S = std::sqrt(p2 * p2 + 2.0L * p2 * vp);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j == i) continue;
      const long double vpq = s.vt.of_diff(p - b.points[j]);
      first += vpq * t.sc_eta[i] * (t.s[j] * t.c[j] + s.vt.values[j] / b.p2(j));
      second += vp * vp * vpq * t.s[j] * t.c[j] / (S * (p2 + S));
    }
  }
  const auto e = E01(t, s.vt, b, ball2);
  EXPECT_NEAR(e.first_ball, static_cast<double>(-first / (2.0L * N)), 1e-12 * std::abs(static_cast<double>(first / N)));
  EXPECT_NEAR(e.second_ball, static_cast<double>(second / N), 1e-12 * std::abs(static_cast<double>(second / N)));
  EXPECT_NEAR(e.total_ball, e.first_ball + e.second_ball, 1e-15 * std::abs(e.total_ball));
}

TEST(E01, RejectsInconsistentCutoffs) {
  const auto s = make(0.1, 1e4, 0.75, kTwoPi * 2.0);
  const auto bigger = enumerate_lattice(kTwoPi * 3.0);
  EXPECT_THROW(E01(s.t, s.vt, s.ball, bigger), InconsistentLattice);
}

TEST(HelperCoefficients, ApBp) {
  const double v = 0.3, conv = 2.0, N = 50.0, p2 = 40.0;
  const double A = A_p(v, conv, N);
  EXPECT_NEAR(A, -(2.0 * v * conv + conv * conv / N) / N, 1e-16);
  const double S = std::sqrt(p2 * p2 + 2.0 * p2 * v);
  EXPECT_NEAR(B_p(A, v, p2), A * v / (S * (p2 + S)), 1e-18);
  EXPECT_NEAR(bp_weight(v, p2), v * v / (S * (p2 + S)), 1e-18);
}
