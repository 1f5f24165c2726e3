#include <gtest/gtest.h>

#include <cmath>

#include "bosecorr/errors.hpp"
#include "bosecorr/fock_oracle.hpp"

using namespace bosecorr;

namespace {

struct Setup {
  LatticeBall ball;
  ScaledPotentialTable vt;
  ScatteringSolution sol;
  BogoliubovTables t;
  double N;
};

Setup make(double kappa, double N, double K) {
  Setup s;
  s.N = N;
  s.ball = enumerate_lattice(K);
  s.vt = scaled_table(Potential{kappa, 0.25}, s.ball, N, 0.75);
  s.sol = solve_eta(s.ball, s.vt);
  s.t = build_tables(s.sol, s.vt, s.ball);
  return s;
}

Eigen::VectorXd vacuum(const FockBasis& b) { return Eigen::VectorXd::Unit(static_cast<Eigen::Index>(b.size()), 0); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(ModeSetTest, Construction) {
  EXPECT_EQ(ModeSet::pair({1, 0, 0}).size(), 2u);
  EXPECT_EQ(ModeSet::shells(1).size(), 6u);
  EXPECT_EQ(ModeSet::shells(2).size(), 18u);
  const auto m = ModeSet::shells(2);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(m[static_cast<std::size_t>(m.neg(i))], -m[i]);
  EXPECT_THROW(ModeSet({{1, 0, 0}}), InvalidArgument);
  EXPECT_THROW(ModeSet({{0, 0, 0}}), InvalidArgument);
  EXPECT_EQ(ModeSet::shells(3).size(), 26u);
  EXPECT_THROW(ModeSet::shells(4), InvalidArgument);
}

TEST(FockBasisTest, Dimensions) {
  EXPECT_EQ(FockBasis(ModeSet::pair({1, 0, 0}), 4).size(), 3u);
  EXPECT_EQ(FockBasis(ModeSet::shells(1), 4).size(), 10u);
  const auto m = ModeSet::shells(2);
  const std::pair<int, std::size_t> frozen[] = {{3, 30}, {4, 117}, {5, 345}, {7, 2744}, {9, 16737}};
  for (const auto& [n, dim] : frozen) EXPECT_EQ(FockBasis(m, n).size(), dim) << n;
  const FockBasis b(m, 5);
  EXPECT_EQ(b.occupancy(b.vacuum()), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    ASSERT_EQ(b.find(b.state(i)), static_cast<std::int64_t>(i));
    ASSERT_LE(b.occupancy(i), 5);
  }
  EXPECT_THROW(FockBasis(m, 9, 1000), BasisTooLarge);
}

TEST(Eigensolver, TwoLevelAndTextbookSecondOrder) {
  const auto modes = ModeSet::pair({0, 0, 1});
  const FockBasis b(modes, 2);
  ASSERT_EQ(b.size(), 2u);
  const double F = 3.0, g = 0.2;
  const auto H0 = assemble(b, {{F, {{0, true}, {0, false}}}, {F, {{1, true}, {1, false}}}}, Assembly::Symmetrize);
  const auto V = assemble(b, {{g, {{0, true}, {1, true}}}}, Assembly::AddAdjoint);
  const auto gs = ground_state(H0 + V, 1e-14);
  EXPECT_NEAR(gs.energy, F - std::sqrt(F * F + g * g), 1e-14);
  const auto gs0 = ground_state(H0, 1e-14, nullptr);
  EXPECT_NEAR(gs0.energy, 0.0, 1e-15);
  EXPECT_NEAR(rs_pt2(H0, V, gs0.energy, gs0.vector, 1e-14), -g * g / (2.0 * F), 1e-15);
}

TEST(Eigensolver, OnePairBogoliubov) {
  const auto modes = ModeSet::pair({1, 0, 0});
  const FockBasis b(modes, 40);
  const auto G0 = build_G0(b, {5.0, 5.0}, {3.0, 3.0});
  EXPECT_EQ(G0.max_asymmetry(), 0.0);
  auto v = vacuum(b);
  EXPECT_NEAR(ground_state(G0, 1e-13, &v).energy, -1.0, 1e-12);
}

TEST(Operators, SymmetricAndNumberOperator) {
  const auto s = make(2000.0, 100.0, kTwoPi * 4.0);
  const auto modes = ModeSet::shells(2);
  const FockBasis b(modes, 5);
  const auto mt = mode_tables(modes, s.t, s.vt, s.ball);
  EXPECT_EQ(build_G0(b, mt.F, mt.G).max_asymmetry(), 0.0);
  EXPECT_EQ(build_G1tilde(b, mt, s.vt, s.N).max_asymmetry(), 0.0);
  EXPECT_EQ(build_G2(b, mt, s.vt, s.N).max_asymmetry(), 0.0);
  CubicOptions rd;
  rd.include_Rd = true;
  EXPECT_EQ(build_G1tilde(b, mt, s.vt, s.N, rd).max_asymmetry(), 0.0);
  const auto Nop = number_operator(b);
  for (std::size_t i = 0; i < b.size(); ++i) ASSERT_EQ(Nop.mat.coeff(i, i), b.occupancy(i));
}

TEST(Operators, CubicAmplitudeMatchesVertex) {
  // with tau = 0 the cubic operator sends the vacuum to sum f a+ a+ a+ |0>,
  // and the normalized state |1_p 1_q 1_{-p-q}> carries 6 f(p, q) / sqrt(N)
  const auto s = make(2000.0, 100.0, kTwoPi * 4.0);
  const auto modes = ModeSet::shells(2);
  auto mt = mode_tables(modes, s.t, s.vt, s.ball);
  std::fill(mt.ct.begin(), mt.ct.end(), 1.0);
  std::fill(mt.st.begin(), mt.st.end(), 0.0);
  const FockBasis b(modes, 3);
  const auto G1 = build_G1tilde(b, mt, s.vt, s.N);
  const Eigen::VectorXd out = G1.apply(vacuum(b));
  const IVec3 trip[][3] = {{{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}}, {{0, 0, 1}, {0, 1, -1}, {0, -1, 0}},
                           {{1, 0, 1}, {-1, 0, 0}, {0, 0, -1}}};
  for (const auto& tr : trip) {
    std::vector<std::uint8_t> occ(modes.size(), 0);
    ModeCoeffs c[3];
    for (int k = 0; k < 3; ++k) {
      const int m = modes.find(tr[k]);
      ASSERT_GE(m, 0);
      occ[static_cast<std::size_t>(m)] = 1;
      const auto i = static_cast<std::size_t>(m);
      c[k] = {mt.v[i], mt.c[i], mt.s[i], 1.0, 0.0, mt.e[i]};
    }
    const auto idx = b.find(occ.data());
    ASSERT_GE(idx, 0);
    const double expect = 6.0 * f_value(c[0], c[1], c[2]) / std::sqrt(s.N);
    EXPECT_NEAR(out[idx], expect, 1e-13 * std::abs(expect));
  }
}

TEST(PairRotation, RoundTripAndNorm) {
  const auto s = make(0.1, 1e4, kTwoPi * 2.0);
  const auto modes = ModeSet::shells(2);
  const auto mt = mode_tables(modes, s.t, s.vt, s.ball);
  const FockBasis b(modes, 6);
  const auto x = vacuum(b);
  const auto y = apply_pair_rotation(b, mt.eta, x, 1.0);
  EXPECT_NEAR(y.norm(), 1.0, 1e-14);
  EXPECT_LT((apply_pair_rotation(b, mt.eta, y, -1.0) - x).norm(), 1e-14);
  // <N> in T* |0> is sum sinh^2(eta)
  double ref = 0.0;
  for (double e : mt.eta) ref += std::sinh(e) * std::sinh(e);
  EXPECT_NEAR(y.dot(number_operator(b).apply(y)), ref, 1e-12 * ref);
}

TEST(Oracle, ReferenceParametersAtRoundoffFloor) {
  const auto s = make(0.1, 1e4, 40.0 * kPi);
  const auto modes = ModeSet::shells(2);
  const auto mt = mode_tables(modes, s.t, s.vt, s.ball);
  const FockBasis b(modes, 5);
  const auto G0 = build_G0(b, mt.F, mt.G);
  auto v = vacuum(b);
  const auto gs = ground_state(G0, 1e-12, &v);
  EXPECT_LT(rel(gs.energy, restricted_E0(mt)), 1e-12);
  const double e2 = rs_pt2(G0, build_G1tilde(b, mt, s.vt, s.N), gs.energy, gs.vector, 1e-13);
  EXPECT_LE(e2, 0.0);
  EXPECT_LT(rel(e2, restricted_e_pert(modes, mt, s.N)), 1e-10);
}

TEST(Oracle, StrongCouplingConvergesInOccupancy) {
  const auto s = make(2000.0, 100.0, 8.0 * kPi);
  const auto modes = ModeSet::shells(2);
  const auto mt = mode_tables(modes, s.t, s.vt, s.ball);
  const double E0 = restricted_E0(mt), Ep = restricted_e_pert(modes, mt, s.N);
  const double g2 = restricted_g2(modes, mt, s.vt, s.N), dep = restricted_depletion(mt);
  // the Wick pairing without the exchange contraction
  double g2_no_exchange = 0.0;
  for (std::size_t p = 0; p < modes.size(); ++p)
    for (std::size_t k = 0; k < modes.size(); ++k)
      if (k != p)
        g2_no_exchange += s.vt.of_diff(modes[k] - modes[p]) * mt.c[k] * mt.c[k] * mt.c[p] * mt.c[p] * mt.st[k] *
                          mt.st[p] * mt.ct[k] * mt.ct[p];
  g2_no_exchange /= 2.0 * s.N;

  double prev[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
  double last_g2 = 0.0;
  for (int n : {3, 5, 7, 9}) {
    const FockBasis b(modes, n);
    const auto G0 = build_G0(b, mt.F, mt.G);
    auto v = vacuum(b);
    const auto gs = ground_state(G0, 1e-12, &v);
    const double e2 = rs_pt2(G0, build_G1tilde(b, mt, s.vt, s.N), gs.energy, gs.vector, 1e-13);
    last_g2 = gs.vector.dot(build_G2(b, mt, s.vt, s.N).apply(gs.vector));
    const Eigen::VectorXd w = apply_pair_rotation(b, mt.eta, gs.vector, 1.0);
    const double d = w.dot(number_operator(b).apply(w));
    const double gaps[4] = {rel(gs.energy, E0), rel(e2, Ep), rel(last_g2, g2), rel(d, dep)};
    for (int k = 0; k < 4; ++k) {
      EXPECT_LT(gaps[k], prev[k]) << "quantity " << k << " n_max " << n;
      prev[k] = gaps[k];
    }
    EXPECT_LE(e2, 0.0);
  }
  EXPECT_LT(prev[0], 1e-11);
  EXPECT_LT(prev[1], 1e-10);
  EXPECT_LT(prev[2], 1e-10);
  EXPECT_LT(prev[3], 1e-7);
  // the exchange contraction is resolved by the oracle many times over
  EXPECT_GT(rel(last_g2, g2_no_exchange), 1e4 * prev[2]);
}
