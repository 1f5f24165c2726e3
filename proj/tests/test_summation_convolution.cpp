#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bosecorr/convolution.hpp"
#include "bosecorr/errors.hpp"
#include "bosecorr/summation.hpp"

using namespace bosecorr;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

std::vector<double> gaussian_kernel(int max_m) {
  std::vector<double> k(static_cast<std::size_t>(max_m) + 1);
  for (int m = 0; m <= max_m; ++m) k[static_cast<std::size_t>(m)] = std::exp(-0.05 * m) * (1.0 + 0.1 * std::cos(m));
  return k;
}

std::vector<double> naive(const LatticeBall& T, const LatticeBall& S, const std::vector<double>& k,
                          const std::vector<double>& x) {
  std::vector<double> out(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < S.size(); ++j) s += static_cast<long double>(k[norm2(T.points[i] - S.points[j])]) * x[j];
    out[i] = static_cast<double>(s);
  }
  return out;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0, m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    m = std::max(m, std::abs(b[i]));
  }
  return d / m;
}

}  // namespace

TEST(Kahan, RecoversLostLowOrderBits) {
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i) s.add(1e-16);
  EXPECT_NEAR(s.value(), 1.0 + 1e-10, 1e-22);
  KahanSum t;
  for (double x : {1e100, 1.0, -1e100}) t.add(x);
  EXPECT_EQ(t.value(), 1.0);
}

TEST(DetSum, IndependentOfThreadCount) {
  const auto x = random_vector(100000, 3);
  auto f = [&](std::size_t i) { return x[i] * 1e-3 + 1e8 * (i % 2 ? 1.0 : -1.0); };
  const int saved = thread_count();
  set_thread_count(1);
  const double a = det_sum(x.size(), f);
  set_thread_count(4);
  const double b = det_sum(x.size(), f);
  set_thread_count(7);
  const double c = det_sum(x.size(), f);
  set_thread_count(saved);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  long double ref = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) ref += f(i);
  EXPECT_NEAR(a, static_cast<double>(ref), 1e-9);
}

TEST(ParallelChunks, CoversRangeOnce) {
  std::vector<int> hits(10007, 0);
  parallel_chunks(hits.size(), 64, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ++hits[i];
  });
  for (int h : hits) ASSERT_EQ(h, 1);
}

TEST(FftSize, SmoothNumbers) {
  EXPECT_EQ(fft_friendly_size(1), 1);
  EXPECT_EQ(fft_friendly_size(7), 8);
  EXPECT_EQ(fft_friendly_size(41), 45);
  EXPECT_EQ(fft_friendly_size(81), 81);
  EXPECT_EQ(fft_friendly_size(83), 90);
  for (int n = 1; n < 500; ++n) {
    int m = fft_friendly_size(n);
    ASSERT_GE(m, n);
    for (int p : {2, 3, 5})
      while (m % p == 0) m /= p;
    ASSERT_EQ(m, 1);
  }
}

TEST(Convolution, DirectAndFftMatchNaive) {
  const auto ball = enumerate_lattice(kTwoPi * std::sqrt(20.0));
  const auto k = gaussian_kernel(12 * ball.n_max * ball.n_max);
  const auto x = random_vector(ball.size(), 11);
  const auto ref = naive(ball, ball, k, x);
  EXPECT_LT(max_rel(lattice_convolve(ball, ball, k, x, ConvMethod::Direct), ref), 1e-14);
  EXPECT_LT(max_rel(lattice_convolve(ball, ball, k, x, ConvMethod::FFT), ref), 1e-13);
}

TEST(Convolution, DistinctTargetAndSource) {
  const auto big = enumerate_lattice(kTwoPi * 4.0);
  const auto small = enumerate_lattice(kTwoPi * 2.0);
  const auto k = gaussian_kernel(12 * big.n_max * big.n_max);
  const auto x = random_vector(big.size(), 5);
  const auto ref = naive(small, big, k, x);
  EXPECT_LT(max_rel(lattice_convolve(small, big, k, x, ConvMethod::Direct), ref), 1e-14);
  EXPECT_LT(max_rel(lattice_convolve(small, big, k, x, ConvMethod::FFT), ref), 1e-13);
}

TEST(Convolution, EvenInputGivesExactlyEvenOutput) {
  const auto ball = enumerate_lattice(kTwoPi * 5.0);
  const auto k = gaussian_kernel(12 * ball.n_max * ball.n_max);
  auto x = random_vector(ball.size(), 9);
  for (std::size_t i = 0; i < ball.size(); ++i) x[ball.neg(i)] = x[i];
  for (auto method : {ConvMethod::Direct, ConvMethod::FFT}) {
    const auto y = lattice_convolve(ball, ball, k, x, method);
    for (std::size_t i = 0; i < ball.size(); ++i) ASSERT_EQ(y[i], y[ball.neg(i)]);
  }
}

TEST(Convolution, ReusableAndAutoSelection) {
  const auto small = enumerate_lattice(kTwoPi * 3.0);
  const auto k = gaussian_kernel(12 * small.n_max * small.n_max);
  Convolver c(small, small, k);
  EXPECT_EQ(c.method(), ConvMethod::Direct);
  const auto x = random_vector(small.size(), 1);
  EXPECT_EQ(c.apply(x), c.apply(x));
  EXPECT_THROW(c.apply(std::vector<double>(3, 1.0)), InvalidArgument);

  const auto big = enumerate_lattice(kTwoPi * 11.0);
  ASSERT_GT(big.size(), kDirectConvLimit);
  Convolver f(big, big, gaussian_kernel(12 * big.n_max * big.n_max));
  EXPECT_EQ(f.method(), ConvMethod::FFT);
  EXPECT_GE(f.grid_size(), 4 * big.n_max + 1);
}
