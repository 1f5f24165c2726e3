#include <benchmark/benchmark.h>

#include "bosecorr/corrections.hpp"

using namespace bosecorr;

namespace {

struct Fixture {
  LatticeBall ball, ball2;
  ScaledPotentialTable vt;
  ScatteringSolution sol;
  BogoliubovTables t;

  explicit Fixture(double K) : ball(enumerate_lattice(K)), ball2(enumerate_lattice(K / 2.0)) {
    vt = scaled_table(Potential{0.1, 0.25}, ball, 1e4, 0.75);
    sol = solve_eta(ball, vt);
    t = build_tables(sol, vt, ball);
  }
};

const Fixture& fixture(int k_over_pi) {
  static const Fixture f20(20.0 * kPi), f40(40.0 * kPi);
  return k_over_pi == 20 ? f20 : f40;
}

void BM_Convolution(benchmark::State& st) {
  const auto& f = fixture(static_cast<int>(st.range(0)));
  const auto method = st.range(1) ? ConvMethod::FFT : ConvMethod::Direct;
  Convolver conv(f.ball, f.ball, f.vt.radial_table(), method);
  for (auto _ : st) benchmark::DoNotOptimize(conv.apply(f.sol.eta));
  st.counters["points"] = static_cast<double>(f.ball.size());
}
BENCHMARK(BM_Convolution)->Args({20, 0})->Args({20, 1})->Args({40, 1})->Unit(benchmark::kMillisecond);

void BM_SolveEta(benchmark::State& st) {
  const auto& f = fixture(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_eta(f.ball, f.vt));
}
BENCHMARK(BM_SolveEta)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_EPert(benchmark::State& st) {
  const auto& f = fixture(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(e_pert_tilde(f.t, f.vt, f.ball, f.ball2));
}
BENCHMARK(BM_EPert)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ComputeEnergy(benchmark::State& st) {
  RunParams p;
  for (auto _ : st) benchmark::DoNotOptimize(compute_energy(p));
}
BENCHMARK(BM_ComputeEnergy)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
