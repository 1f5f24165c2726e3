#include "bosecorr/summation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace bosecorr {

namespace {

int initial_threads() {
  if (const char* env = std::getenv("BOSECORR_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int>& threads_setting() {
  static std::atomic<int> n{initial_threads()};
  return n;
}

}  // namespace

int thread_count() { return threads_setting().load(); }

void set_thread_count(int n) { threads_setting().store(n > 0 ? n : initial_threads()); }

void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  const std::size_t workers = std::min<std::size_t>(nchunks, static_cast<std::size_t>(thread_count()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) body(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t c = next++; c < nchunks; c = next++) body(c * chunk, std::min(n, (c + 1) * chunk));
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
}

double det_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
  const std::size_t nchunks = (n + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(nchunks, 0.0);
  parallel_chunks(n, kSumChunk, [&](std::size_t b, std::size_t e) {
    KahanSum s;
    for (std::size_t i = b; i < e; ++i) s.add(f(i));
    partial[b / kSumChunk] = s.value();
  });
  return kahan_total(partial);
}

}  // namespace bosecorr
