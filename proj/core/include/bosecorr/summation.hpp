#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace bosecorr {

// Neumaier variant of compensated summation.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Worker count used by parallel loops. Starts from hardware_concurrency,
// BOSECORR_THREADS in the environment overrides it, set_thread_count overrides both.
int thread_count();
void set_thread_count(int n);

constexpr std::size_t kSumChunk = 4096;

// Runs body(begin, end) over [0, n) split in fixed chunks. Chunks are
// independent; the body must only write to chunk-owned output.
void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& body);

// Sum of f(i) for i in [0, n). Each fixed-size chunk is summed with KahanSum,
// partials are then merged in chunk order, so the result does not depend on
// the number of threads.
double det_sum(std::size_t n, const std::function<double(std::size_t)>& f);

inline double kahan_total(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value();
}

}  // namespace bosecorr
