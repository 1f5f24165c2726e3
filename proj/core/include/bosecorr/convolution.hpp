#pragma once

#include <memory>
#include <vector>

#include "bosecorr/lattice_potential.hpp"

namespace bosecorr {

enum class ConvMethod { Auto, Direct, FFT };

// Above this many source points Auto switches from the double loop to the
// zero-padded FFT grid.
inline constexpr std::size_t kDirectConvLimit = 500;

// out[i] = sum_j k(|t_i - s_j|^2) x_j for target points t_i and source points
// s_j. k is a radial kernel tabulated by integer |n|^2 and must cover every
// difference of target and source points.
//
// The FFT kernel spectrum is computed once, so repeated apply() calls (the
// scattering iteration) only cost two transforms.
class Convolver {
 public:
  Convolver(const LatticeBall& target, const LatticeBall& source, std::vector<double> radial_kernel,
            ConvMethod method = ConvMethod::Auto);
  ~Convolver();
  Convolver(Convolver&&) noexcept;
  Convolver& operator=(Convolver&&) noexcept;

  std::vector<double> apply(const std::vector<double>& x) const;
  ConvMethod method() const { return method_; }
  int grid_size() const;

 private:
  const LatticeBall* target_;
  const LatticeBall* source_;
  std::vector<double> kernel_;
  ConvMethod method_;
  struct Fft;
  std::unique_ptr<Fft> fft_;

  std::vector<double> apply_direct(const std::vector<double>& x) const;
  std::vector<double> apply_fft(const std::vector<double>& x) const;
};

// one-shot convenience wrapper
std::vector<double> lattice_convolve(const LatticeBall& target, const LatticeBall& source,
                                     const std::vector<double>& radial_kernel, const std::vector<double>& x,
                                     ConvMethod method = ConvMethod::Auto);

// smallest 2^a 3^b 5^c >= n
int fft_friendly_size(int n);

}  // namespace bosecorr
