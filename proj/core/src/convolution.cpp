#include "bosecorr/convolution.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>

#include "bosecorr/errors.hpp"
#include "bosecorr/summation.hpp"

namespace bosecorr {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};
template <class T>
using fftw_buf = std::unique_ptr<T[], FftwDeleter<T>>;

fftw_buf<double> alloc_real(std::size_t n) { return fftw_buf<double>(fftw_alloc_real(n)); }
fftw_buf<fftw_complex> alloc_cplx(std::size_t n) { return fftw_buf<fftw_complex>(fftw_alloc_complex(n)); }

}  // namespace

int fft_friendly_size(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int f : {2, 3, 5})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

struct Convolver::Fft {
  int L = 0;
  std::size_t nreal = 0, ncplx = 0;
  fftw_plan fwd = nullptr, bwd = nullptr;
  std::vector<std::complex<double>> kernel_hat;

  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }

  std::size_t at(int x, int y, int z) const {
    auto w = [this](int v) { return static_cast<std::size_t>(((v % L) + L) % L); };
    return (w(x) * static_cast<std::size_t>(L) + w(y)) * static_cast<std::size_t>(L) + w(z);
  }
};

Convolver::Convolver(const LatticeBall& target, const LatticeBall& source, std::vector<double> radial_kernel,
                     ConvMethod method)
    : target_(&target), source_(&source), kernel_(std::move(radial_kernel)), method_(method) {
  const int D = target.n_max + source.n_max;
  if (static_cast<long>(kernel_.size()) <= 3L * D * D)
    throw InvalidArgument("radial kernel table does not cover all lattice differences");
  if (method_ == ConvMethod::Auto)
    method_ = source.size() <= kDirectConvLimit ? ConvMethod::Direct : ConvMethod::FFT;
  if (method_ != ConvMethod::FFT) return;

  fft_ = std::make_unique<Fft>();
  const int L = fft_friendly_size(2 * D + 1);
  fft_->L = L;
  fft_->nreal = static_cast<std::size_t>(L) * L * L;
  fft_->ncplx = static_cast<std::size_t>(L) * L * (L / 2 + 1);
  auto in = alloc_real(fft_->nreal);
  auto out = alloc_cplx(fft_->ncplx);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fft_->fwd = fftw_plan_dft_r2c_3d(L, L, L, in.get(), out.get(), FFTW_ESTIMATE);
    fft_->bwd = fftw_plan_dft_c2r_3d(L, L, L, out.get(), in.get(), FFTW_ESTIMATE);
  }
  std::fill(in.get(), in.get() + fft_->nreal, 0.0);
  for (int x = -D; x <= D; ++x)
    for (int y = -D; y <= D; ++y)
      for (int z = -D; z <= D; ++z) in[fft_->at(x, y, z)] = kernel_[static_cast<std::size_t>(x * x + y * y + z * z)];
  fftw_execute_dft_r2c(fft_->fwd, in.get(), out.get());
  fft_->kernel_hat.resize(fft_->ncplx);
  for (std::size_t i = 0; i < fft_->ncplx; ++i) fft_->kernel_hat[i] = {out[i][0], out[i][1]};
}

Convolver::~Convolver() = default;
Convolver::Convolver(Convolver&&) noexcept = default;
Convolver& Convolver::operator=(Convolver&&) noexcept = default;

int Convolver::grid_size() const { return fft_ ? fft_->L : 0; }

std::vector<double> Convolver::apply(const std::vector<double>& x) const {
  if (x.size() != source_->size()) throw InvalidArgument("convolution input does not match source lattice");
  auto out = method_ == ConvMethod::FFT ? apply_fft(x) : apply_direct(x);
  // An even input gives an even result; restore the symmetry roundoff broke.
  const auto& S = *source_;
  for (std::size_t j = 0; j < S.size(); ++j)
    if (x[j] != x[S.neg(j)]) return out;
  const auto& T = *target_;
  for (std::size_t i = 0; i < T.size(); ++i) {
    const std::size_t k = T.neg(i);
    if (k > i) out[i] = out[k] = 0.5 * (out[i] + out[k]);
  }
  return out;
}

std::vector<double> Convolver::apply_direct(const std::vector<double>& x) const {
  const auto& T = *target_;
  const auto& S = *source_;
  std::vector<double> out(T.size());
  parallel_chunks(T.size(), 64, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const IVec3& t = T.points[i];
      KahanSum s;
      for (std::size_t j = 0; j < S.size(); ++j) {
        if (x[j] == 0.0) continue;
        s.add(kernel_[static_cast<std::size_t>(norm2(t - S.points[j]))] * x[j]);
      }
      out[i] = s.value();
    }
  });
  return out;
}

std::vector<double> Convolver::apply_fft(const std::vector<double>& x) const {
  const Fft& f = *fft_;
  auto in = alloc_real(f.nreal);
  auto spec = alloc_cplx(f.ncplx);
  std::fill(in.get(), in.get() + f.nreal, 0.0);
  const auto& S = *source_;
  for (std::size_t j = 0; j < S.size(); ++j) {
    const auto& n = S.points[j];
    in[f.at(n[0], n[1], n[2])] = x[j];
  }
  fftw_execute_dft_r2c(f.fwd, in.get(), spec.get());
  for (std::size_t i = 0; i < f.ncplx; ++i) {
    const std::complex<double> v = std::complex<double>(spec[i][0], spec[i][1]) * f.kernel_hat[i];
    spec[i][0] = v.real();
    spec[i][1] = v.imag();
  }
  fftw_execute_dft_c2r(f.bwd, spec.get(), in.get());
  const double norm = 1.0 / static_cast<double>(f.nreal);
  const auto& T = *target_;
  std::vector<double> out(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    const auto& n = T.points[i];
    out[i] = in[f.at(n[0], n[1], n[2])] * norm;
  }
  return out;
}

std::vector<double> lattice_convolve(const LatticeBall& target, const LatticeBall& source,
                                     const std::vector<double>& radial_kernel, const std::vector<double>& x,
                                     ConvMethod method) {
  return Convolver(target, source, radial_kernel, method).apply(x);
}

}  // namespace bosecorr
