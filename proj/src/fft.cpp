#include "nlse/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), buf_in_(n), buf_out_(n) {
  if (n == 0) fail(ErrorCode::InvalidSize, "fft: size must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(buf_in_.data()),
                               as_fftw(buf_out_.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(buf_in_.data()),
                               as_fftw(buf_out_.data()), FFTW_BACKWARD,
                               FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft::forward(const std::complex<double>* in,
                  std::complex<double>* out) const {
  std::copy(in, in + n_, buf_in_.begin());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::copy(buf_out_.begin(), buf_out_.end(), out);
}

void Fft::inverse(const std::complex<double>* in,
                  std::complex<double>* out) const {
  std::copy(in, in + n_, buf_in_.begin());
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = buf_out_[j] * scale;
}

std::vector<std::complex<double>> Fft::forward(
    const std::vector<std::complex<double>>& in) const {
  std::vector<std::complex<double>> out(n_);
  forward(in.data(), out.data());
  return out;
}

std::vector<std::complex<double>> Fft::inverse(
    const std::vector<std::complex<double>>& in) const {
  std::vector<std::complex<double>> out(n_);
  inverse(in.data(), out.data());
  return out;
}

}  // namespace nlse
