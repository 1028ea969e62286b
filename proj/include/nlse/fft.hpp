#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nlse {

/// Complex 1-d FFT of fixed size backed by FFTW. forward() is unnormalized,
/// inverse() divides by n, so inverse(forward(x)) == x up to roundoff.
///
/// An instance owns its plans and scratch buffers and must not be shared
/// between threads; distinct instances are safe concurrently (plan
/// creation/destruction is serialized internally on FFTW's global planner).
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }

  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, std::complex<double>* out) const;

  std::vector<std::complex<double>> forward(
      const std::vector<std::complex<double>>& in) const;
  std::vector<std::complex<double>> inverse(
      const std::vector<std::complex<double>>& in) const;

 private:
  std::size_t n_;
  void* plan_fwd_;
  void* plan_bwd_;
  mutable std::vector<std::complex<double>> buf_in_;
  mutable std::vector<std::complex<double>> buf_out_;
};

}  // namespace nlse
