#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace paprsim {

using cplx = std::complex<double>;

/// Ordered complex baseband (or real passband stored with zero imaginary
/// parts) samples at a fixed sample rate.
class ComplexSequence {
 public:
  ComplexSequence(std::vector<cplx> samples, double rate_hz);

  const std::vector<cplx>& samples() const noexcept { return samples_; }
  std::vector<cplx>& samples() noexcept { return samples_; }
  double rate() const noexcept { return rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const noexcept;

  /// Same rate, new samples.
  ComplexSequence with_samples(std::vector<cplx> samples) const {
    return ComplexSequence(std::move(samples), rate_);
  }

 private:
  std::vector<cplx> samples_;
  double rate_;
};

/// U frequency-domain symbols, one per subcarrier. U is a power of two >= 2.
class SubcarrierFrame {
 public:
  explicit SubcarrierFrame(std::vector<cplx> bins);

  const std::vector<cplx>& bins() const noexcept { return bins_; }
  std::size_t size() const noexcept { return bins_.size(); }

 private:
  std::vector<cplx> bins_;
};

enum class Direction { forward, inverse };

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

/// In-place unitary radix-2 transform (1/sqrt(N) both ways). Throws
/// std::invalid_argument on a non-power-of-two length.
void fft_inplace(std::span<cplx> data, Direction dir);

ComplexSequence dft(const ComplexSequence& x, Direction dir);

/// Inserts U(V-1) zeros between bin U/2 and bin UV-U/2+1. Bin U/2 stays in
/// the low half.
SubcarrierFrame zero_pad_mid(const SubcarrierFrame& frame, int oversampling);

/// Indices of the UV-point spectrum that carry the U subcarriers, in
/// subcarrier order.
std::vector<std::size_t> occupied_bins(std::size_t subcarriers, int oversampling);

/// V-times oversampled time signal. Scaled by sqrt(V) after the unitary
/// inverse transform so the mean power does not depend on V.
ComplexSequence oversampled_ifft(const SubcarrierFrame& frame, int oversampling,
                                 double rate_hz = 1.0);

/// Inverse of oversampled_ifft: forward transform, read the occupied bins,
/// undo the sqrt(V) scale.
SubcarrierFrame oversampled_fft(const ComplexSequence& x, std::size_t subcarriers);

/// Signed frequency of bin k in an n-point spectrum at the given rate.
double bin_frequency(std::size_t k, std::size_t n, double rate_hz) noexcept;

/// Circular cross-correlation c[d] = sum_m y[m] * conj(x[m - d]).
std::vector<cplx> circular_xcorr(std::span<const cplx> y, std::span<const cplx> x);

}  // namespace paprsim
