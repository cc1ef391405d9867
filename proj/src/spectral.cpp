#include "paprsim/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace paprsim {

ComplexSequence::ComplexSequence(std::vector<cplx> samples, double rate_hz)
    : samples_(std::move(samples)), rate_(rate_hz) {
  if (samples_.empty()) throw std::invalid_argument("ComplexSequence: empty");
  if (!(rate_ > 0.0)) throw std::invalid_argument("ComplexSequence: rate must be > 0");
}

bool ComplexSequence::is_real() const noexcept {
  for (const auto& s : samples_)
    if (s.imag() != 0.0) return false;
  return true;
}

SubcarrierFrame::SubcarrierFrame(std::vector<cplx> bins) : bins_(std::move(bins)) {
  if (bins_.size() < 2 || !is_power_of_two(bins_.size()))
    throw std::invalid_argument("SubcarrierFrame: size " + std::to_string(bins_.size()) +
                                " is not a power of two >= 2");
}

namespace {

// Twiddles and bit-reversal permutation for one transform length.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n), rev_(n), twiddle_(n - 1) {
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (unsigned b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      rev_[i] = r;
    }
    for (std::size_t half = 1; half < n; half <<= 1)
      for (std::size_t j = 0; j < half; ++j)
        twiddle_[half - 1 + j] =
            std::polar(1.0, -std::numbers::pi * static_cast<double>(j) / static_cast<double>(half));
  }

  void run(std::span<cplx> a, Direction dir) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
    const double sign = dir == Direction::inverse ? -1.0 : 1.0;
    // Butterflies on raw doubles: std::complex multiplication goes through the
    // Annex G NaN path otherwise.
    auto* d = reinterpret_cast<double*>(a.data());
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      // Stage twiddles stored contiguously at offset half - 1.
      const cplx* tw = twiddle_.data() + (half - 1);
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          const double wr = tw[j].real();
          const double wi = sign * tw[j].imag();
          double* p = d + 2 * (start + j);
          double* q = d + 2 * (start + j + half);
          const double vr = q[0] * wr - q[1] * wi;
          const double vi = q[0] * wi + q[1] * wr;
          q[0] = p[0] - vr;
          q[1] = p[1] - vi;
          p[0] += vr;
          p[1] += vi;
        }
      }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
    for (std::size_t i = 0; i < 2 * n_; ++i) d[i] *= scale;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> rev_;
  std::vector<cplx> twiddle_;
};

const FftPlan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, FftPlan> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, FftPlan(n)).first;
  return it->second;
}

void require_oversampling(int oversampling) {
  if (oversampling < 1)
    throw std::invalid_argument("oversampling factor must be >= 1, got " +
                                std::to_string(oversampling));
  if (!is_power_of_two(static_cast<std::size_t>(oversampling)))
    throw std::invalid_argument("oversampling factor must be a power of two, got " +
                                std::to_string(oversampling));
}

}  // namespace

void fft_inplace(std::span<cplx> data, Direction dir) {
  if (!is_power_of_two(data.size()))
    throw std::invalid_argument("transform length " + std::to_string(data.size()) +
                                " is not a power of two");
  if (data.size() == 1) return;
  plan_for(data.size()).run(data, dir);
}

ComplexSequence dft(const ComplexSequence& x, Direction dir) {
  std::vector<cplx> out = x.samples();
  fft_inplace(out, dir);
  return x.with_samples(std::move(out));
}

std::vector<std::size_t> occupied_bins(std::size_t subcarriers, int oversampling) {
  require_oversampling(oversampling);
  const std::size_t n = subcarriers * static_cast<std::size_t>(oversampling);
  std::vector<std::size_t> idx;
  idx.reserve(subcarriers);
  for (std::size_t k = 0; k <= subcarriers / 2; ++k) idx.push_back(k);
  for (std::size_t k = subcarriers / 2 + 1; k < subcarriers; ++k)
    idx.push_back(n - subcarriers + k);
  return idx;
}

SubcarrierFrame zero_pad_mid(const SubcarrierFrame& frame, int oversampling) {
  const std::size_t u = frame.size();
  const auto idx = occupied_bins(u, oversampling);
  std::vector<cplx> out(u * static_cast<std::size_t>(oversampling), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < u; ++k) out[idx[k]] = frame.bins()[k];
  return SubcarrierFrame(std::move(out));
}

ComplexSequence oversampled_ifft(const SubcarrierFrame& frame, int oversampling,
                                 double rate_hz) {
  auto padded = zero_pad_mid(frame, oversampling).bins();
  fft_inplace(padded, Direction::inverse);
  const double scale = std::sqrt(static_cast<double>(oversampling));
  for (auto& v : padded) v *= scale;
  return ComplexSequence(std::move(padded), rate_hz);
}

SubcarrierFrame oversampled_fft(const ComplexSequence& x, std::size_t subcarriers) {
  if (subcarriers < 2 || x.size() % subcarriers != 0)
    throw std::invalid_argument("oversampled_fft: length " + std::to_string(x.size()) +
                                " is not a multiple of " + std::to_string(subcarriers));
  const int oversampling = static_cast<int>(x.size() / subcarriers);
  std::vector<cplx> spec = x.samples();
  fft_inplace(spec, Direction::forward);
  const auto idx = occupied_bins(subcarriers, oversampling);
  const double scale = 1.0 / std::sqrt(static_cast<double>(oversampling));
  std::vector<cplx> bins(subcarriers);
  for (std::size_t k = 0; k < subcarriers; ++k) bins[k] = spec[idx[k]] * scale;
  return SubcarrierFrame(std::move(bins));
}

double bin_frequency(std::size_t k, std::size_t n, double rate_hz) noexcept {
  const double df = rate_hz / static_cast<double>(n);
  if (k <= n / 2) return static_cast<double>(k) * df;
  return -static_cast<double>(n - k) * df;
}

std::vector<cplx> circular_xcorr(std::span<const cplx> y, std::span<const cplx> x) {
  if (y.size() != x.size())
    throw std::invalid_argument("circular_xcorr: length mismatch");
  std::vector<cplx> fy(y.begin(), y.end());
  std::vector<cplx> fx(x.begin(), x.end());
  fft_inplace(fy, Direction::forward);
  fft_inplace(fx, Direction::forward);
  for (std::size_t k = 0; k < fy.size(); ++k) fy[k] *= std::conj(fx[k]);
  fft_inplace(fy, Direction::inverse);
  // Two unitary forward transforms and one inverse leave a sqrt(N) factor.
  const double scale = std::sqrt(static_cast<double>(fy.size()));
  for (auto& v : fy) v *= scale;
  return fy;
}

}  // namespace paprsim
