#include "paprsim/ofdm_chain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paprsim {

namespace {

cplx carrier(std::size_t m, const ChainParams& p, double sign) {
  const double phase = 2.0 * std::numbers::pi * p.fc * static_cast<double>(m) / p.fs;
  return std::polar(1.0, sign * phase);
}

}  // namespace

void ChainParams::validate() const {
  if (subcarriers < 2 || !is_power_of_two(subcarriers))
    throw std::invalid_argument("subcarrier count " + std::to_string(subcarriers) +
                                " is not a power of two >= 2");
  if (oversampling < 1 || !is_power_of_two(static_cast<std::size_t>(oversampling)))
    throw std::invalid_argument("oversampling factor " + std::to_string(oversampling) +
                                " is not a power of two >= 1");
  if (!(fs > 0.0)) throw std::invalid_argument("fs must be > 0");
  if (!(fc >= 0.0) || !(fc < fs / 2.0))
    throw std::invalid_argument("carrier fc must lie in [0, fs/2)");
  if (cp_len >= symbol_length())
    throw std::invalid_argument("cp_len must be smaller than U*V");
}

ComplexSequence build_symbol(std::span<const cplx> data, const ChainParams& params) {
  params.validate();
  if (data.size() != params.subcarriers)
    throw std::invalid_argument("build_symbol: expected " +
                                std::to_string(params.subcarriers) + " symbols, got " +
                                std::to_string(data.size()));
  return oversampled_ifft(SubcarrierFrame({data.begin(), data.end()}), params.oversampling,
                          params.fs);
}

ComplexSequence upconvert(const ComplexSequence& baseband, const ChainParams& params) {
  if (!(params.fc < params.fs / 2.0))
    throw std::invalid_argument("upconvert: fc >= fs/2 aliases");
  std::vector<cplx> out(baseband.size());
  for (std::size_t m = 0; m < out.size(); ++m)
    out[m] = cplx{std::sqrt(2.0) * (baseband[m] * carrier(m, params, 1.0)).real(), 0.0};
  return ComplexSequence(std::move(out), params.fs);
}

ComplexSequence downconvert(const ComplexSequence& passband, const ChainParams& params) {
  const std::size_t n = passband.size();
  if (n != params.symbol_length())
    throw std::invalid_argument("downconvert: expected " +
                                std::to_string(params.symbol_length()) + " samples, got " +
                                std::to_string(n));
  std::vector<cplx> mixed(n);
  for (std::size_t m = 0; m < n; ++m)
    mixed[m] = std::sqrt(2.0) * passband[m] * carrier(m, params, -1.0);
  fft_inplace(mixed, Direction::forward);
  std::vector<cplx> kept(n, cplx{0.0, 0.0});
  for (std::size_t k : occupied_bins(params.subcarriers, params.oversampling))
    kept[k] = mixed[k];
  fft_inplace(kept, Direction::inverse);
  return ComplexSequence(std::move(kept), params.fs);
}

ComplexSequence complex_envelope(const ComplexSequence& passband, const ChainParams& params) {
  const std::size_t n = passband.size();
  std::vector<cplx> spec = passband.samples();
  fft_inplace(spec, Direction::forward);
  for (std::size_t k = 1; k < n / 2; ++k) spec[k] *= 2.0;
  for (std::size_t k = n / 2 + 1; k < n; ++k) spec[k] = 0.0;
  fft_inplace(spec, Direction::inverse);
  for (std::size_t m = 0; m < n; ++m)
    spec[m] *= carrier(m, params, -1.0) / std::sqrt(2.0);
  return ComplexSequence(std::move(spec), params.fs);
}

ComplexSequence add_cp(const ComplexSequence& x, std::size_t cp_len) {
  if (cp_len >= x.size())
    throw std::invalid_argument("add_cp: cp_len " + std::to_string(cp_len) +
                                " >= symbol length " + std::to_string(x.size()));
  std::vector<cplx> out;
  out.reserve(x.size() + cp_len);
  out.insert(out.end(), x.samples().end() - static_cast<std::ptrdiff_t>(cp_len),
             x.samples().end());
  out.insert(out.end(), x.samples().begin(), x.samples().end());
  return x.with_samples(std::move(out));
}

ComplexSequence remove_cp(const ComplexSequence& x, std::size_t cp_len) {
  if (cp_len >= x.size())
    throw std::invalid_argument("remove_cp: cp_len " + std::to_string(cp_len) +
                                " >= sequence length " + std::to_string(x.size()));
  return x.with_samples({x.samples().begin() + static_cast<std::ptrdiff_t>(cp_len),
                         x.samples().end()});
}

ComplexSequence circular_advance(const ComplexSequence& x, std::ptrdiff_t shift) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<cplx> out(x.size());
  const std::ptrdiff_t s = ((shift % n) + n) % n;
  for (std::ptrdiff_t m = 0; m < n; ++m) out[static_cast<std::size_t>(m)] = x[static_cast<std::size_t>((m + s) % n)];
  return x.with_samples(std::move(out));
}

}  // namespace paprsim
