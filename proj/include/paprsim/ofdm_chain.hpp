#pragma once

#include <cstddef>
#include <span>

#include "paprsim/spectral.hpp"

namespace paprsim {

struct ChainParams {
  std::size_t subcarriers = 128;  // U
  int oversampling = 8;           // V
  double fs = 8e6;                // Hz
  double fc = 2e6;                // Hz
  std::size_t cp_len = 32;        // samples at fs

  std::size_t symbol_length() const noexcept {
    return subcarriers * static_cast<std::size_t>(oversampling);
  }
  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

/// Oversampled time-domain OFDM symbol (length UV, rate fs).
ComplexSequence build_symbol(std::span<const cplx> data, const ChainParams& params);

/// sqrt(2) * Re{ s[m] exp(j 2 pi fc m / fs) }, stored with zero imaginary parts.
ComplexSequence upconvert(const ComplexSequence& baseband, const ChainParams& params);

/// Mixes down by sqrt(2) exp(-j 2 pi fc m / fs) and keeps only the occupied
/// subcarrier bins, which removes the 2fc image.
ComplexSequence downconvert(const ComplexSequence& passband, const ChainParams& params);

/// Complex envelope of a real passband waveform via its analytic signal.
/// Unlike downconvert nothing inside (0, fs/2) is discarded, so out-of-band
/// residue left by a filter still shows up in the envelope.
ComplexSequence complex_envelope(const ComplexSequence& passband, const ChainParams& params);

ComplexSequence add_cp(const ComplexSequence& x, std::size_t cp_len);
ComplexSequence remove_cp(const ComplexSequence& x, std::size_t cp_len);

/// y[m] = x[(m + shift) mod N].
ComplexSequence circular_advance(const ComplexSequence& x, std::ptrdiff_t shift);

}  // namespace paprsim
