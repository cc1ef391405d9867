#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "paprsim/modem.hpp"
#include "paprsim/spectral.hpp"

namespace paprsim {

/// 10 log10(max |x|^2 / mean |x|^2). Rejects an all-zero input.
double papr_db(std::span<const cplx> x);
inline double papr_db(const ComplexSequence& x) { return papr_db(x.samples()); }

/// Empirical Pr[PAPR > threshold] per threshold.
struct CcdfCurve {
  std::vector<double> thresholds_db;
  std::vector<double> probs;
  std::size_t n_trials = 0;
};

CcdfCurve ccdf(std::span<const double> papr_samples_db, std::span<const double> thresholds_db);

/// Evenly spaced thresholds lo, lo+step, ..., hi.
std::vector<double> threshold_grid(double lo_db, double hi_db, double step_db);

/// PAPR level at which the curve crosses probability p, interpolated linearly
/// in (threshold, log10 prob). p must lie within [smallest positive prob,
/// largest prob]; otherwise std::out_of_range with the valid range.
double papr_at_ccdf(const CcdfCurve& curve, double p);

/// Which field the noise lives in: circular complex, or real-valued for a
/// real passband waveform.
enum class NoiseField { complex, real };

/// Adds white Gaussian noise for the requested Eb/N0. Eb is taken from the
/// measured mean power of x times `samples_per_symbol` (samples carrying one
/// constellation symbol's energy) divided by bits per symbol. Complex noise
/// gets variance N0 per sample, real noise N0/2.
ComplexSequence awgn(const ComplexSequence& x, double ebn0_db, int bits_per_symbol,
                     double samples_per_symbol, std::uint64_t seed,
                     NoiseField field = NoiseField::complex);

/// Per-sample noise variance awgn() would use for this signal.
double awgn_noise_variance(const ComplexSequence& x, double ebn0_db, int bits_per_symbol,
                           double samples_per_symbol, NoiseField field);

struct BitErrors {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  double rate() const { return bits == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(bits); }
};

/// Hamming distance; rejects streams of different length.
BitErrors ber_count(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx);

/// Gray-coded QPSK / 4-QAM over AWGN: Q(sqrt(2 Eb/N0)).
double analytical_ber(ModScheme scheme, double ebn0_db);

}  // namespace paprsim
