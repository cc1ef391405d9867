#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "paprsim/elliptic.hpp"
#include "paprsim/spectral.hpp"

namespace paprsim {

/// (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

struct BiquadCascade {
  std::vector<Biquad> sections;
  double overall_gain = 1.0;

  /// Largest pole modulus over all sections.
  double max_pole_radius() const;
  bool is_stable() const { return max_pole_radius() < 1.0; }
};

/// Bilinear transform with z = (2 fs + s) / (2 fs - s). Zeros at infinity go
/// to z = -1. Rejects prototypes whose critical frequencies reach fs/2.
BiquadCascade bilinear(const AnalogPrototype& proto, double fs);

/// Causal direct-form-II-transposed filtering from zero state.
/// Throws std::invalid_argument for an unstable cascade.
ComplexSequence filter_apply(const BiquadCascade& cascade, const ComplexSequence& x);

/// Steady-state response to the periodic extension of x: the filter is run
/// over enough trailing periods of x for the start-up transient to decay
/// below 1e-15 before the returned period begins.
ComplexSequence filter_apply_periodic(const BiquadCascade& cascade, const ComplexSequence& x);

/// Samples needed for the slowest pole to decay by `tol`.
std::size_t settling_samples(const BiquadCascade& cascade, double tol = 1e-15);

cplx frequency_response(const BiquadCascade& cascade, double f_hz, double fs);

/// 20 log10 |H(e^{j 2 pi f / fs})| per frequency; frequencies must lie in
/// [0, fs/2].
std::vector<double> magnitude_response(const BiquadCascade& cascade,
                                       std::span<const double> freqs_hz, double fs);

/// Everything needed to build the bandpass filter; order 0 means "smallest
/// order that meets the ripple specs".
struct BandpassSpec {
  double fs = 8e6;
  BandEdges pass{1.5e6, 2.5e6};
  BandEdges stop{1.25e6, 2.75e6};
  double rp_db = 0.5;
  double rs_db = 40.0;
  int order = 0;
};

struct BandpassDesign {
  BandpassSpec spec;
  EllipticSpec lowpass_spec;  // normalized prototype (w0 = 1)
  AnalogPrototype lowpass;
  AnalogPrototype bandpass;   // prewarped analog bandpass
  BiquadCascade cascade;
};

/// Elliptic lowpass prototype -> prewarped bandpass -> bilinear cascade.
/// Throws DesignError when the result is not stable.
BandpassDesign design_elliptic_bandpass(const BandpassSpec& spec);

/// `section,b0,b1,b2,a1,a2` rows followed by a `gain` row.
void write_coefficients_csv(std::ostream& os, const BiquadCascade& cascade);

/// `freq_hz,gain_db` rows.
void write_response_csv(std::ostream& os, std::span<const double> freqs_hz,
                        std::span<const double> gains_db);

}  // namespace paprsim
