#pragma once

#include <vector>

#include "paprsim/spectral.hpp"

namespace paprsim {

namespace elliptic {

/// Elliptic modulus carried together with its complement k' = sqrt(1 - k^2),
/// so moduli close to 0 or 1 keep full precision on both sides.
struct Modulus {
  double k;
  double kc;

  static Modulus from_k(double k);
  static Modulus from_complement(double kc);
  Modulus complement() const noexcept { return {kc, k}; }
};

/// Descending Landen sequence k_1, k_2, ... stopping once a term drops below
/// 1e-14.
std::vector<double> landen(const Modulus& m);

/// Complete elliptic integral of the first kind, K(k).
double complete_integral(const Modulus& m);

// Jacobi functions with the argument normalized to a quarter period:
// cde(u, k) = cd(u K, k), sne(u, k) = sn(u K, k). Complex arguments allowed.
cplx cde(cplx u, const Modulus& m);
cplx sne(cplx u, const Modulus& m);
/// Inverses of cde/sne, reduced to the fundamental period rectangle.
cplx acde(cplx w, const Modulus& m);
cplx asne(cplx w, const Modulus& m);

/// Real-valued order implied by the degree equation
/// N = K(k) K'(k1) / (K'(k) K(k1)).
double degree_ratio(const Modulus& k, const Modulus& k1);

/// Selectivity modulus k (= 1/xi) that an order-n design reaches for
/// discrimination modulus k1 = eps / eps_s.
Modulus selectivity_modulus(int n, const Modulus& k1);

/// Discrimination modulus k1 reached by an order-n design with selectivity
/// modulus k.
Modulus discrimination_modulus(int n, const Modulus& k);

}  // namespace elliptic

/// Elliptic rational function R_n(xi, x). Normalized so R_n(xi, 1) = 1 and
/// |R_n| <= 1 on [-1, 1]. Throws std::invalid_argument for n < 1 or xi <= 1.
double elliptic_rational(int n, double xi, double x);

/// Lowpass elliptic specification. The selectivity xi follows from
/// (order, rp_db, rs_db) through the degree equation, which makes the design
/// hit both ripple levels exactly.
struct EllipticSpec {
  int order = 4;
  double rp_db = 0.5;   // passband ripple
  double rs_db = 40.0;  // minimum stopband attenuation
  double w0 = 1.0;      // passband edge, rad/s

  void validate() const;
  double ripple_factor() const;    // eps
  double stopband_factor() const;  // eps_s = sqrt(10^(rs/10) - 1)
  double selectivity() const;      // xi; stopband starts at xi * w0
};

/// 1 / sqrt(1 + eps^2 R_n(xi, w / w0)^2).
double elliptic_gain(const EllipticSpec& spec, double w);

/// H(s) = gain * prod(s - zeros) / prod(s - poles).
struct AnalogPrototype {
  std::vector<cplx> zeros;
  std::vector<cplx> poles;
  double gain = 1.0;
  /// Passband edge of a lowpass prototype (rad/s); lp_to_bp maps it onto the
  /// band edges.
  double cutoff_rad = 1.0;
  /// Band-edge frequencies that bilinear() must keep below fs/2.
  std::vector<double> critical_hz;

  cplx response(cplx s) const;
};

/// Pole/zero elliptic lowpass prototype. Throws DesignError naming the
/// offending parameter when the elliptic-function iteration breaks down.
AnalogPrototype design_elliptic_lowpass(const EllipticSpec& spec);

/// Lowpass-to-bandpass substitution s -> w0 (s^2 + W1 W2) / (s (W2 - W1)),
/// with W = 2 pi f. The prototype cutoff lands on f1 and f2, its DC response
/// on the geometric centre sqrt(f1 f2). Order doubles.
AnalogPrototype lp_to_bp(const AnalogPrototype& proto, double f1_hz, double f2_hz);

struct BandEdges {
  double lo_hz;
  double hi_hz;
};

/// Bilinear prewarp: analog frequency (Hz) that lands on f_hz after the
/// bilinear transform at rate fs.
double prewarp(double f_hz, double fs);

/// Stopband edge of the equivalent normalized lowpass prototype for a
/// bandpass spec (after prewarping); the tighter of the two sides.
double equivalent_lowpass_stop_ratio(BandEdges pass, BandEdges stop, double fs);

/// Smallest elliptic order meeting rp_db / rs_db on the given bandpass edges.
/// Throws std::invalid_argument for misordered or zero-width bands.
int estimate_order(double rp_db, double rs_db, BandEdges pass, BandEdges stop, double fs);

}  // namespace paprsim
