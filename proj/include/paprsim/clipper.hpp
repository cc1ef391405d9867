#pragma once

#include "paprsim/spectral.hpp"

namespace paprsim {

/// Clipping threshold derived from a clipping ratio: level = cr * sigma,
/// where sigma is the RMS of the unclipped reference waveform.
struct ClipSpec {
  double cr;
  double sigma;
  double level;
};

/// Throws std::invalid_argument for cr <= 0 or an all-zero reference.
ClipSpec clip_level(double cr, const ComplexSequence& reference);

/// Polar clip: magnitude limited to `level`, phase kept. The output modulus
/// never exceeds `level`, so clipping is idempotent bit-for-bit.
ComplexSequence clip_baseband(const ComplexSequence& s, double level);

/// Three-branch real clamp to [-level, level]. Rejects complex input.
ComplexSequence clip_passband(const ComplexSequence& s, double level);

}  // namespace paprsim
