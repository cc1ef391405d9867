#pragma once

#include <vector>

#include "paprsim/spectral.hpp"

namespace paprsim {

/// In-band support of the FFT-domain filter: [fc - bw/2, fc + bw/2] and its
/// mirror image.
struct ComposedFilterParams {
  double fs = 8e6;
  double fc = 2e6;
  double bw = 1e6;
};

/// Keep-mask over an n-point spectrum for the given support.
std::vector<bool> composed_filter_mask(std::size_t n, const ComposedFilterParams& params);

/// Forward transform, zero every bin outside the support, inverse transform.
ComplexSequence composed_fft_filter(const ComplexSequence& x, const ComposedFilterParams& params);

}  // namespace paprsim
