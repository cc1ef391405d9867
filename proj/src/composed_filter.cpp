#include "paprsim/composed_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace paprsim {

std::vector<bool> composed_filter_mask(std::size_t n, const ComposedFilterParams& params) {
  if (!(params.fs > 0.0) || !(params.bw > 0.0))
    throw std::invalid_argument("composed filter: fs and bw must be > 0");
  const double lo = params.fc - params.bw / 2.0;
  const double hi = params.fc + params.bw / 2.0;
  // Half a part-per-billion of a bin absorbs rounding at the band edges.
  const double slack = 1e-9 * params.fs / static_cast<double>(n);
  std::vector<bool> keep(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = std::abs(bin_frequency(k, n, params.fs));
    keep[k] = f >= lo - slack && f <= hi + slack;
  }
  return keep;
}

ComplexSequence composed_fft_filter(const ComplexSequence& x, const ComposedFilterParams& params) {
  std::vector<cplx> spec = x.samples();
  fft_inplace(spec, Direction::forward);
  const auto keep = composed_filter_mask(spec.size(), params);
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (!keep[k]) spec[k] = 0.0;
  fft_inplace(spec, Direction::inverse);
  return x.with_samples(std::move(spec));
}

}  // namespace paprsim
