#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "paprsim/clipper.hpp"
#include "paprsim/composed_filter.hpp"
#include "paprsim/ofdm_chain.hpp"

using namespace paprsim;
using namespace testutil;

TEST_SUITE("composed_filter") {

TEST_CASE("mask keeps the occupied band and its mirror") {
  const ComposedFilterParams p;
  const auto mask = composed_filter_mask(1024, p);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const double f = std::abs(bin_frequency(k, 1024, 8e6));
    CHECK(mask[k] == (f >= 1.5e6 - 1e-3 && f <= 2.5e6 + 1e-3));
    kept += mask[k];
  }
  CHECK(kept == 2 * 129);
}

TEST_CASE("trivial inputs") {
  const ComposedFilterParams p;
  CHECK(max_abs(composed_fft_filter(ComplexSequence(std::vector<cplx>(1024), 8e6), p).samples()) == 0.0);

  ChainParams cp;
  const auto in_band = upconvert(build_symbol(random_qpsk(128, 3), cp), cp);
  CHECK(max_abs_diff(composed_fft_filter(in_band, p).samples(), in_band.samples()) < 1e-9);

  std::vector<cplx> tone(1024);
  for (std::size_t m = 0; m < tone.size(); ++m) tone[m] = std::cos(2.0 * std::numbers::pi * 100.0 * m / 1024.0);
  CHECK(max_abs(composed_fft_filter(ComplexSequence(tone, 8e6), p).samples()) < 1e-12);
}

TEST_CASE("clipped symbol has no energy outside the kept bins") {
  const ComposedFilterParams p;
  ChainParams cp;
  const auto pass = upconvert(build_symbol(random_qpsk(128, 17), cp), cp);
  const auto clipped = clip_passband(pass, clip_level(0.8, pass).level);
  auto spec = composed_fft_filter(clipped, p).samples();
  fft_inplace(spec, Direction::forward);
  const auto mask = composed_filter_mask(1024, p);
  double out_band = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (!mask[k]) out_band = std::max(out_band, std::abs(spec[k]));
  CHECK(out_band < 1e-12);
}

}
