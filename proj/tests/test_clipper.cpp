#include <doctest.h>

#include <numbers>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "paprsim/clipper.hpp"
#include "paprsim/ofdm_chain.hpp"

using namespace paprsim;
using namespace testutil;

TEST_SUITE("clipper") {

TEST_CASE("clip_level") {
  const ComplexSequence unit(std::vector<cplx>(16, cplx{0.0, 1.0}), 1.0);
  CHECK(clip_level(1.0, unit).level == doctest::Approx(1.0));
  const ComplexSequence three(std::vector<cplx>(16, std::polar(3.0, 0.4)), 1.0);
  const auto s = clip_level(2.0, three);
  CHECK(s.sigma == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(s.level == doctest::Approx(6.0).epsilon(1e-15));

  const auto x = random_complex(10000, 77);
  double ms = 0.0;
  for (const auto& v : x) ms += std::norm(v);
  const double sigma = std::sqrt(ms / x.size());
  const auto c = clip_level(0.8, ComplexSequence(x, 1.0));
  CHECK(std::abs(c.sigma - sigma) <= 1e-12 * sigma);
  CHECK(c.level == 0.8 * c.sigma);

  CHECK_THROWS_AS(clip_level(0.0, unit), std::invalid_argument);
  CHECK_THROWS_AS(clip_level(1.0, ComplexSequence(std::vector<cplx>(4), 1.0)), std::invalid_argument);
}

TEST_CASE("baseband clip branches") {
  const double J = 0.7;
  const ComplexSequence in({std::polar(2.0 * J, std::numbers::pi / 3.0), cplx{0.1, -0.2}}, 1.0);
  const auto out = clip_baseband(in, J);
  CHECK(std::abs(out[0] - std::polar(J, std::numbers::pi / 3.0)) < 1e-15);
  CHECK(out[1] == in[1]);
  const ComplexSequence small(random_complex(64, 2, 0.01), 1.0);
  CHECK(clip_baseband(small, 1.0).samples() == small.samples());
}

TEST_CASE("baseband clip property suite over 1e5 samples") {
  const auto x = random_complex(100000, 2024);
  const ComplexSequence s(x, 1.0);
  const double J = clip_level(0.8, s).level;
  const auto once = clip_baseband(s, J);
  const auto twice = clip_baseband(once, J);
  CHECK(twice.samples() == once.samples());
  double peak = 0.0, phase_err = 0.0, mag_err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    peak = std::max(peak, std::abs(once[i]));
    mag_err = std::max(mag_err, std::abs(std::abs(once[i]) - std::min(std::abs(x[i]), J)));
    double d = std::abs(std::arg(once[i]) - std::arg(x[i]));
    d = std::min(d, 2.0 * std::numbers::pi - d);
    phase_err = std::max(phase_err, d);
  }
  CHECK(peak <= J);
  CHECK(phase_err <= 1e-12);
  CHECK(mag_err <= 1e-12);
}

TEST_CASE("passband clip") {
  const double P = 0.5;
  const ComplexSequence s({-3 * P, 0.0, 3 * P, 0.2, -P, P}, 1.0);
  CHECK(clip_passband(s, P).samples() == std::vector<cplx>{-P, 0.0, P, 0.2, -P, P});
  CHECK_THROWS_AS(clip_passband(ComplexSequence({cplx{0.0, 1.0}}, 1.0), P), std::invalid_argument);

  ChainParams p;
  const auto pass = upconvert(build_symbol(random_qpsk(128, 31), p), p);
  double prev_dist = INFINITY;
  for (double cr : {0.6, 0.8, 1.0, 1.2, 1.6, 2.0}) {
    const double level = clip_level(cr, pass).level;
    const auto c = clip_passband(pass, level);
    CHECK(c.is_real());
    CHECK(clip_passband(c, level).samples() == c.samples());
    CHECK(mean_power(c.samples()) <= mean_power(pass.samples()));
    double dist = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      dist += std::norm(c[i] - pass[i]);
      peak = std::max(peak, std::abs(c[i].real()));
      const double ref = std::clamp(pass[i].real(), -level, level);
      CHECK(c[i].real() == ref);
    }
    CHECK(peak <= level);
    CHECK(dist <= prev_dist);
    prev_dist = dist;
  }
}

}
