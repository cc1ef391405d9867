#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "paprsim/spectral.hpp"

namespace testutil {

using paprsim::cplx;

inline std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

inline std::vector<cplx> random_qpsk(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double a = 1.0 / std::sqrt(2.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {(rng() & 1) ? a : -a, (rng() & 1) ? a : -a};
  return v;
}

// Textbook O(N^2) transform with the unitary 1/sqrt(N) scaling.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& x, bool inverse) {
  const std::size_t n = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      const double ph = sign * 2.0 * std::numbers::pi * static_cast<double>((k * m) % n) /
                        static_cast<double>(n);
      acc += x[m] * cplx{std::cos(ph), std::sin(ph)};
    }
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double mean_power(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s / static_cast<double>(a.size());
}

}  // namespace testutil
