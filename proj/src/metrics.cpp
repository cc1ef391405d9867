#include "paprsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace paprsim {

double papr_db(std::span<const cplx> x) {
  if (x.empty()) throw std::invalid_argument("papr_db: empty input");
  double peak = 0.0, sum = 0.0;
  for (const auto& v : x) {
    const double p = std::norm(v);
    peak = std::max(peak, p);
    sum += p;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("papr_db: all-zero input");
  return 10.0 * std::log10(peak / (sum / static_cast<double>(x.size())));
}

CcdfCurve ccdf(std::span<const double> papr_samples_db, std::span<const double> thresholds_db) {
  if (papr_samples_db.empty()) throw std::invalid_argument("ccdf: no samples");
  std::vector<double> sorted(papr_samples_db.begin(), papr_samples_db.end());
  std::sort(sorted.begin(), sorted.end());
  CcdfCurve c;
  c.n_trials = sorted.size();
  c.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
  c.probs.reserve(thresholds_db.size());
  const auto n = static_cast<double>(sorted.size());
  for (double t : thresholds_db) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    c.probs.push_back(static_cast<double>(above) / n);
  }
  return c;
}

std::vector<double> threshold_grid(double lo_db, double hi_db, double step_db) {
  if (!(step_db > 0.0) || !(hi_db >= lo_db))
    throw std::invalid_argument("threshold_grid: need step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi_db - lo_db) / step_db + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo_db + step_db * static_cast<double>(i);
  return out;
}

double papr_at_ccdf(const CcdfCurve& curve, double p) {
  const auto& pr = curve.probs;
  const auto& th = curve.thresholds_db;
  if (pr.empty() || pr.size() != th.size())
    throw std::invalid_argument("papr_at_ccdf: malformed curve");
  double min_pos = INFINITY;
  for (double v : pr)
    if (v > 0.0) min_pos = std::min(min_pos, v);
  const double max_p = *std::max_element(pr.begin(), pr.end());
  if (!(p >= min_pos && p <= max_p)) {
    std::ostringstream os;
    os << "papr_at_ccdf: probability " << p << " outside curve range [" << min_pos << ", "
       << max_p << "]";
    throw std::out_of_range(os.str());
  }
  std::size_t j = 0;
  while (j < pr.size() && pr[j] > p) ++j;
  if (pr[j] == p || j == 0) return th[j];
  const double l0 = std::log10(pr[j - 1]);
  const double l1 = std::log10(pr[j]);
  const double t = (std::log10(p) - l0) / (l1 - l0);
  return th[j - 1] + t * (th[j] - th[j - 1]);
}

double awgn_noise_variance(const ComplexSequence& x, double ebn0_db, int bits_per_symbol,
                           double samples_per_symbol, NoiseField field) {
  if (bits_per_symbol < 1 || !(samples_per_symbol > 0.0))
    throw std::invalid_argument("awgn: bits_per_symbol and samples_per_symbol must be positive");
  double power = 0.0;
  for (const auto& v : x.samples()) power += std::norm(v);
  power /= static_cast<double>(x.size());
  if (!std::isfinite(power)) throw std::invalid_argument("awgn: non-finite signal power");
  const double eb = power * samples_per_symbol / bits_per_symbol;
  const double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
  return field == NoiseField::complex ? n0 : n0 / 2.0;
}

ComplexSequence awgn(const ComplexSequence& x, double ebn0_db, int bits_per_symbol,
                     double samples_per_symbol, std::uint64_t seed, NoiseField field) {
  const double var = awgn_noise_variance(x, ebn0_db, bits_per_symbol, samples_per_symbol, field);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> out = x.samples();
  if (field == NoiseField::complex) {
    const double sd = std::sqrt(var / 2.0);
    for (auto& v : out) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v += cplx{sd * re, sd * im};
    }
  } else {
    const double sd = std::sqrt(var);
    for (auto& v : out) v += sd * gauss(rng);
  }
  return x.with_samples(std::move(out));
}

BitErrors ber_count(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx) {
  if (tx.size() != rx.size()) throw std::invalid_argument("ber_count: length mismatch");
  if (tx.empty()) throw std::invalid_argument("ber_count: empty streams");
  BitErrors e;
  e.bits = tx.size();
  for (std::size_t i = 0; i < tx.size(); ++i) e.errors += (tx[i] != rx[i]) ? 1 : 0;
  return e;
}

double analytical_ber(ModScheme, double ebn0_db) {
  const double gamma = std::pow(10.0, ebn0_db / 10.0);
  // Q(sqrt(2 gamma)) = erfc(sqrt(gamma)) / 2
  return 0.5 * std::erfc(std::sqrt(gamma));
}

}  // namespace paprsim
