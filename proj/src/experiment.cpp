#include "paprsim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "paprsim/clipper.hpp"
#include "paprsim/errors.hpp"
#include "paprsim/rng.hpp"

namespace paprsim {

TransmitChain::TransmitChain(const SimulationConfig& cfg)
    : cfg_(cfg), chain_(cfg.chain()), composed_(cfg.composed()) {
  cfg_.validate();
  filter_ = design_elliptic_bandpass(cfg_.bandpass());
}

double TransmitChain::slot_cr(std::size_t slot) const {
  return slot == 0 ? std::numeric_limits<double>::infinity() : cfg_.cr_list.at(slot - 1);
}

TransmitChain::Symbol TransmitChain::make_symbol(std::uint64_t seed, ModScheme mod) const {
  std::mt19937_64 rng(seed);
  BitStream bits(2 * cfg_.U);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
  }
  const auto symbols = map_bits(bits, mod);
  auto passband = upconvert(build_symbol(symbols, chain_), chain_);
  return {std::move(bits), std::move(passband)};
}

namespace {

ComplexSequence real_part(const ComplexSequence& x) {
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i].real();
  return x.with_samples(std::move(out));
}

}  // namespace

TxWaveform TransmitChain::transmit(const ComplexSequence& passband, double sigma,
                                   std::size_t slot, Method method, bool with_delay) const {
  const ComplexSequence clipped =
      slot == 0 ? passband : clip_passband(passband, slot_cr(slot) * sigma);
  if (method == Method::existing) return {real_part(composed_fft_filter(clipped, composed_)), 0};

  ComplexSequence out = filter_apply_periodic(filter_.cascade, clipped);
  if (cfg_.proposed_mode == ProposedMode::chain) out = real_part(composed_fft_filter(out, composed_));
  const auto delay = with_delay ? estimate_bulk_delay(clipped, out) : 0;
  return {std::move(out), delay};
}

BitStream TransmitChain::receive(const ComplexSequence& with_cp, std::ptrdiff_t delay,
                                 ModScheme mod) const {
  ComplexSequence rx = remove_cp(with_cp, cfg_.cp_len);
  if (delay != 0) rx = circular_advance(rx, delay);
  const auto frame = oversampled_fft(downconvert(rx, chain_), cfg_.U);
  return demap(frame.bins(), mod);
}

ComplexSequence TransmitChain::papr_view(const ComplexSequence& passband) const {
  if (cfg_.papr_domain == PaprDomain::passband) return passband;
  return complex_envelope(passband, chain_);
}

double TransmitChain::samples_per_symbol() const {
  const double n = static_cast<double>(chain_.symbol_length());
  double sps = n / static_cast<double>(cfg_.U);
  if (cfg_.ebn0_charge_cp) sps *= (n + static_cast<double>(cfg_.cp_len)) / n;
  return sps;
}

void TransmitChain::papr_trial(std::uint64_t seed, ModScheme mod, std::span<double> out) const {
  if (out.size() != papr_values_per_trial())
    throw std::invalid_argument("papr_trial: output span has wrong size");
  const auto sym = make_symbol(seed, mod);
  const double sigma = clip_level(1.0, sym.passband).sigma;
  out[0] = papr_db(papr_view(sym.passband));
  for (std::size_t m = 0; m < cfg_.method.size(); ++m) {
    for (std::size_t s = 0; s < slots(); ++s) {
      const auto tx = transmit(sym.passband, sigma, s, cfg_.method[m], false);
      out[1 + m * slots() + s] = papr_db(papr_view(tx.passband));
    }
  }
}

std::size_t TransmitChain::ber_trial(std::uint64_t seed, ModScheme mod,
                                     std::span<std::uint64_t> errors) const {
  if (errors.size() != ber_counters())
    throw std::invalid_argument("ber_trial: counter span has wrong size");
  const auto sym = make_symbol(seed, mod);
  const double sigma = clip_level(1.0, sym.passband).sigma;
  const std::size_t n_ebn0 = cfg_.ebn0_list_db.size();
  std::vector<std::uint64_t> noise_seeds(n_ebn0);
  for (std::size_t e = 0; e < n_ebn0; ++e) noise_seeds[e] = derive_seed(seed, 0xB0, e);
  const int bps = bits_per_symbol(mod);
  const double sps = samples_per_symbol();

  for (std::size_t m = 0; m < cfg_.method.size(); ++m) {
    for (std::size_t s = 0; s < slots(); ++s) {
      const auto tx = transmit(sym.passband, sigma, s, cfg_.method[m]);
      const auto with_cp = add_cp(tx.passband, cfg_.cp_len);
      for (std::size_t e = 0; e < n_ebn0; ++e) {
        const auto noisy =
            awgn(with_cp, cfg_.ebn0_list_db[e], bps, sps, noise_seeds[e], NoiseField::real);
        const auto rx_bits = receive(noisy, tx.delay, mod);
        errors[(m * slots() + s) * n_ebn0 + e] += ber_count(sym.bits, rx_bits).errors;
      }
    }
  }
  return sym.bits.size();
}

std::ptrdiff_t estimate_bulk_delay(const ComplexSequence& input, const ComplexSequence& output) {
  const auto c = circular_xcorr(output.samples(), input.samples());
  std::size_t best = 0;
  for (std::size_t d = 1; d < c.size(); ++d)
    if (c[d].real() > c[best].real()) best = d;
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  auto d = static_cast<std::ptrdiff_t>(best);
  if (d > n / 2) d -= n;
  return d;
}

std::uint64_t papr_stream(ModScheme mod) noexcept {
  return 0x50A0ull + static_cast<std::uint64_t>(mod);
}

std::uint64_t ber_stream(ModScheme mod) noexcept {
  return 0xBE20ull + static_cast<std::uint64_t>(mod);
}

std::vector<double> PaprBatch::column(std::size_t j) const {
  std::vector<double> out(n_trials);
  for (std::size_t t = 0; t < n_trials; ++t) out[t] = values[t * per_trial + j];
  return out;
}

const MethodResult* RunReport::find(Method m, ModScheme mod) const {
  for (const auto& r : results)
    if (r.method == m && r.mod == mod) return &r;
  return nullptr;
}

Calibration calibrate(const CcdfCurve& reference, double target_db, ModScheme mod) {
  Calibration c{mod, target_db, 0.0, false, reference};
  // Exceedance count at the target level, read off the nearest grid point at
  // or below it.
  const auto& th = reference.thresholds_db;
  std::size_t idx = 0;
  while (idx + 1 < th.size() && th[idx + 1] <= target_db + 1e-9) ++idx;
  const double n = static_cast<double>(reference.n_trials);
  const double count = std::round(reference.probs.at(idx) * n);
  const double floor_p = std::min(1.0, static_cast<double>(kResolvableCount) / n);
  if (count < static_cast<double>(kResolvableCount)) {
    c.beyond_tail = true;
    c.probability = floor_p;
  } else {
    c.probability = count / n;
  }
  return c;
}

namespace {

double safe_papr_at(const CcdfCurve& curve, double p) {
  try {
    return papr_at_ccdf(curve, p);
  } catch (const std::out_of_range&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

RunReport run_scenario(const SimulationConfig& cfg, bool parallel) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  if (!cfg.seed) throw ConfigError("config key 'seed': a seed is required (or seed = random)");

  RunReport report;
  report.config = cfg;
  report.seed = *cfg.seed;
  const TransmitChain chain(cfg);
  report.filter = chain.filter();
  report.workers_used = parallel ? (cfg.workers > 0 ? cfg.workers : omp_get_max_threads()) : 1;

  const auto thresholds = threshold_grid(0.0, cfg.ccdf_max_db, cfg.ccdf_step_db);
  const std::size_t bits_per_trial = 2 * cfg.U;
  report.ber_trials =
      cfg.ebn0_list_db.empty() ? 0 : (cfg.ber_bits + bits_per_trial - 1) / bits_per_trial;

  for (ModScheme mod : cfg.modulation) {
    const PaprBatch papr =
        parallel ? run_papr_parallel(chain, mod, cfg.n_symbols, report.seed, cfg.workers)
                 : run_papr_serial(chain, mod, cfg.n_symbols, report.seed);
    const auto ref_samples = papr.column(0);
    const auto ref_curve = ccdf(ref_samples, thresholds);
    report.calibration.push_back(calibrate(ref_curve, cfg.calibration_papr_db, mod));
    const double p_cal = report.calibration.back().probability;

    BerBatch ber;
    if (report.ber_trials > 0)
      ber = parallel ? run_ber_parallel(chain, mod, report.ber_trials, report.seed, cfg.workers)
                     : run_ber_serial(chain, mod, report.ber_trials, report.seed);

    const std::size_t n_ebn0 = cfg.ebn0_list_db.size();
    for (std::size_t m = 0; m < cfg.method.size(); ++m) {
      MethodResult r{cfg.method[m], mod, {}, {}, {}, {}};
      for (std::size_t s = 0; s < chain.slots(); ++s) {
        r.curves.push_back(ccdf(papr.column(1 + m * chain.slots() + s), thresholds));
        r.papr_at_prob.push_back(safe_papr_at(r.curves.back(), cfg.ccdf_prob));
        r.papr_calibrated.push_back(safe_papr_at(r.curves.back(), p_cal));
        if (report.ber_trials == 0) continue;
        for (std::size_t e = 0; e < n_ebn0; ++e) {
          r.ber.push_back({chain.slot_cr(s), cfg.ebn0_list_db[e],
                           ber.errors[(m * chain.slots() + s) * n_ebn0 + e],
                           static_cast<std::uint64_t>(ber.n_trials * ber.bits_per_trial)});
        }
      }
      report.results.push_back(std::move(r));
    }
  }
  report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace paprsim
