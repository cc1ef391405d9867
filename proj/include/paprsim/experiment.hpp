#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paprsim/config.hpp"
#include "paprsim/iir.hpp"
#include "paprsim/metrics.hpp"

namespace paprsim {

/// Transmitted waveform after clipping and filtering, plus the bulk delay the
/// receiver must undo.
struct TxWaveform {
  ComplexSequence passband;
  std::ptrdiff_t delay = 0;
};

/// Immutable per-run state shared by every trial: chain parameters, the
/// designed elliptic bandpass, and the composed-filter support. Trial methods
/// are const and touch no shared mutable state.
class TransmitChain {
 public:
  explicit TransmitChain(const SimulationConfig& cfg);

  const SimulationConfig& config() const noexcept { return cfg_; }
  const BandpassDesign& filter() const noexcept { return filter_; }

  /// Slot 0 is the unclipped waveform, slot i > 0 uses cr_list[i - 1].
  std::size_t slots() const noexcept { return cfg_.cr_list.size() + 1; }
  double slot_cr(std::size_t slot) const;

  /// Random OFDM symbol for one trial: bits and real passband waveform.
  struct Symbol {
    BitStream bits;
    ComplexSequence passband;
  };
  Symbol make_symbol(std::uint64_t seed, ModScheme mod) const;

  /// Clip (slot > 0) and filter by the given method. The bulk delay is left
  /// at 0 unless with_delay is set.
  TxWaveform transmit(const ComplexSequence& passband, double sigma, std::size_t slot,
                      Method method, bool with_delay = true) const;

  /// Receiver: CP removal, delay compensation, downconversion, demapping.
  BitStream receive(const ComplexSequence& with_cp, std::ptrdiff_t delay, ModScheme mod) const;

  /// Signal on which PAPR is measured for the configured domain.
  ComplexSequence papr_view(const ComplexSequence& passband) const;

  /// Samples per constellation symbol used for Eb accounting.
  double samples_per_symbol() const;

  /// Writes PAPR values for one trial. Layout: out[0] is the unfiltered,
  /// unclipped reference; then out[1 + m * slots() + s] for method index m
  /// (order of config().method) and slot s.
  void papr_trial(std::uint64_t seed, ModScheme mod, std::span<double> out) const;
  std::size_t papr_values_per_trial() const noexcept { return 1 + cfg_.method.size() * slots(); }

  /// Adds bit errors for one trial into errors[(m * slots() + s) * E + e] with
  /// E = ebn0_list_db.size(). Every (method, slot) pair sees the same bits and
  /// the same noise draws. Returns the bits per point (2U).
  std::size_t ber_trial(std::uint64_t seed, ModScheme mod, std::span<std::uint64_t> errors) const;
  std::size_t ber_counters() const noexcept {
    return cfg_.method.size() * slots() * cfg_.ebn0_list_db.size();
  }

 private:
  SimulationConfig cfg_;
  ChainParams chain_;
  ComposedFilterParams composed_;
  BandpassDesign filter_;
};

/// Integer lag of the cross-correlation peak between the filter output and
/// its input.
std::ptrdiff_t estimate_bulk_delay(const ComplexSequence& input, const ComplexSequence& output);

// Stream ids for derive_seed.
std::uint64_t papr_stream(ModScheme mod) noexcept;
std::uint64_t ber_stream(ModScheme mod) noexcept;

/// PAPR samples of a batch of trials, row-major [trial][value].
struct PaprBatch {
  std::size_t n_trials = 0;
  std::size_t per_trial = 0;
  std::vector<double> values;

  std::vector<double> column(std::size_t j) const;
};

struct BerBatch {
  std::size_t n_trials = 0;
  std::size_t bits_per_trial = 0;
  std::vector<std::uint64_t> errors;
};

// Serial reference kernels.
PaprBatch run_papr_serial(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                          std::uint64_t master_seed);
BerBatch run_ber_serial(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                        std::uint64_t master_seed);

// OpenMP kernels; results identical to the serial kernels for any worker
// count. workers == 0 uses the OpenMP default.
PaprBatch run_papr_parallel(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                            std::uint64_t master_seed, int workers);
BerBatch run_ber_parallel(const TransmitChain& chain, ModScheme mod, std::size_t n_trials,
                          std::uint64_t master_seed, int workers);

struct BerRecord {
  double cr;  // +inf for the unclipped row
  double ebn0_db;
  std::uint64_t errors;
  std::uint64_t bits;
  double ber() const { return bits ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0; }
};

/// Per (method, modulation) outcome.
struct MethodResult {
  Method method;
  ModScheme mod;
  std::vector<CcdfCurve> curves;        // per slot
  std::vector<double> papr_at_prob;     // per slot, at ccdf_prob (NaN if unresolved)
  std::vector<double> papr_calibrated;  // per slot, at the calibrated probability
  std::vector<BerRecord> ber;           // slot-major, then Eb/N0
};

/// CCDF reading level chosen so the unclipped reference crosses the
/// calibration PAPR; falls back to the deepest resolvable level when that PAPR
/// lies beyond the observed tail.
struct Calibration {
  ModScheme mod;
  double target_db;
  double probability;
  bool beyond_tail;
  CcdfCurve reference;  // unfiltered, unclipped
};

struct RunReport {
  SimulationConfig config;
  std::uint64_t seed = 0;
  BandpassDesign filter;
  std::vector<MethodResult> results;
  std::vector<Calibration> calibration;
  std::size_t ber_trials = 0;
  double elapsed_s = 0.0;
  int workers_used = 1;

  const MethodResult* find(Method m, ModScheme mod) const;
};

/// Minimum exceedance count for a CCDF level to count as resolved.
inline constexpr std::size_t kResolvableCount = 10;

Calibration calibrate(const CcdfCurve& reference, double target_db, ModScheme mod);

/// Runs every configured (modulation, method, CR) combination. Requires a
/// seed. Output depends only on (config, seed). `parallel` selects the
/// OpenMP kernels.
RunReport run_scenario(const SimulationConfig& cfg, bool parallel = true);

}  // namespace paprsim
