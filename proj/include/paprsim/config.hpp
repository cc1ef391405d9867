#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paprsim/composed_filter.hpp"
#include "paprsim/iir.hpp"
#include "paprsim/modem.hpp"
#include "paprsim/ofdm_chain.hpp"

namespace paprsim {

enum class Method { existing, proposed };
/// Where PAPR is measured: complex envelope of the transmitted waveform, or
/// the real passband samples themselves.
enum class PaprDomain { baseband, passband };
/// How the proposed method uses the elliptic filter: instead of the FFT-domain
/// filter, or followed by it.
enum class ProposedMode { replace, chain };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(PaprDomain d) noexcept;
std::string_view to_string(ProposedMode m) noexcept;

struct SimulationConfig {
  std::size_t U = 128;
  int V = 8;
  double fs = 8e6;
  double fc = 2e6;
  double bw = 1e6;
  std::size_t cp_len = 32;
  std::vector<double> cr_list{0.8, 1.0, 1.2, 1.4, 1.6};
  std::vector<ModScheme> modulation{ModScheme::qpsk, ModScheme::qam4};
  std::vector<Method> method{Method::existing, Method::proposed};
  std::size_t n_symbols = 10000;
  std::vector<double> ebn0_list_db{0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
  double ccdf_prob = 1e-3;
  std::optional<std::uint64_t> seed;
  bool seed_random = false;

  // Elliptic bandpass overrides; unset edges follow fc and bw
  // (pass = fc +- bw/2, stop = fc +- 3 bw/4).
  int filter_order = 0;
  double rp_db = 0.5;
  double rs_db = 40.0;
  std::optional<BandEdges> pass_edges;
  std::optional<BandEdges> stop_edges;

  std::string out_dir = "out";
  std::size_t ber_bits = 100000;       // minimum transmitted bits per BER point
  double ber_table_ebn0_db = 2.0;      // Eb/N0 column reported in summary.csv
  PaprDomain papr_domain = PaprDomain::baseband;
  ProposedMode proposed_mode = ProposedMode::replace;
  bool ebn0_charge_cp = false;         // count cyclic-prefix energy in Eb
  int workers = 0;                     // 0: OpenMP default
  double ccdf_step_db = 0.01;
  double ccdf_max_db = 20.0;
  double calibration_papr_db = 14.4;   // unclipped level used to pick the CCDF reading

  ChainParams chain() const { return {U, V, fs, fc, cp_len}; }
  ComposedFilterParams composed() const { return {fs, fc, bw}; }
  BandpassSpec bandpass() const;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Applies one `key = value` setting; unknown keys and malformed values throw
/// ConfigError naming the key.
void apply_setting(SimulationConfig& cfg, std::string_view key, std::string_view value);

/// Table defaults, then the file (flat `key = value`, `#` comments), then the
/// overrides in order. The result is validated.
SimulationConfig load_config(const std::optional<std::filesystem::path>& file,
                             const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// `key = value` lines for every key, suitable for load_config.
std::string echo_config(const SimulationConfig& cfg);

std::vector<double> parse_double_list(std::string_view key, std::string_view text);

}  // namespace paprsim
