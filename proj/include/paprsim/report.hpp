#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "paprsim/experiment.hpp"

namespace paprsim {

inline constexpr const char* kVersion = "0.1.0";

/// Published proposed-method PAPR values for CR = 0.8, 1.0, ..., 1.6, used as
/// the comparison target in run_meta.
std::array<double, 5> reference_proposed_papr(ModScheme mod) noexcept;

/// Allowed distance from the reference values before run_meta flags a
/// deviation.
inline constexpr double kReferenceTolDb = 1.0;

/// "%.10g" with inf/nan spelled out.
std::string fmt_num(double v);

/// Writes ccdf_<method>_<mod>.csv, ber_<method>_<mod>.csv, summary.csv,
/// filter_response.csv, filter_coeffs.csv and run_meta.txt into dir, creating
/// it if needed. Throws IoError with the path on failure.
void write_outputs(const RunReport& report, const std::filesystem::path& dir);

/// Only the filter files (design-filter subcommand).
void write_filter_outputs(const BandpassDesign& design, const std::filesystem::path& dir);

/// Text block comparing calibrated proposed PAPR values with the reference
/// table; empty when cr_list is not the default grid.
std::string reference_comparison(const RunReport& report);

}  // namespace paprsim
