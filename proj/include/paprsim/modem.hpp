#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "paprsim/spectral.hpp"

namespace paprsim {

/// Both schemes use the same unit-energy Gray-coded four-point constellation;
/// the two labels are kept so reports line up with QPSK and 4-QAM results.
enum class ModScheme { qpsk, qam4 };

using BitStream = std::vector<std::uint8_t>;

constexpr int bits_per_symbol(ModScheme) noexcept { return 2; }

std::string_view to_string(ModScheme scheme) noexcept;
/// Accepts "qpsk" and "qam4" (case-insensitive); throws std::invalid_argument.
ModScheme parse_mod_scheme(std::string_view name);

/// Gray table: 00 -> quadrant I, 01 -> II, 11 -> III, 10 -> IV.
std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, ModScheme scheme);

/// Nearest-point hard decision.
BitStream demap(std::span<const cplx> symbols, ModScheme scheme);

}  // namespace paprsim
