#include "paprsim/modem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace paprsim {

std::string_view to_string(ModScheme scheme) noexcept {
  return scheme == ModScheme::qpsk ? "qpsk" : "qam4";
}

ModScheme parse_mod_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "qpsk") return ModScheme::qpsk;
  if (lower == "qam4" || lower == "4qam" || lower == "qam") return ModScheme::qam4;
  throw std::invalid_argument("unknown modulation '" + std::string(name) + "'");
}

std::vector<cplx> map_bits(std::span<const std::uint8_t> bits, ModScheme scheme) {
  const auto bps = static_cast<std::size_t>(bits_per_symbol(scheme));
  if (bits.size() % bps != 0)
    throw std::invalid_argument("map_bits: bit count " + std::to_string(bits.size()) +
                                " is not a multiple of " + std::to_string(bps));
  const double a = 1.0 / std::sqrt(2.0);
  std::vector<cplx> out;
  out.reserve(bits.size() / bps);
  for (std::size_t i = 0; i < bits.size(); i += bps) {
    const auto hi = bits[i];
    const auto lo = bits[i + 1];
    if (hi > 1 || lo > 1) throw std::invalid_argument("map_bits: bits must be 0 or 1");
    // First bit selects the imaginary sign, second bit the real sign.
    out.emplace_back(lo ? -a : a, hi ? -a : a);
  }
  return out;
}

BitStream demap(std::span<const cplx> symbols, ModScheme) {
  BitStream out;
  out.reserve(symbols.size() * 2);
  for (const auto& s : symbols) {
    out.push_back(s.imag() < 0.0 ? 1 : 0);
    out.push_back(s.real() < 0.0 ? 1 : 0);
  }
  return out;
}

}  // namespace paprsim
