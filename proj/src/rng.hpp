#pragma once

#include <cmath>
#include <cstdint>

namespace ratekit {

// Deterministic, counter-based randomness. Every draw is a pure function of
// (key, index), so results never depend on evaluation order or on how work
// is split across threads.

inline constexpr std::uint64_t kStreamIncrement = 0x9e3779b97f4a7c15ull;

// SplitMix64 output function.
inline std::uint64_t mix_bits(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// The index-th word of the stream identified by key.
inline std::uint64_t stream_bits(std::uint64_t key, std::uint64_t index) {
    return mix_bits(key + (index + 1) * kStreamIncrement);
}

// Sub-stream key for a (bank, period) cell of a panel.
inline std::uint64_t panel_cell_key(std::uint64_t seed, std::uint64_t bank, std::uint64_t period) {
    return mix_bits(mix_bits(seed + (bank + 1) * kStreamIncrement) + (period + 1) * kStreamIncrement);
}

// Uniform on the open interval (0, 1); never returns 0 or 1, so it is safe
// to take logs and to compare strictly against probabilities in [0, 1].
inline double unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double stream_unit(std::uint64_t key, std::uint64_t index) {
    return unit_open(stream_bits(key, index));
}

// Standard normal deviate from two uniform words (Box-Muller).
inline double gaussian_from_units(double u1, double u2) {
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace ratekit
