// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file occupation.hpp
 * @brief Occupation configurations x in {0,1}^m and the group X_m they form.
 *
 * A configuration is stored as an unsigned word with bit k-1 holding the
 * occupation x_k of mode k, so the integer index of x is sum x_k 2^(k-1).
 * Translation by a shift is XOR; the complement x -> 1-x is XOR with the
 * all-ones word.
 */

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace carforge {

using Word = std::uint32_t;

/// Largest mode count representable in a Word while 2^m still fits.
inline constexpr int kWordModes = 30;

/// Default cap on m; overridden by CARFORGE_MAX_MODES or set_max_modes().
inline constexpr int kDefaultMaxModes = 12;

[[nodiscard]] int max_modes();
void set_max_modes(int limit);

/// Throws CapacityError unless 1 <= m <= max_modes().
void require_modes(int m);

// Word-level helpers used in the hot loops of every module.
namespace bits {

[[nodiscard]] constexpr Word mode_bit(int k) noexcept { return Word{1} << (k - 1); }

[[nodiscard]] constexpr Word all_ones(int m) noexcept {
    return m >= 32 ? ~Word{0} : (Word{1} << m) - 1;
}

[[nodiscard]] constexpr int occupation(Word x, int k) noexcept {
    return static_cast<int>((x >> (k - 1)) & 1u);
}

/// (x_1 + ... + x_{k-1}) mod 2.
[[nodiscard]] constexpr int prefix_parity(Word x, int k) noexcept {
    return std::popcount(x & (mode_bit(k) - 1)) & 1;
}

[[nodiscard]] constexpr int parity(Word x) noexcept { return std::popcount(x) & 1; }

}  // namespace bits

/// An element x of X_m. Also used as a Shift: the group acts on itself.
class Configuration {
public:
    Configuration(Word bits, int modes);

    /// Parses "x1x2...xm", e.g. "0110" means x_2 = x_3 = 1.
    static Configuration parse(std::string_view text);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] Word bits() const noexcept { return bits_; }
    [[nodiscard]] std::size_t index() const noexcept { return bits_; }

    /// x_k for 1 <= k <= m.
    [[nodiscard]] int at(int k) const;

    [[nodiscard]] std::string str() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    Word bits_;
    int modes_;
};

using Shift = Configuration;

[[nodiscard]] Configuration translate(const Configuration& x, const Shift& t);
[[nodiscard]] Configuration complement(const Configuration& x);
[[nodiscard]] Shift generator(int k, int m);
[[nodiscard]] int prefix_parity(const Configuration& x, int k);

/// All 2^m configurations in increasing index order.
[[nodiscard]] std::vector<Configuration> enumerate(int m);

/// Bit-string form of a raw word, "x1x2...xm".
[[nodiscard]] std::string to_bitstring(Word x, int m);

}  // namespace carforge
