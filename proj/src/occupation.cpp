// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/occupation.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "carforge/error.hpp"

namespace carforge {

namespace {

int modes_from_environment() {
    const char* raw = std::getenv("CARFORGE_MAX_MODES");
    if (raw == nullptr || *raw == '\0') return kDefaultMaxModes;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (*end != '\0' || value < 1 || value > kWordModes) {
        throw CapacityError("CARFORGE_MAX_MODES must be an integer in [1, " +
                            std::to_string(kWordModes) + "], got '" + raw + "'");
    }
    return static_cast<int>(value);
}

std::atomic<int>& limit_slot() {
    static std::atomic<int> slot{modes_from_environment()};
    return slot;
}

void require_same_modes(const Configuration& a, const Configuration& b) {
    if (a.modes() != b.modes()) {
        throw DimensionError("configuration length mismatch: " + std::to_string(a.modes()) +
                             " vs " + std::to_string(b.modes()));
    }
}

void require_mode_index(int k, int m) {
    if (k < 1 || k > m) {
        throw RangeError("mode index " + std::to_string(k) + " outside 1.." + std::to_string(m));
    }
}

}  // namespace

int max_modes() { return limit_slot().load(); }

void set_max_modes(int limit) {
    if (limit < 1 || limit > kWordModes) {
        throw RangeError("mode cap must lie in [1, " + std::to_string(kWordModes) + "]");
    }
    limit_slot().store(limit);
}

void require_modes(int m) {
    if (m < 1) throw RangeError("mode count must be positive, got " + std::to_string(m));
    if (m > max_modes()) {
        throw CapacityError("mode count " + std::to_string(m) + " exceeds cap " +
                            std::to_string(max_modes()) + " (set CARFORGE_MAX_MODES)");
    }
}

Configuration::Configuration(Word bits, int modes) : bits_(bits), modes_(modes) {
    if (modes < 1 || modes > kWordModes) {
        throw RangeError("mode count " + std::to_string(modes) + " outside 1.." +
                         std::to_string(kWordModes));
    }
    if ((bits & ~bits::all_ones(modes)) != 0) {
        throw RangeError("configuration word has bits beyond mode " + std::to_string(modes));
    }
}

Configuration Configuration::parse(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kWordModes)) {
        throw RangeError("configuration string must have 1.." + std::to_string(kWordModes) +
                         " characters");
    }
    Word word = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            word |= Word{1} << i;
        } else if (text[i] != '0') {
            throw RangeError("configuration string '" + std::string(text) +
                             "' may only contain 0 and 1");
        }
    }
    return {word, static_cast<int>(text.size())};
}

int Configuration::at(int k) const {
    require_mode_index(k, modes_);
    return bits::occupation(bits_, k);
}

std::string Configuration::str() const { return to_bitstring(bits_, modes_); }

Configuration translate(const Configuration& x, const Shift& t) {
    require_same_modes(x, t);
    return {x.bits() ^ t.bits(), x.modes()};
}

Configuration complement(const Configuration& x) {
    return {x.bits() ^ bits::all_ones(x.modes()), x.modes()};
}

Shift generator(int k, int m) {
    require_mode_index(k, m);
    return {bits::mode_bit(k), m};
}

int prefix_parity(const Configuration& x, int k) {
    require_mode_index(k, x.modes());
    return bits::prefix_parity(x.bits(), k);
}

std::vector<Configuration> enumerate(int m) {
    require_modes(m);
    std::vector<Configuration> out;
    const Word count = Word{1} << m;
    out.reserve(count);
    for (Word w = 0; w < count; ++w) out.emplace_back(w, m);
    return out;
}

std::string to_bitstring(Word x, int m) {
    std::string s(static_cast<std::size_t>(m), '0');
    for (int k = 1; k <= m; ++k) {
        if (bits::occupation(x, k) != 0) s[static_cast<std::size_t>(k - 1)] = '1';
    }
    return s;
}

}  // namespace carforge
