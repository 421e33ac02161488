// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file descriptor.hpp
 * @brief JSON descriptors of triples (mu, nu, {c_k}).
 *
 *   {"modes": m, "multiplicity": nu, "active": [...], "tolerance": t,
 *    "measure": {"kind": "uniform" | "product" | "explicit" | "frozen_tail", ...},
 *    "cocycle": {"kind": "trivial" | "gw311" | "explicit" | "gauged", ...}}
 *
 * Parsing is strict: unknown fields are rejected and every diagnostic carries
 * a location, "line L, column C" for syntax errors and a JSON pointer for
 * schema errors.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carforge/gwmodule.hpp"

namespace carforge {

struct MeasureSpec {
    MeasureKind kind = MeasureKind::uniform;
    std::vector<double> p;                   // product
    std::map<std::string, double> weights;   // explicit; absent configurations weigh 0
    int frozen_active = 0;                   // frozen_tail

    friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

struct CocycleEntry {
    int k = 1;
    std::string x;
    std::vector<Complex> block;  // nu x nu, row-major

    friend bool operator==(const CocycleEntry&, const CocycleEntry&) = default;
};

struct CocycleSpec {
    std::string kind = "trivial";
    std::vector<CocycleEntry> values;  // explicit; unlisted (k, x) are the identity
    std::vector<CocycleSpec> base;     // gauged: exactly one element
    std::uint64_t seed = 0;            // gauged
    bool symmetric = true;             // gauged: u(1 - x) = conj(u(x))

    friend bool operator==(const CocycleSpec&, const CocycleSpec&) = default;
};

struct ModuleDescriptor {
    int modes = 1;
    int multiplicity = 1;
    std::vector<int> active;  // empty: all modes
    MeasureSpec measure;
    CocycleSpec cocycle;
    std::optional<double> tolerance;

    friend bool operator==(const ModuleDescriptor&, const ModuleDescriptor&) = default;
};

/// Throws ParseError.
[[nodiscard]] ModuleDescriptor parse_descriptor(std::string_view text);
[[nodiscard]] ModuleDescriptor load_descriptor(const std::string& path);

/// Canonical form: sorted keys, two-space indent, trailing newline.
[[nodiscard]] std::string serialize(const ModuleDescriptor& d);

/// The builders report semantic failures as ParseError at the offending
/// pointer; CapacityError passes through unchanged.
[[nodiscard]] OccupationMeasure build_measure(const ModuleDescriptor& d);
/// Not validated against the cocycle laws; see build_triple.
[[nodiscard]] CocycleFamily build_cocycle(const ModuleDescriptor& d);
[[nodiscard]] Triple build_triple(const ModuleDescriptor& d);

/// "line L, column C" of a 1-based byte offset.
[[nodiscard]] std::string text_location(std::string_view text, std::size_t byte);

}  // namespace carforge
