// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file commands.hpp
 * @brief Drivers behind the `carforge` subcommands.
 *
 * Each driver returns a Report whose exit_code follows one contract:
 * 0 affirmative, 3 negative verdict, 2 usage or parse error, 1 internal error.
 * Parse and usage failures are thrown (ParseError, UsageError) and mapped to
 * exit codes by the executable.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carforge/report.hpp"

namespace carforge {

inline constexpr int kExitAffirmative = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNegative = 3;

struct CommandOptions {
    std::optional<double> tolerance;  // overrides the descriptor's
    std::uint64_t seed = 42;
    std::optional<double> seed_phase_degrees;
    int max_m = 8;
};

[[nodiscard]] Report cmd_car_check(const std::string& path, const CommandOptions& opt);
[[nodiscard]] Report cmd_cocycle_check(const std::string& path, const CommandOptions& opt);
[[nodiscard]] Report cmd_split(const std::string& path, const CommandOptions& opt);
[[nodiscard]] Report cmd_cartan_table(const CommandOptions& opt);
[[nodiscard]] Report cmd_analyze(const std::string& path, const CommandOptions& opt);
[[nodiscard]] Report cmd_demo(const std::string& name, const CommandOptions& opt);
[[nodiscard]] Report cmd_report(const CommandOptions& opt);

[[nodiscard]] const std::vector<std::string>& demo_names();

}  // namespace carforge
