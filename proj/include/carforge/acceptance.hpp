// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file acceptance.hpp
 * @brief The ten end-to-end acceptance criteria, runnable from the CLI
 * (`carforge report`) and from the acceptance test binary.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace carforge {

inline constexpr int kCriterionCount = 10;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;  // 0: no runtime bound
};

/// Runs criterion `id` in 1..10. Randomized parts draw from `seed`.
[[nodiscard]] CriterionResult run_criterion(int id, std::uint64_t seed = 42);
[[nodiscard]] std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 42);

/// "PASS  criterion 3  <title>  (1.234 s)  <detail>".
[[nodiscard]] std::string format_line(const CriterionResult& r);

}  // namespace carforge
