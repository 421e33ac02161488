// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace carforge {

inline constexpr std::size_t kReportWidth = 100;

struct ResidualRow {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = true;

    friend bool operator==(const ResidualRow&, const ResidualRow&) = default;
};

/// Outcome of one CLI command. Text rendering prints every residual row and
/// every scalar of `result`; JSON carries the same data losslessly.
struct Report {
    std::string command;
    std::string inputs_digest;
    std::uint64_t seed = 42;
    std::string verdict;
    int exit_code = 0;
    nlohmann::json result = nlohmann::json::object();
    std::vector<ResidualRow> residuals;
    std::vector<std::string> notes;
    double runtime_seconds = 0.0;

    friend bool operator==(const Report&, const Report&) = default;
};

[[nodiscard]] nlohmann::json to_json(const Report& r);
/// Throws ParseError on schema mismatch.
[[nodiscard]] Report report_from_json(const nlohmann::json& j);
[[nodiscard]] std::string render_text(const Report& r);
[[nodiscard]] std::string render_json(const Report& r);

/// 64-bit FNV-1a, lowercase hex.
[[nodiscard]] std::string fnv1a64(std::string_view bytes);

/// Splits `line` at spaces so no piece exceeds `width`; continuation lines
/// are indented by `indent` spaces.
[[nodiscard]] std::vector<std::string> wrap(const std::string& line, std::size_t width,
                                            std::size_t indent);

}  // namespace carforge
