// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file block.hpp
 * @brief Row-major nu x nu complex blocks on spans, and fields of them.
 *
 * Fibers H_x are identified with C^nu, so every structure field of the
 * library (cocycles, operator coefficients, gauges, real-structure phases)
 * is a table of small dense blocks indexed by configuration.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "carforge/occupation.hpp"

namespace carforge {

using Complex = std::complex<double>;

/// Absolute tolerance on residuals unless overridden.
inline constexpr double kDefaultTolerance = 1e-12;

namespace block {

/// out = a * b.
void mul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out, int nu);
/// out += a * b.
void mul_add(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out,
             int nu);
/// out = a^*.
void adjoint(std::span<const Complex> a, std::span<Complex> out, int nu);
/// Entrywise complex conjugate.
void conjugate(std::span<const Complex> a, std::span<Complex> out);
void set_identity(std::span<Complex> out, int nu);

[[nodiscard]] double max_abs(std::span<const Complex> a);
[[nodiscard]] double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);
/// max |a^* a - I| entrywise.
[[nodiscard]] double unitarity_defect(std::span<const Complex> a, int nu);
/// max |a - I| entrywise.
[[nodiscard]] double identity_defect(std::span<const Complex> a, int nu);

}  // namespace block

/// A nu x nu block for every configuration of X_m.
class BlockField {
public:
    BlockField(int modes, int nu);
    BlockField(int modes, int nu, std::vector<Complex> values);

    /// Identity block at every configuration.
    static BlockField identity(int modes, int nu);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int multiplicity() const noexcept { return nu_; }
    [[nodiscard]] std::size_t block_size() const noexcept {
        return static_cast<std::size_t>(nu_) * static_cast<std::size_t>(nu_);
    }
    [[nodiscard]] std::size_t configurations() const noexcept { return std::size_t{1} << modes_; }

    [[nodiscard]] std::span<const Complex> at(Word x) const {
        return {values_.data() + x * block_size(), block_size()};
    }
    [[nodiscard]] std::span<Complex> at(Word x) {
        return {values_.data() + x * block_size(), block_size()};
    }
    [[nodiscard]] const std::vector<Complex>& values() const noexcept { return values_; }

    /// Largest unitarity defect over all blocks.
    [[nodiscard]] double unitarity_defect() const;

private:
    int modes_;
    int nu_;
    std::vector<Complex> values_;
};

/// Pointwise adjoint x -> u(x)^*.
[[nodiscard]] BlockField pointwise_adjoint(const BlockField& u);

}  // namespace carforge
