// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file shift_operator.hpp
 * @brief Shift-diagonal operators (Af)(x) = sum_t D_t(x) f(x + t) on fields over X_m.
 *
 * Every generator of a GW module has exactly one shift term, so products of
 * generators stay single-term and the algebra never touches a dense matrix.
 * dense() exists as a brute-force oracle only.
 */

#pragma once

#include <Eigen/Dense>
#include <map>
#include <random>

#include "carforge/block.hpp"
#include "carforge/measure.hpp"

namespace carforge {

/// Largest nu * 2^m for which dense() builds a matrix.
inline constexpr std::size_t kDenseCap = 1024;

/// A section x -> f(x) in C^nu.
class VectorField {
public:
    VectorField(int modes, int nu);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int multiplicity() const noexcept { return nu_; }
    [[nodiscard]] std::span<const Complex> at(Word x) const {
        return {values_.data() + x * static_cast<std::size_t>(nu_), static_cast<std::size_t>(nu_)};
    }
    [[nodiscard]] std::span<Complex> at(Word x) {
        return {values_.data() + x * static_cast<std::size_t>(nu_), static_cast<std::size_t>(nu_)};
    }
    [[nodiscard]] std::vector<Complex>& values() noexcept { return values_; }
    [[nodiscard]] const std::vector<Complex>& values() const noexcept { return values_; }

    /// Standard normal real and imaginary parts.
    static VectorField random(int modes, int nu, std::mt19937_64& rng);
    /// Unit vector e_{x, j}.
    static VectorField basis(int modes, int nu, Word x, int component);

private:
    int modes_;
    int nu_;
    std::vector<Complex> values_;
};

/// <f, g> = sum_x weight(x) sum_j f_j(x) conj(g_j(x)).
[[nodiscard]] Complex inner(const VectorField& f, const VectorField& g, const OccupationMeasure& mu);
[[nodiscard]] double norm(const VectorField& f, const OccupationMeasure& mu);
[[nodiscard]] double max_abs_diff(const VectorField& f, const VectorField& g);

class ShiftOperator {
public:
    ShiftOperator(int modes, int nu);

    static ShiftOperator identity(int modes, int nu);
    /// Single-term operator with coefficient field D_t.
    static ShiftOperator single(Word shift, BlockField coefficients);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int multiplicity() const noexcept { return nu_; }
    [[nodiscard]] const std::map<Word, BlockField>& terms() const noexcept { return terms_; }

    /// D_t, created as zero if absent.
    [[nodiscard]] BlockField& term(Word shift);
    [[nodiscard]] const BlockField* find(Word shift) const;

private:
    int modes_;
    int nu_;
    std::map<Word, BlockField> terms_;
};

/// D^{AB}_{t+s}(x) = sum D^A_t(x) D^B_s(x + t).
[[nodiscard]] ShiftOperator compose(const ShiftOperator& a, const ShiftOperator& b);
[[nodiscard]] ShiftOperator add(const ShiftOperator& a, const ShiftOperator& b);
[[nodiscard]] ShiftOperator subtract(const ShiftOperator& a, const ShiftOperator& b);
[[nodiscard]] ShiftOperator scale(Complex lambda, const ShiftOperator& a);

/// Adjoint for the inner product weighted by mu:
/// D^{A*}_t(x) = (mu(x + t) / mu(x)) D_t(x + t)^* on the support, zero off it.
[[nodiscard]] ShiftOperator adjoint(const ShiftOperator& a, const OccupationMeasure& mu);

[[nodiscard]] VectorField apply(const ShiftOperator& a, const VectorField& f);

/// max over stored t and x of the entrywise magnitude of D_t(x).
[[nodiscard]] double residual_norm(const ShiftOperator& a);

/// Only the shift-0 term has a diagonal.
[[nodiscard]] Complex trace(const ShiftOperator& a);

/// Matrix with block (x, x + t) equal to D_t(x), so (dense(A) f)_x = (A f)(x).
[[nodiscard]] Eigen::MatrixXcd dense(const ShiftOperator& a, std::size_t cap = kDenseCap);
[[nodiscard]] Eigen::VectorXcd dense(const VectorField& f);

}  // namespace carforge
