// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file gwmodule.hpp
 * @brief Representation operators of a Garding-Wightman triple (mu, nu, {c_k}).
 *
 * On the space of fields over X_m weighted by mu,
 *
 *   (J_{z_k} f)(x)        = (-1)^{x_1+...+x_{k-1}+1} i c_k(x) sqrt(mu(x+delta_k)/mu(x)) f(x+delta_k)
 *   (J_{sigma(z_k)} f)(x) = (-1)^{x_k} i (J_{z_k} f)(x)
 *   a_k  = (J_{sigma(z_k)} + i J_{z_k}) / 2
 *   a_k* = (-J_{sigma(z_k)} + i J_{z_k}) / 2
 *
 * Fields are only meaningful on the support of mu; every operator built
 * here vanishes off the support.
 */

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carforge/cocycle.hpp"
#include "carforge/measure.hpp"
#include "carforge/shift_operator.hpp"

namespace carforge {

class Triple {
public:
    /// Validates the cocycle laws and quasi-invariance of mu under the active
    /// generators. An empty `active` means all modes 1..m.
    Triple(OccupationMeasure measure, CocycleFamily cocycle, std::vector<int> active = {},
           double tolerance = kDefaultTolerance);

    [[nodiscard]] int modes() const noexcept { return measure_.modes(); }
    [[nodiscard]] int multiplicity() const noexcept { return cocycle_.multiplicity(); }
    [[nodiscard]] const OccupationMeasure& measure() const noexcept { return measure_; }
    [[nodiscard]] const CocycleFamily& cocycle() const noexcept { return cocycle_; }
    [[nodiscard]] const std::vector<int>& active() const noexcept { return active_; }
    [[nodiscard]] bool is_active(int k) const;
    [[nodiscard]] bool all_active() const noexcept {
        return static_cast<int>(active_.size()) == modes();
    }
    [[nodiscard]] double tolerance() const noexcept { return tolerance_; }
    /// nu * 2^m.
    [[nodiscard]] std::size_t dimension() const noexcept;

    /// Projection onto fields supported on supp(mu); the unit of the algebra.
    [[nodiscard]] ShiftOperator identity() const;

private:
    OccupationMeasure measure_;
    CocycleFamily cocycle_;
    std::vector<int> active_;
    double tolerance_;
};

[[nodiscard]] ShiftOperator j_basis(const Triple& t, int k);
[[nodiscard]] ShiftOperator j_sigma(const Triple& t, int k);
/// sum_k a_k J_{z_k} + b_k J_{sigma(z_k)} over the active modes in ascending
/// order; coeffs = (a_1, b_1, a_2, b_2, ...), two per active mode.
[[nodiscard]] ShiftOperator j_general(const Triple& t, std::span<const double> coeffs);
[[nodiscard]] ShiftOperator annihilator(const Triple& t, int k);
/// adjoint(annihilator(t, k), mu).
[[nodiscard]] ShiftOperator creator(const Triple& t, int k);
/// (N_k, N'_k): multiplication by x_k and by 1 - x_k on the support.
[[nodiscard]] std::pair<ShiftOperator, ShiftOperator> number_ops(const Triple& t, int k);

struct CarEntry {
    int j = 0;
    int k = 0;
    std::string relation;  // "aa" or "aa*"
    double residual = 0.0;
};

struct CarReport {
    double max_residual = 0.0;
    CarEntry worst;
    std::vector<CarEntry> entries;
};

/// Residuals of a_j a_k + a_k a_j and a_j a_k* + a_k* a_j - delta_jk I over active pairs.
[[nodiscard]] CarReport verify_car(const Triple& t);

}  // namespace carforge
