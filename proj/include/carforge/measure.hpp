// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file measure.hpp
 * @brief Quasi-invariant measures on X_m.
 *
 * Every measure is stored as an explicit table of singleton masses of length
 * 2^m; the kind tag only records how the table was built. Masses are not
 * normalized. Support membership is the exact test weight > 0.
 */

#pragma once

#include <span>
#include <string>
#include <vector>

#include "carforge/occupation.hpp"

namespace carforge {

enum class MeasureKind { uniform, product, explicit_table, frozen_tail };

[[nodiscard]] std::string to_string(MeasureKind kind);

class OccupationMeasure {
public:
    /// Counting measure, every singleton has mass 1.
    static OccupationMeasure uniform(int m);
    /// weight(x) = prod_k p_k^{x_k} (1 - p_k)^{1 - x_k}, each 0 < p_k < 1.
    static OccupationMeasure product(std::vector<double> p);
    /// Table indexed by configuration index; entries finite and nonnegative.
    static OccupationMeasure explicit_weights(int m, std::vector<double> weights);
    /// Mass 1 on {x : x_{j+1} = ... = x_m = 0}, zero elsewhere.
    static OccupationMeasure frozen_tail(int m, int active);

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] MeasureKind kind() const noexcept { return kind_; }
    /// Probabilities of a product measure; empty for other kinds.
    [[nodiscard]] const std::vector<double>& probabilities() const noexcept { return p_; }
    /// j of a frozen_tail measure; 0 for other kinds.
    [[nodiscard]] int frozen_active() const noexcept { return frozen_active_; }

    [[nodiscard]] double weight(Word x) const { return weights_[x]; }
    [[nodiscard]] double weight(const Configuration& x) const;
    [[nodiscard]] bool in_support(Word x) const { return weights_[x] > 0.0; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] double total_mass() const;
    [[nodiscard]] bool full_support() const;
    [[nodiscard]] std::vector<Word> support() const;

private:
    OccupationMeasure(int m, MeasureKind kind, std::vector<double> weights);

    int modes_;
    MeasureKind kind_;
    std::vector<double> weights_;
    std::vector<double> p_;
    int frozen_active_ = 0;
};

/// weight(x+t)/weight(x); SupportError when x is a null point.
[[nodiscard]] double rn_ratio(const OccupationMeasure& mu, Word x, Word t);
[[nodiscard]] double rn_ratio(const OccupationMeasure& mu, const Configuration& x, const Shift& t);

/// The reflected measure E -> mu(1 - E).
[[nodiscard]] OccupationMeasure reflect(const OccupationMeasure& mu);

/// Equal null sets; on a finite space that is equality of supports.
[[nodiscard]] bool equivalent(const OccupationMeasure& a, const OccupationMeasure& b);

/// Configurations in exactly one of the two supports, ascending.
[[nodiscard]] std::vector<Word> support_difference(const OccupationMeasure& a,
                                                   const OccupationMeasure& b);

/// Support invariant under every generator delta_k with k in `active`.
[[nodiscard]] bool quasi_invariant(const OccupationMeasure& mu, std::span<const int> active);

}  // namespace carforge
