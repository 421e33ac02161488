// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cocycle.hpp
 * @brief Unitary structure fields c_k(x) of a CAR representation.
 *
 * A family must satisfy, for all modes k != l and all x,
 *
 *     c_k(x)^*  = c_k(x + delta_k)
 *     c_k(x) c_l(x + delta_k) = c_l(x) c_k(x + delta_l)
 *
 * Multiplicity nu is constant; nu = 1 families are unit-modulus scalars.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carforge/block.hpp"

namespace carforge {

class CocycleFamily {
public:
    /// One BlockField per mode, fields[k-1] holding c_k.
    CocycleFamily(std::vector<BlockField> fields, std::string label = "explicit");

    [[nodiscard]] int modes() const noexcept { return modes_; }
    [[nodiscard]] int multiplicity() const noexcept { return nu_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

    [[nodiscard]] std::span<const Complex> at(int k, Word x) const { return fields_[k - 1].at(x); }
    /// Leading entry of c_k(x); the value itself when nu = 1.
    [[nodiscard]] Complex scalar(int k, Word x) const { return at(k, x)[0]; }
    [[nodiscard]] const BlockField& field(int k) const { return fields_[k - 1]; }

private:
    int modes_;
    int nu_;
    std::vector<BlockField> fields_;
    std::string label_;
};

struct CocycleReport {
    double adjoint_residual = 0.0;
    double commutation_residual = 0.0;
    double unitarity_residual = 0.0;
    int adjoint_k = 0;
    Word adjoint_x = 0;
    int commutation_k = 0;
    int commutation_l = 0;
    Word commutation_x = 0;

    [[nodiscard]] double max_residual() const;
    [[nodiscard]] bool valid(double tolerance = kDefaultTolerance) const {
        return max_residual() <= tolerance;
    }
};

[[nodiscard]] CocycleReport check_conditions(const CocycleFamily& c);

/// c_k(x) = I for all k and x.
[[nodiscard]] CocycleFamily trivial(int m, int nu = 1);

/// Scalar family c_{2l} = 1, c_{4l+1} = (-1)^{x_{4l+3}}, c_{4l+3} = (-1)^{x_{4l+1}},
/// tensored with I_nu when nu > 1. Requires m divisible by 4.
[[nodiscard]] CocycleFamily gw311(int m, int nu = 1);

struct CompatibilityReport {
    bool compatible = false;
    double residual = 0.0;
    int k = 0;
    Word x = 0;
};

/// Tests conj(c_k(1 - x)) = (-1)^k c_k(x) entrywise for all k and x.
[[nodiscard]] CompatibilityReport real_compatible(const CocycleFamily& c,
                                                  double tolerance = kDefaultTolerance);

/// c'_k(x) = u(x)^* c_k(x) u(x + delta_k). Throws ValidationError for non-unitary u.
[[nodiscard]] CocycleFamily gauge(const CocycleFamily& c, const BlockField& u,
                                  double tolerance = kDefaultTolerance);

/// Random gauge u(x) = exp(i theta(x)) I_nu. With `real_symmetric` the phases
/// obey theta(1 - x) = -theta(x), i.e. u(1 - x) = conj(u(x)).
[[nodiscard]] BlockField random_phase_gauge(int m, int nu, std::uint64_t seed,
                                            bool real_symmetric);

}  // namespace carforge
