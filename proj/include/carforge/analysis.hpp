// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file analysis.hpp
 * @brief Irreducibility and real-type diagnostics of a GW module.
 *
 * The 2n active generators J_{z_k}, J_{sigma(z_k)} generate the signed
 * monomial group {+-J^alpha} of order 2^{2n+1}. Character sums over it give
 *
 *     sum of squared multiplicities = 2^{-2n} sum_alpha |tr J^alpha|^2
 *     Frobenius-Schur indicator     = 2^{-2n} sum_alpha tr((J^alpha)^2)
 *
 * Monomials are visited in Gray-code order so each one is a single
 * generator product away from the previous one.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carforge/realform.hpp"

namespace carforge {

struct CharacterSums {
    double commutant = 0.0;  // sum |tr|^2 / 2^{2n}
    double indicator = 0.0;  // sum tr(g^2) / 2^{2n}
    std::size_t monomials = 0;
};

[[nodiscard]] CharacterSums character_sums(const Triple& t);

/// Ordered product of the generators selected by `alpha` (bit 2i: J_{z}, bit 2i+1:
/// J_{sigma z} of the i-th active mode).
[[nodiscard]] ShiftOperator monomial(const Triple& t, std::uint64_t alpha);

/// Dimension of the complex commutant; 1 iff irreducible.
[[nodiscard]] int commutant_dim_complex(const Triple& t);

/// +1 real, 0 complex, -1 quaternionic. Requires full support and irreducibility.
[[nodiscard]] int frobenius_schur(const Triple& t);

struct RealCommutant {
    int dimension = 0;
    double threshold = 0.0;             // absolute singular-value cut
    std::vector<double> singular_values;  // ascending
    std::vector<BlockField> basis;      // phi fields spanning the commutant
};

/// Real commutant of the restricted module, as S-compatible multiplication
/// operators L_phi commuting with every generator.
[[nodiscard]] RealCommutant real_commutant(const Triple& t, const RealStructure& s);

/// Same dimension by brute force: nullspace of [M, R_g] = 0 over all real n x n
/// matrices M, R_g the restricted generators. Limited to n <= max_dim.
[[nodiscard]] int real_commutant_dim_dense(const Triple& t, const RealStructure& s,
                                           std::size_t max_dim = 16);

struct ComplexStructureResult {
    bool exists = false;
    int commutant_dim = 0;
    bool exhaustive = false;
    std::string certificate;
    std::optional<BlockField> witness;  // phi with phi(x)^2 = -I
    double witness_residual = 0.0;
};

/// Looks for an orthogonal complex structure on the real form commuting with C(Z).
[[nodiscard]] ComplexStructureResult complex_structure_search(const Triple& t,
                                                              const RealStructure& s,
                                                              std::uint64_t seed = 42);

struct EpsilonResult {
    bool consistent = false;
    bool exhaustive = false;
    std::uint64_t assignments_checked = 0;
    std::string certificate;
};

/// Sign functions with eps(1-x) = -eps(x) and eps(x+delta_k) = eps(x) on X_m.
[[nodiscard]] EpsilonResult epsilon_consistency(int m);

}  // namespace carforge
