// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file realform.hpp
 * @brief Invariant real structures of a GW module and their obstructions.
 *
 * A real structure is an antilinear isometric involution S commuting with
 * every J_z. It is encoded by a phase field U with r(x) v = U(x) conj(v):
 *
 *     (S f)(x) = U(x) sqrt(mu(1-x)/mu(x)) conj(f(1 - x))
 *
 * S exists iff mu and its reflection share null sets and U can be chosen with
 *
 *     U(x + delta_k) = (-1)^k c_k(x)^* U(x) conj(c_k(1 - x))     (edge rule)
 *     U(x) conj(U(1 - x)) = I                                     (pairing)
 *
 * solve() fixes U at the base of each orbit, propagates along a spanning
 * tree of the hypercube and then checks every remaining edge and pair.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "carforge/gwmodule.hpp"

namespace carforge {

class RealStructure {
public:
    RealStructure(BlockField phases, const OccupationMeasure& mu);

    [[nodiscard]] int modes() const noexcept { return phases_.modes(); }
    [[nodiscard]] int multiplicity() const noexcept { return phases_.multiplicity(); }
    [[nodiscard]] const BlockField& phases() const noexcept { return phases_; }
    /// sqrt(mu(1-x)/mu(x)) on the support, 0 elsewhere.
    [[nodiscard]] double root_weight(Word x) const { return root_weight_[x]; }

    [[nodiscard]] VectorField apply(const VectorField& f) const;

private:
    BlockField phases_;
    std::vector<double> root_weight_;
};

/// One edge of a certificate loop. generator 0 denotes the complement x -> 1 - x.
struct LoopStep {
    Word from = 0;
    int generator = 0;

    friend bool operator==(const LoopStep&, const LoopStep&) = default;
};

struct MeasureNotEquivalent {
    std::vector<Word> witness;  // configurations in exactly one of supp(mu), supp(mu~)
};

struct MultiplicityMismatch {
    Word x = 0;
    int nu_x = 0;
    int nu_complement = 0;
};

struct CycleInconsistency {
    std::vector<LoopStep> loop;
    std::vector<Complex> holonomy;  // nu x nu defect; identity would mean consistent
    double defect = 0.0;            // max |holonomy - I|
    bool pairing = false;           // failed at x <-> 1-x rather than at a chord
};

using Obstruction = std::variant<MeasureNotEquivalent, MultiplicityMismatch, CycleInconsistency>;

[[nodiscard]] std::string obstruction_name(const Obstruction& o);
[[nodiscard]] std::string describe(const Obstruction& o, int m);

struct SolveResult {
    std::optional<RealStructure> structure;
    std::optional<Obstruction> obstruction;
    /// r(1) r(0)^{-1}; normalized trace when nu > 1. Empty when 0 or 1 is a null point
    /// or the measure check failed.
    std::optional<Complex> holonomy;
    /// The propagated phase field, present whenever propagation ran.
    std::optional<BlockField> propagated;

    [[nodiscard]] bool split() const noexcept { return structure.has_value(); }
};

/// U_next = (-1)^k c_k(x)^* U_x conj(c_k(1 - x)).
void propagate_edge(const CocycleFamily& c, int k, Word x, std::span<const Complex> u_x,
                    std::span<Complex> u_next);

/// Decides existence of an invariant real structure. `seed` is the nu x nu
/// unitary placed at each orbit base (identity when empty).
[[nodiscard]] SolveResult solve(const Triple& t, std::span<const Complex> seed = {});

struct RealStructureReport {
    double involution = 0.0;
    double isometry = 0.0;
    double commutation = 0.0;
    double number = 0.0;

    [[nodiscard]] double max_residual() const;
};

/// Residuals of S^2 - I, |‖Sf‖ - ‖f‖|, S J - J S (generators and `random_directions`
/// random z) and S N_k - N'_k S.
[[nodiscard]] RealStructureReport verify(const RealStructure& s, const Triple& t,
                                         std::uint64_t seed = 42, int random_directions = 20);

/// Orthonormal basis of the fixed-point set of S; with the i-multiples it spans H.
[[nodiscard]] std::vector<VectorField> real_form_basis(const RealStructure& s, const Triple& t);

struct RestrictedOperator {
    Eigen::MatrixXd matrix;
    double imaginary_residual = 0.0;
    double commutation_residual = 0.0;
};

/// Matrix of A in real_form_basis(s, t). Throws InvarianceError if A does not commute with S.
[[nodiscard]] RestrictedOperator restrict_to_real_form(const Triple& t, const RealStructure& s,
                                                       const ShiftOperator& a);

struct StandardizeReport {
    double real_compatible_residual = 0.0;
    double cocycle_residual = 0.0;
    double intertwiner_unitarity = 0.0;
    double intertwining = 0.0;
    double conjugation = 0.0;

    [[nodiscard]] double max_residual() const;
};

struct Standardized {
    Triple triple;
    BlockField gauge;
    StandardizeReport report;
};

/// Gauge (T, S) to (T', plain conjugation): u = I at the lower element of each
/// pair {x, 1-x} and u(1-x) = U(x)^T, then c' = gauge(c, u).
[[nodiscard]] Standardized standardize(const Triple& t, const RealStructure& s);

struct CartanRow {
    int m = 0;
    Complex holonomy;
    int predicted = 0;  // (-1)^{m(m+1)/2}
    bool split = false;
    bool agree = false;
};

[[nodiscard]] CartanRow cartan_phase(int m);

}  // namespace carforge
