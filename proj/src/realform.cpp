// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/realform.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "carforge/error.hpp"

namespace carforge {

namespace {

constexpr Complex kI{0.0, 1.0};

/// Highest set bit as a 1-based mode index.
int top_mode(Word s) { return 32 - std::countl_zero(s); }

/// Tree path from `base` to `y`: flip the differing bits in increasing mode order.
std::vector<LoopStep> tree_path(Word base, Word y) {
    std::vector<LoopStep> path;
    Word at = base;
    Word diff = base ^ y;
    while (diff != 0) {
        const int k = std::countr_zero(diff) + 1;
        path.push_back({at, k});
        at ^= bits::mode_bit(k);
        diff &= diff - 1;
    }
    return path;
}

void append_reversed(std::vector<LoopStep>& loop, const std::vector<LoopStep>& path) {
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        loop.push_back({it->from ^ bits::mode_bit(it->generator), it->generator});
    }
}

std::vector<VectorField> real_basis_probes(const Triple& t) {
    std::vector<VectorField> probes;
    const int nu = t.multiplicity();
    for (Word x : t.measure().support()) {
        for (int j = 0; j < nu; ++j) {
            VectorField e = VectorField::basis(t.modes(), nu, x, j);
            probes.push_back(e);
            for (Complex& z : e.values()) z *= kI;
            probes.push_back(std::move(e));
        }
    }
    return probes;
}

VectorField multiply(const BlockField& u, const VectorField& f, bool adjoint_blocks) {
    const int nu = f.multiplicity();
    const auto un = static_cast<std::size_t>(nu);
    VectorField out(f.modes(), nu);
    std::vector<Complex> b(u.block_size());
    for (Word x = 0; x < u.configurations(); ++x) {
        if (adjoint_blocks) {
            block::adjoint(u.at(x), b, nu);
        } else {
            std::copy(u.at(x).begin(), u.at(x).end(), b.begin());
        }
        const auto src = f.at(x);
        const auto dst = out.at(x);
        for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t j = 0; j < un; ++j) dst[i] += b[i * un + j] * src[j];
        }
    }
    return out;
}

std::vector<ShiftOperator> generators(const Triple& t) {
    std::vector<ShiftOperator> ops;
    for (int k : t.active()) {
        ops.push_back(j_basis(t, k));
        ops.push_back(j_sigma(t, k));
    }
    return ops;
}

}  // namespace

RealStructure::RealStructure(BlockField phases, const OccupationMeasure& mu)
    : phases_(std::move(phases)), root_weight_(mu.size(), 0.0) {
    if (phases_.modes() != mu.modes()) throw DimensionError("phase field and measure differ in m");
    const Word ones = bits::all_ones(mu.modes());
    for (Word x = 0; x < mu.size(); ++x) {
        if (mu.in_support(x)) root_weight_[x] = std::sqrt(mu.weight(x ^ ones) / mu.weight(x));
    }
}

VectorField RealStructure::apply(const VectorField& f) const {
    if (f.modes() != modes() || f.multiplicity() != multiplicity()) {
        throw DimensionError("vector field shape does not match real structure");
    }
    const auto un = static_cast<std::size_t>(multiplicity());
    const Word ones = bits::all_ones(modes());
    VectorField out(modes(), multiplicity());
    for (Word x = 0; x < phases_.configurations(); ++x) {
        const double root = root_weight_[x];
        if (root == 0.0) continue;
        const auto u = phases_.at(x);
        const auto src = f.at(x ^ ones);
        const auto dst = out.at(x);
        for (std::size_t i = 0; i < un; ++i) {
            Complex acc{};
            for (std::size_t j = 0; j < un; ++j) acc += u[i * un + j] * std::conj(src[j]);
            dst[i] = root * acc;
        }
    }
    return out;
}

std::string obstruction_name(const Obstruction& o) {
    struct Visitor {
        std::string operator()(const MeasureNotEquivalent&) const { return "MeasureNotEquivalent"; }
        std::string operator()(const MultiplicityMismatch&) const { return "MultiplicityMismatch"; }
        std::string operator()(const CycleInconsistency&) const { return "CycleInconsistency"; }
    };
    return std::visit(Visitor{}, o);
}

std::string describe(const Obstruction& o, int m) {
    std::ostringstream out;
    if (const auto* mne = std::get_if<MeasureNotEquivalent>(&o)) {
        out << "measure and its reflection have different null sets; " << mne->witness.size()
            << " witness configuration(s), first " << to_bitstring(mne->witness.front(), m);
    } else if (const auto* mm = std::get_if<MultiplicityMismatch>(&o)) {
        out << "multiplicity " << mm->nu_x << " at " << to_bitstring(mm->x, m) << " but "
            << mm->nu_complement << " at its complement";
    } else if (const auto* ci = std::get_if<CycleInconsistency>(&o)) {
        out << (ci->pairing ? "pairing x <-> 1-x" : "chord") << " inconsistent, holonomy ";
        if (ci->holonomy.size() == 1) {
            out << ci->holonomy.front().real();
            if (ci->holonomy.front().imag() != 0.0) out << std::showpos << ci->holonomy.front().imag() << "i" << std::noshowpos;
        } else {
            out << "defect " << ci->defect;
        }
        out << " around a loop of " << ci->loop.size() << " steps";
    }
    return out.str();
}

void propagate_edge(const CocycleFamily& c, int k, Word x, std::span<const Complex> u_x,
                    std::span<Complex> u_next) {
    const int nu = c.multiplicity();
    const Word reflected = x ^ bits::all_ones(c.modes());
    std::vector<Complex> c_adj(u_x.size());
    std::vector<Complex> c_bar(u_x.size());
    std::vector<Complex> tmp(u_x.size());
    block::adjoint(c.at(k, x), c_adj, nu);
    block::conjugate(c.at(k, reflected), c_bar);
    block::mul(c_adj, u_x, tmp, nu);
    block::mul(tmp, c_bar, u_next, nu);
    if (k % 2 != 0) {
        for (Complex& z : u_next) z = -z;
    }
}

SolveResult solve(const Triple& t, std::span<const Complex> seed) {
    const int m = t.modes();
    const int nu = t.multiplicity();
    const std::size_t bs = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu);
    const double tol = t.tolerance();
    const OccupationMeasure& mu = t.measure();

    std::vector<Complex> seed_block(bs);
    if (seed.empty()) {
        block::set_identity(seed_block, nu);
    } else {
        if (seed.size() != bs) throw DimensionError("seed must be a nu x nu block");
        if (block::unitarity_defect(seed, nu) > tol) throw ValidationError("seed is not unitary");
        std::copy(seed.begin(), seed.end(), seed_block.begin());
    }

    SolveResult result;
    const OccupationMeasure reflected = reflect(mu);
    if (!equivalent(mu, reflected)) {
        result.obstruction = MeasureNotEquivalent{support_difference(mu, reflected)};
        return result;
    }
    // nu is constant on X_m, so nu(x) = nu(1-x) holds identically and
    // MultiplicityMismatch cannot arise from a valid Triple.

    Word active_mask = 0;
    for (int k : t.active()) active_mask |= bits::mode_bit(k);
    const Word ones = bits::all_ones(m);
    const Word n = Word{1} << m;

    BlockField phases(m, nu);
    std::vector<bool> assigned(n, false);
    std::vector<Word> base_of(n, 0);
    std::vector<Complex> transposed(bs);
    for (Word x = 0; x < n; ++x) {
        if (!mu.in_support(x) || assigned[x]) continue;
        const Word base = x & ~active_mask;  // smallest element of the orbit
        const Word partner_base = (base ^ ones) & ~active_mask;
        // Subsets of the active mask in increasing order visit parents first.
        for (Word s = 0;; s = (s - active_mask) & active_mask) {
            const Word y = base ^ s;
            base_of[y] = base;
            assigned[y] = true;
            if (partner_base < base) {
                // Paired orbit already solved: U(y) = U(1-y)^T from the pairing law.
                const auto src = phases.at(y ^ ones);
                const auto un = static_cast<std::size_t>(nu);
                for (std::size_t i = 0; i < un; ++i) {
                    for (std::size_t j = 0; j < un; ++j) transposed[j * un + i] = src[i * un + j];
                }
                std::copy(transposed.begin(), transposed.end(), phases.at(y).begin());
            } else if (s == 0) {
                std::copy(seed_block.begin(), seed_block.end(), phases.at(y).begin());
            } else {
                const int k = top_mode(s);
                const Word parent = y ^ bits::mode_bit(k);
                propagate_edge(t.cocycle(), k, parent, phases.at(parent), phases.at(y));
            }
            if (s == active_mask) break;
        }
    }

    if (mu.in_support(0) && mu.in_support(ones)) {
        std::vector<Complex> inv0(bs);
        std::vector<Complex> ratio(bs);
        block::adjoint(phases.at(0), inv0, nu);
        block::mul(phases.at(ones), inv0, ratio, nu);
        Complex tr{};
        for (int i = 0; i < nu; ++i) tr += ratio[static_cast<std::size_t>(i * nu + i)];
        result.holonomy = tr / static_cast<double>(nu);
    }

    std::vector<Complex> expected(bs);
    std::vector<Complex> adj(bs);
    std::vector<Complex> hol(bs);
    // Chords: every active edge must obey the edge rule.
    for (Word x = 0; x < n && !result.obstruction; ++x) {
        if (!mu.in_support(x)) continue;
        for (int k : t.active()) {
            const Word y = x ^ bits::mode_bit(k);
            if (y < x) continue;
            propagate_edge(t.cocycle(), k, x, phases.at(x), expected);
            block::adjoint(phases.at(y), adj, nu);
            block::mul(expected, adj, hol, nu);
            const double defect = block::identity_defect(hol, nu);
            if (defect > tol) {
                CycleInconsistency ci;
                ci.loop = tree_path(base_of[x], x);
                ci.loop.push_back({x, k});
                append_reversed(ci.loop, tree_path(base_of[y], y));
                ci.holonomy = hol;
                ci.defect = defect;
                result.obstruction = std::move(ci);
                break;
            }
        }
    }
    // Pairing: one representative per orbit {x, 1-x}; complement has no fixed points.
    for (Word x = 0; x < n && !result.obstruction; ++x) {
        const Word y = x ^ ones;
        if (y < x || !mu.in_support(x)) continue;
        block::conjugate(phases.at(y), adj);
        block::mul(phases.at(x), adj, hol, nu);
        const double defect = block::identity_defect(hol, nu);
        if (defect > tol) {
            CycleInconsistency ci;
            ci.loop = tree_path(base_of[x], x);
            ci.loop.push_back({x, 0});
            append_reversed(ci.loop, tree_path(base_of[y], y));
            ci.holonomy = hol;
            ci.defect = defect;
            ci.pairing = true;
            result.obstruction = std::move(ci);
        }
    }

    if (!result.obstruction) result.structure.emplace(phases, mu);
    result.propagated = std::move(phases);
    return result;
}

double RealStructureReport::max_residual() const {
    return std::max({involution, isometry, commutation, number});
}

RealStructureReport verify(const RealStructure& s, const Triple& t, std::uint64_t seed,
                           int random_directions) {
    if (s.modes() != t.modes() || s.multiplicity() != t.multiplicity()) {
        throw DimensionError("real structure does not belong to this triple");
    }
    RealStructureReport report;
    const auto probes = real_basis_probes(t);
    for (const VectorField& b : probes) {
        report.involution = std::max(report.involution, max_abs_diff(s.apply(s.apply(b)), b));
    }

    std::mt19937_64 rng(seed);
    // ||Sf||^2 - ||f||^2 summed as mu(1-x)|(Sf)(1-x)|^2 - mu(x)|f(x)|^2 term by term,
    // so exact phase data gives an exact zero.
    const Word ones = bits::all_ones(t.modes());
    for (int i = 0; i < 20; ++i) {
        VectorField f = VectorField::random(t.modes(), t.multiplicity(), rng);
        for (Word x = 0; x < t.measure().size(); ++x) {
            if (!t.measure().in_support(x)) {
                for (Complex& z : f.at(x)) z = 0.0;
            }
        }
        const VectorField sf = s.apply(f);
        double difference = 0.0;
        for (Word x : t.measure().support()) {
            double image = 0.0;
            double source = 0.0;
            for (Complex z : sf.at(x ^ ones)) image += std::norm(z);
            for (Complex z : f.at(x)) source += std::norm(z);
            difference += t.measure().weight(x ^ ones) * image - t.measure().weight(x) * source;
        }
        const double scale = norm(sf, t.measure()) + norm(f, t.measure());
        if (scale > 0.0) report.isometry = std::max(report.isometry, std::abs(difference) / scale);
    }

    std::vector<ShiftOperator> ops = generators(t);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < random_directions; ++i) {
        std::vector<double> z(2 * t.active().size());
        double len = 0.0;
        for (double& v : z) {
            v = gauss(rng);
            len += v * v;
        }
        len = std::sqrt(len);
        for (double& v : z) v /= len;
        ops.push_back(j_general(t, z));
    }
    for (const ShiftOperator& a : ops) {
        for (const VectorField& b : probes) {
            report.commutation =
                std::max(report.commutation, max_abs_diff(s.apply(apply(a, b)), apply(a, s.apply(b))));
        }
    }
    for (int k : t.active()) {
        const auto [occupied, empty] = number_ops(t, k);
        for (const VectorField& b : probes) {
            report.number =
                std::max(report.number, max_abs_diff(s.apply(apply(occupied, b)), apply(empty, s.apply(b))));
        }
    }
    return report;
}

std::vector<VectorField> real_form_basis(const RealStructure& s, const Triple& t) {
    const int nu = t.multiplicity();
    const Word ones = bits::all_ones(t.modes());
    std::vector<VectorField> basis;
    for (Word x : t.measure().support()) {
        if ((x ^ ones) < x) continue;
        for (int j = 0; j < nu; ++j) {
            const VectorField e = VectorField::basis(t.modes(), nu, x, j);
            VectorField ie = e;
            for (Complex& z : ie.values()) z *= kI;
            for (const VectorField* v : std::array<const VectorField*, 2>{&e, &ie}) {
                VectorField f = *v;
                const VectorField sv = s.apply(*v);
                for (std::size_t i = 0; i < f.values().size(); ++i) f.values()[i] += sv.values()[i];
                const double len = norm(f, t.measure());
                for (Complex& z : f.values()) z /= len;
                basis.push_back(std::move(f));
            }
        }
    }
    return basis;
}

RestrictedOperator restrict_to_real_form(const Triple& t, const RealStructure& s,
                                         const ShiftOperator& a) {
    RestrictedOperator out;
    for (const VectorField& b : real_basis_probes(t)) {
        out.commutation_residual =
            std::max(out.commutation_residual, max_abs_diff(s.apply(apply(a, b)), apply(a, s.apply(b))));
    }
    if (out.commutation_residual > t.tolerance()) {
        throw InvarianceError("operator does not commute with the real structure (residual " +
                              std::to_string(out.commutation_residual) + ")");
    }
    const auto basis = real_form_basis(s, t);
    const auto n = static_cast<Eigen::Index>(basis.size());
    out.matrix = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const VectorField image = apply(a, basis[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex entry = inner(image, basis[static_cast<std::size_t>(i)], t.measure());
            out.matrix(i, j) = entry.real();
            out.imaginary_residual = std::max(out.imaginary_residual, std::abs(entry.imag()));
        }
    }
    return out;
}

double StandardizeReport::max_residual() const {
    return std::max({real_compatible_residual, cocycle_residual, intertwiner_unitarity,
                     intertwining, conjugation});
}

Standardized standardize(const Triple& t, const RealStructure& s) {
    const int m = t.modes();
    const int nu = t.multiplicity();
    const auto un = static_cast<std::size_t>(nu);
    const Word ones = bits::all_ones(m);
    BlockField u = BlockField::identity(m, nu);
    for (Word x = 0; x < u.configurations(); ++x) {
        const Word y = x ^ ones;
        if (y < x || !t.measure().in_support(x)) continue;
        const auto src = s.phases().at(x);
        const auto dst = u.at(y);
        for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t j = 0; j < un; ++j) dst[j * un + i] = src[i * un + j];
        }
    }

    Triple transformed(t.measure(), gauge(t.cocycle(), u, t.tolerance()), t.active(), t.tolerance());
    StandardizeReport report;
    report.real_compatible_residual = real_compatible(transformed.cocycle(), t.tolerance()).residual;
    report.cocycle_residual = check_conditions(transformed.cocycle()).max_residual();
    report.intertwiner_unitarity = u.unitarity_defect();

    const RealStructure standard(BlockField::identity(m, nu), t.measure());
    const auto probes = real_basis_probes(t);
    const auto original_ops = generators(t);
    const auto new_ops = generators(transformed);
    for (const VectorField& b : probes) {
        // (U_u^{-1} S U_u) b against plain conjugation.
        const VectorField conjugated = multiply(u, s.apply(multiply(u, b, false)), true);
        report.conjugation = std::max(report.conjugation, max_abs_diff(conjugated, standard.apply(b)));
        for (std::size_t g = 0; g < original_ops.size(); ++g) {
            const VectorField lhs = multiply(u, apply(new_ops[g], b), false);
            const VectorField rhs = apply(original_ops[g], multiply(u, b, false));
            report.intertwining = std::max(report.intertwining, max_abs_diff(lhs, rhs));
        }
    }
    return {std::move(transformed), std::move(u), report};
}

CartanRow cartan_phase(int m) {
    require_modes(m);
    const Triple t(OccupationMeasure::uniform(m), trivial(m));
    const SolveResult r = solve(t);
    CartanRow row;
    row.m = m;
    row.holonomy = r.holonomy.value_or(Complex{});
    row.predicted = ((m * (m + 1) / 2) % 2 == 0) ? 1 : -1;
    row.split = r.split();
    row.agree = row.holonomy == Complex(row.predicted, 0.0) && row.split == (row.predicted == 1);
    return row;
}

}  // namespace carforge
