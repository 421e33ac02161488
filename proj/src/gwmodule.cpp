// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/gwmodule.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "carforge/error.hpp"

namespace carforge {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_active(const Triple& t, int k) {
    if (k < 1 || k > t.modes()) {
        throw RangeError("mode index " + std::to_string(k) + " outside 1.." +
                         std::to_string(t.modes()));
    }
    if (!t.is_active(k)) throw RangeError("mode " + std::to_string(k) + " is not active");
}

}  // namespace

Triple::Triple(OccupationMeasure measure, CocycleFamily cocycle, std::vector<int> active,
               double tolerance)
    : measure_(std::move(measure)),
      cocycle_(std::move(cocycle)),
      active_(std::move(active)),
      tolerance_(tolerance) {
    const int m = measure_.modes();
    if (cocycle_.modes() != m) {
        throw DimensionError("cocycle has " + std::to_string(cocycle_.modes()) +
                             " modes but measure has " + std::to_string(m));
    }
    if (active_.empty()) {
        for (int k = 1; k <= m; ++k) active_.push_back(k);
    }
    std::sort(active_.begin(), active_.end());
    if (std::adjacent_find(active_.begin(), active_.end()) != active_.end()) {
        throw ValidationError("active mode list contains duplicates");
    }
    for (int k : active_) {
        if (k < 1 || k > m) {
            throw RangeError("active mode " + std::to_string(k) + " outside 1.." + std::to_string(m));
        }
    }
    const CocycleReport report = check_conditions(cocycle_);
    if (!report.valid(tolerance_)) {
        throw ValidationError("cocycle family violates its consistency conditions (residual " +
                              std::to_string(report.max_residual()) + ")");
    }
    if (!quasi_invariant(measure_, active_)) {
        throw ValidationError("measure support is not invariant under the active generators");
    }
}

bool Triple::is_active(int k) const {
    return std::binary_search(active_.begin(), active_.end(), k);
}

std::size_t Triple::dimension() const noexcept {
    return (std::size_t{1} << modes()) * static_cast<std::size_t>(multiplicity());
}

ShiftOperator Triple::identity() const {
    BlockField d(modes(), multiplicity());
    for (Word x = 0; x < d.configurations(); ++x) {
        if (measure_.in_support(x)) block::set_identity(d.at(x), multiplicity());
    }
    return ShiftOperator::single(0, std::move(d));
}

ShiftOperator j_basis(const Triple& t, int k) {
    require_active(t, k);
    const int m = t.modes();
    const int nu = t.multiplicity();
    const Word dk = bits::mode_bit(k);
    BlockField d(m, nu);
    for (Word x = 0; x < d.configurations(); ++x) {
        if (!t.measure().in_support(x)) continue;
        const double sign = bits::prefix_parity(x, k) == 0 ? -1.0 : 1.0;
        const double root = std::sqrt(rn_ratio(t.measure(), x, dk));
        const Complex factor = sign * kI * root;
        const auto src = t.cocycle().at(k, x);
        const auto dst = d.at(x);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = factor * src[i];
    }
    return ShiftOperator::single(dk, std::move(d));
}

ShiftOperator j_sigma(const Triple& t, int k) {
    ShiftOperator op = j_basis(t, k);
    BlockField& d = op.term(bits::mode_bit(k));
    for (Word x = 0; x < d.configurations(); ++x) {
        const Complex factor = bits::occupation(x, k) == 0 ? kI : -kI;
        for (Complex& z : d.at(x)) z *= factor;
    }
    return op;
}

ShiftOperator j_general(const Triple& t, std::span<const double> coeffs) {
    const auto& active = t.active();
    if (coeffs.size() != 2 * active.size()) {
        throw DimensionError("j_general expects " + std::to_string(2 * active.size()) +
                             " coefficients, got " + std::to_string(coeffs.size()));
    }
    ShiftOperator out(t.modes(), t.multiplicity());
    for (std::size_t i = 0; i < active.size(); ++i) {
        const double a = coeffs[2 * i];
        const double b = coeffs[2 * i + 1];
        if (a != 0.0) out = add(out, scale(a, j_basis(t, active[i])));
        if (b != 0.0) out = add(out, scale(b, j_sigma(t, active[i])));
    }
    return out;
}

ShiftOperator annihilator(const Triple& t, int k) {
    return scale(0.5, add(j_sigma(t, k), scale(kI, j_basis(t, k))));
}

ShiftOperator creator(const Triple& t, int k) { return adjoint(annihilator(t, k), t.measure()); }

std::pair<ShiftOperator, ShiftOperator> number_ops(const Triple& t, int k) {
    require_active(t, k);
    const int nu = t.multiplicity();
    BlockField occupied(t.modes(), nu);
    BlockField empty(t.modes(), nu);
    for (Word x = 0; x < occupied.configurations(); ++x) {
        if (!t.measure().in_support(x)) continue;
        block::set_identity(bits::occupation(x, k) != 0 ? occupied.at(x) : empty.at(x), nu);
    }
    return {ShiftOperator::single(0, std::move(occupied)), ShiftOperator::single(0, std::move(empty))};
}

CarReport verify_car(const Triple& t) {
    const auto& active = t.active();
    std::vector<ShiftOperator> a;
    std::vector<ShiftOperator> a_star;
    a.reserve(active.size());
    a_star.reserve(active.size());
    for (int k : active) {
        a.push_back(annihilator(t, k));
        a_star.push_back(creator(t, k));
    }
    const ShiftOperator unit = t.identity();
    CarReport report;
    auto record = [&report](CarEntry entry) {
        if (entry.residual > report.max_residual || report.entries.empty()) {
            report.max_residual = std::max(report.max_residual, entry.residual);
            report.worst = entry;
        }
        report.entries.push_back(std::move(entry));
    };
    for (std::size_t j = 0; j < active.size(); ++j) {
        for (std::size_t k = 0; k < active.size(); ++k) {
            const ShiftOperator aa = add(compose(a[j], a[k]), compose(a[k], a[j]));
            record({active[j], active[k], "aa", residual_norm(aa)});
            ShiftOperator mixed = add(compose(a[j], a_star[k]), compose(a_star[k], a[j]));
            if (j == k) mixed = subtract(mixed, unit);
            record({active[j], active[k], "aa*", residual_norm(mixed)});
        }
    }
    return report;
}

}  // namespace carforge
