// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/shift_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "carforge/error.hpp"

namespace carforge {

namespace {

void require_same_shape(const ShiftOperator& a, const ShiftOperator& b) {
    if (a.modes() != b.modes() || a.multiplicity() != b.multiplicity()) {
        throw DimensionError("operators act on different spaces: (m=" + std::to_string(a.modes()) +
                             ", nu=" + std::to_string(a.multiplicity()) + ") vs (m=" +
                             std::to_string(b.modes()) + ", nu=" +
                             std::to_string(b.multiplicity()) + ")");
    }
}

}  // namespace

VectorField::VectorField(int modes, int nu)
    : modes_(modes),
      nu_(nu),
      values_((std::size_t{1} << modes) * static_cast<std::size_t>(nu)) {}

VectorField VectorField::random(int modes, int nu, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    VectorField f(modes, nu);
    for (Complex& z : f.values_) z = {gauss(rng), gauss(rng)};
    return f;
}

VectorField VectorField::basis(int modes, int nu, Word x, int component) {
    VectorField f(modes, nu);
    f.at(x)[static_cast<std::size_t>(component)] = 1.0;
    return f;
}

Complex inner(const VectorField& f, const VectorField& g, const OccupationMeasure& mu) {
    if (f.modes() != mu.modes() || g.modes() != mu.modes() ||
        f.multiplicity() != g.multiplicity()) {
        throw DimensionError("inner product operands have mismatched shapes");
    }
    Complex acc{};
    for (Word x = 0; x < mu.size(); ++x) {
        const double w = mu.weight(x);
        if (w == 0.0) continue;
        Complex local{};
        const auto fx = f.at(x);
        const auto gx = g.at(x);
        for (std::size_t j = 0; j < fx.size(); ++j) local += fx[j] * std::conj(gx[j]);
        acc += w * local;
    }
    return acc;
}

double norm(const VectorField& f, const OccupationMeasure& mu) {
    return std::sqrt(std::max(0.0, inner(f, f, mu).real()));
}

double max_abs_diff(const VectorField& f, const VectorField& g) {
    return block::max_abs_diff(f.values(), g.values());
}

ShiftOperator::ShiftOperator(int modes, int nu) : modes_(modes), nu_(nu) {
    if (nu < 1) throw RangeError("multiplicity must be positive");
}

ShiftOperator ShiftOperator::identity(int modes, int nu) {
    return single(0, BlockField::identity(modes, nu));
}

ShiftOperator ShiftOperator::single(Word shift, BlockField coefficients) {
    ShiftOperator op(coefficients.modes(), coefficients.multiplicity());
    op.terms_.emplace(shift, std::move(coefficients));
    return op;
}

BlockField& ShiftOperator::term(Word shift) {
    auto it = terms_.find(shift);
    if (it == terms_.end()) it = terms_.emplace(shift, BlockField(modes_, nu_)).first;
    return it->second;
}

const BlockField* ShiftOperator::find(Word shift) const {
    const auto it = terms_.find(shift);
    return it == terms_.end() ? nullptr : &it->second;
}

ShiftOperator compose(const ShiftOperator& a, const ShiftOperator& b) {
    require_same_shape(a, b);
    const int nu = a.multiplicity();
    ShiftOperator out(a.modes(), nu);
    const Word n = Word{1} << a.modes();
    for (const auto& [t, da] : a.terms()) {
        for (const auto& [s, db] : b.terms()) {
            BlockField& target = out.term(t ^ s);
            for (Word x = 0; x < n; ++x) block::mul_add(da.at(x), db.at(x ^ t), target.at(x), nu);
        }
    }
    return out;
}

ShiftOperator add(const ShiftOperator& a, const ShiftOperator& b) {
    require_same_shape(a, b);
    ShiftOperator out = a;
    const Word n = Word{1} << a.modes();
    for (const auto& [s, db] : b.terms()) {
        BlockField& target = out.term(s);
        for (Word x = 0; x < n; ++x) {
            const auto src = db.at(x);
            const auto dst = target.at(x);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        }
    }
    return out;
}

ShiftOperator scale(Complex lambda, const ShiftOperator& a) {
    ShiftOperator out = a;
    const Word n = Word{1} << a.modes();
    for (const auto& [t, d] : a.terms()) {
        BlockField& target = out.term(t);
        for (Word x = 0; x < n; ++x) {
            for (Complex& z : target.at(x)) z *= lambda;
        }
    }
    return out;
}

ShiftOperator subtract(const ShiftOperator& a, const ShiftOperator& b) {
    return add(a, scale(-1.0, b));
}

ShiftOperator adjoint(const ShiftOperator& a, const OccupationMeasure& mu) {
    if (mu.modes() != a.modes()) throw DimensionError("measure and operator mode counts differ");
    const int nu = a.multiplicity();
    const Word n = Word{1} << a.modes();
    ShiftOperator out(a.modes(), nu);
    for (const auto& [t, d] : a.terms()) {
        BlockField& target = out.term(t);
        for (Word x = 0; x < n; ++x) {
            if (!mu.in_support(x)) continue;
            const double ratio = rn_ratio(mu, x, t);
            if (ratio == 0.0) continue;
            const auto dst = target.at(x);
            block::adjoint(d.at(x ^ t), dst, nu);
            for (Complex& z : dst) z *= ratio;
        }
    }
    return out;
}

VectorField apply(const ShiftOperator& a, const VectorField& f) {
    if (f.modes() != a.modes() || f.multiplicity() != a.multiplicity()) {
        throw DimensionError("vector field shape does not match operator");
    }
    const int nu = a.multiplicity();
    const auto un = static_cast<std::size_t>(nu);
    const Word n = Word{1} << a.modes();
    VectorField out(a.modes(), nu);
    for (const auto& [t, d] : a.terms()) {
        for (Word x = 0; x < n; ++x) {
            const auto dx = d.at(x);
            const auto src = f.at(x ^ t);
            const auto dst = out.at(x);
            for (std::size_t i = 0; i < un; ++i) {
                for (std::size_t j = 0; j < un; ++j) dst[i] += dx[i * un + j] * src[j];
            }
        }
    }
    return out;
}

double residual_norm(const ShiftOperator& a) {
    double r = 0.0;
    for (const auto& [t, d] : a.terms()) r = std::max(r, block::max_abs(d.values()));
    return r;
}

Complex trace(const ShiftOperator& a) {
    const BlockField* d0 = a.find(0);
    if (d0 == nullptr) return {};
    const auto un = static_cast<std::size_t>(a.multiplicity());
    Complex acc{};
    for (Word x = 0; x < d0->configurations(); ++x) {
        const auto b = d0->at(x);
        for (std::size_t i = 0; i < un; ++i) acc += b[i * un + i];
    }
    return acc;
}

Eigen::MatrixXcd dense(const ShiftOperator& a, std::size_t cap) {
    const auto un = static_cast<std::size_t>(a.multiplicity());
    const std::size_t n = std::size_t{1} << a.modes();
    const std::size_t dim = n * un;
    if (dim > cap) {
        throw CapacityError("dense matrix of size " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(cap));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto& [t, d] : a.terms()) {
        for (std::size_t x = 0; x < n; ++x) {
            const auto b = d.at(static_cast<Word>(x));
            const std::size_t col = x ^ t;
            for (std::size_t i = 0; i < un; ++i) {
                for (std::size_t j = 0; j < un; ++j) {
                    m(static_cast<Eigen::Index>(x * un + i), static_cast<Eigen::Index>(col * un + j)) +=
                        b[i * un + j];
                }
            }
        }
    }
    return m;
}

Eigen::VectorXcd dense(const VectorField& f) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(f.values().size()));
    for (std::size_t i = 0; i < f.values().size(); ++i) v(static_cast<Eigen::Index>(i)) = f.values()[i];
    return v;
}

}  // namespace carforge
