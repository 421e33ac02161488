// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/block.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "carforge/error.hpp"

namespace carforge {

namespace block {

void mul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out, int nu) {
    if (nu == 1) {
        out[0] = a[0] * b[0];
        return;
    }
    std::fill(out.begin(), out.end(), Complex{});
    mul_add(a, b, out, nu);
}

void mul_add(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out,
             int nu) {
    if (nu == 1) {
        out[0] += a[0] * b[0];
        return;
    }
    const auto n = static_cast<std::size_t>(nu);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
            const Complex ail = a[i * n + l];
            if (ail == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += ail * b[l * n + j];
        }
    }
}

void adjoint(std::span<const Complex> a, std::span<Complex> out, int nu) {
    const auto n = static_cast<std::size_t>(nu);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[j * n + i] = std::conj(a[i * n + j]);
    }
}

void conjugate(std::span<const Complex> a, std::span<Complex> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]);
}

void set_identity(std::span<Complex> out, int nu) {
    std::fill(out.begin(), out.end(), Complex{});
    const auto n = static_cast<std::size_t>(nu);
    for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1.0;
}

double max_abs(std::span<const Complex> a) {
    double r = 0.0;
    for (const Complex& z : a) r = std::max(r, std::abs(z));
    return r;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

double unitarity_defect(std::span<const Complex> a, int nu) {
    const auto n = static_cast<std::size_t>(nu);
    std::vector<Complex> adj(n * n);
    std::vector<Complex> prod(n * n);
    adjoint(a, adj, nu);
    mul(adj, a, prod, nu);
    return identity_defect(prod, nu);
}

double identity_defect(std::span<const Complex> a, int nu) {
    const auto n = static_cast<std::size_t>(nu);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex expected = i == j ? Complex{1.0} : Complex{};
            r = std::max(r, std::abs(a[i * n + j] - expected));
        }
    }
    return r;
}

}  // namespace block

BlockField::BlockField(int modes, int nu)
    : modes_(modes), nu_(nu), values_((std::size_t{1} << modes) * block_size()) {
    if (nu < 1) throw RangeError("multiplicity must be positive, got " + std::to_string(nu));
}

BlockField::BlockField(int modes, int nu, std::vector<Complex> values)
    : modes_(modes), nu_(nu), values_(std::move(values)) {
    if (nu < 1) throw RangeError("multiplicity must be positive, got " + std::to_string(nu));
    if (values_.size() != configurations() * block_size()) {
        throw DimensionError("block field needs " + std::to_string(configurations() * block_size()) +
                             " entries, got " + std::to_string(values_.size()));
    }
}

BlockField BlockField::identity(int modes, int nu) {
    BlockField f(modes, nu);
    for (Word x = 0; x < f.configurations(); ++x) block::set_identity(f.at(x), nu);
    return f;
}

double BlockField::unitarity_defect() const {
    double r = 0.0;
    for (Word x = 0; x < configurations(); ++x) r = std::max(r, block::unitarity_defect(at(x), nu_));
    return r;
}

BlockField pointwise_adjoint(const BlockField& u) {
    BlockField out(u.modes(), u.multiplicity());
    for (Word x = 0; x < u.configurations(); ++x) block::adjoint(u.at(x), out.at(x), u.multiplicity());
    return out;
}

}  // namespace carforge
