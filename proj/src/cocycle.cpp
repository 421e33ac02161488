// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "carforge/error.hpp"

namespace carforge {

CocycleFamily::CocycleFamily(std::vector<BlockField> fields, std::string label)
    : modes_(static_cast<int>(fields.size())),
      nu_(fields.empty() ? 0 : fields.front().multiplicity()),
      fields_(std::move(fields)),
      label_(std::move(label)) {
    if (fields_.empty()) throw RangeError("cocycle family needs at least one mode");
    for (const BlockField& f : fields_) {
        if (f.modes() != modes_ || f.multiplicity() != nu_) {
            throw DimensionError("cocycle fields must all live on X_" + std::to_string(modes_) +
                                 " with multiplicity " + std::to_string(nu_));
        }
    }
}

double CocycleReport::max_residual() const {
    return std::max({adjoint_residual, commutation_residual, unitarity_residual});
}

CocycleReport check_conditions(const CocycleFamily& c) {
    const int m = c.modes();
    const int nu = c.multiplicity();
    const std::size_t bs = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu);
    const Word n = Word{1} << m;
    std::vector<Complex> lhs(bs);
    std::vector<Complex> rhs(bs);
    CocycleReport r;
    for (int k = 1; k <= m; ++k) {
        const Word dk = bits::mode_bit(k);
        r.unitarity_residual = std::max(r.unitarity_residual, c.field(k).unitarity_defect());
        for (Word x = 0; x < n; ++x) {
            block::adjoint(c.at(k, x), lhs, nu);
            const double a = block::max_abs_diff(lhs, c.at(k, x ^ dk));
            if (a > r.adjoint_residual) {
                r.adjoint_residual = a;
                r.adjoint_k = k;
                r.adjoint_x = x;
            }
            for (int l = 1; l <= m; ++l) {
                if (l == k) continue;
                const Word dl = bits::mode_bit(l);
                block::mul(c.at(k, x), c.at(l, x ^ dk), lhs, nu);
                block::mul(c.at(l, x), c.at(k, x ^ dl), rhs, nu);
                const double d = block::max_abs_diff(lhs, rhs);
                if (d > r.commutation_residual) {
                    r.commutation_residual = d;
                    r.commutation_k = k;
                    r.commutation_l = l;
                    r.commutation_x = x;
                }
            }
        }
    }
    return r;
}

CocycleFamily trivial(int m, int nu) {
    require_modes(m);
    std::vector<BlockField> fields;
    fields.reserve(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) fields.push_back(BlockField::identity(m, nu));
    return {std::move(fields), "trivial"};
}

CocycleFamily gw311(int m, int nu) {
    require_modes(m);
    if (m % 4 != 0) {
        // Name the first odd mode whose partner 4l+3 / 4l+1 is cut off, if any.
        std::string detail;
        for (int k = 1; k <= m; k += 2) {
            const int partner = (k % 4 == 1) ? k + 2 : k - 2;
            if (partner > m) {
                detail = "mode " + std::to_string(k) + " references missing mode " +
                         std::to_string(partner);
                break;
            }
        }
        if (detail.empty()) {
            detail = "block " + std::to_string(m - m % 4 + 1) + ".." +
                     std::to_string(m - m % 4 + 4) + " is truncated";
        }
        throw TruncationError("gw311 needs m divisible by 4, got m = " + std::to_string(m) + ": " +
                              detail);
    }
    std::vector<BlockField> fields;
    fields.reserve(static_cast<std::size_t>(m));
    const Word n = Word{1} << m;
    for (int k = 1; k <= m; ++k) {
        BlockField f(m, nu);
        for (Word x = 0; x < n; ++x) {
            double sign = 1.0;
            if (k % 4 == 1) sign = bits::occupation(x, k + 2) != 0 ? -1.0 : 1.0;
            if (k % 4 == 3) sign = bits::occupation(x, k - 2) != 0 ? -1.0 : 1.0;
            block::set_identity(f.at(x), nu);
            for (Complex& z : f.at(x)) z *= sign;
        }
        fields.push_back(std::move(f));
    }
    return {std::move(fields), "gw311"};
}

CompatibilityReport real_compatible(const CocycleFamily& c, double tolerance) {
    const int m = c.modes();
    const Word n = Word{1} << m;
    const Word ones = bits::all_ones(m);
    CompatibilityReport r;
    for (int k = 1; k <= m; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (Word x = 0; x < n; ++x) {
            const auto reflected = c.at(k, x ^ ones);
            const auto direct = c.at(k, x);
            for (std::size_t i = 0; i < direct.size(); ++i) {
                const double d = std::abs(std::conj(reflected[i]) - sign * direct[i]);
                if (d > r.residual) {
                    r.residual = d;
                    r.k = k;
                    r.x = x;
                }
            }
        }
    }
    r.compatible = r.residual <= tolerance;
    return r;
}

CocycleFamily gauge(const CocycleFamily& c, const BlockField& u, double tolerance) {
    if (u.modes() != c.modes() || u.multiplicity() != c.multiplicity()) {
        throw DimensionError("gauge field shape does not match cocycle family");
    }
    const double defect = u.unitarity_defect();
    if (defect > tolerance) {
        throw ValidationError("gauge field is not unitary (defect " + std::to_string(defect) + ")");
    }
    const int m = c.modes();
    const int nu = c.multiplicity();
    const Word n = Word{1} << m;
    std::vector<Complex> adj(u.block_size());
    std::vector<Complex> tmp(u.block_size());
    std::vector<BlockField> fields;
    fields.reserve(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
        const Word dk = bits::mode_bit(k);
        BlockField f(m, nu);
        for (Word x = 0; x < n; ++x) {
            block::adjoint(u.at(x), adj, nu);
            block::mul(adj, c.at(k, x), tmp, nu);
            block::mul(tmp, u.at(x ^ dk), f.at(x), nu);
        }
        fields.push_back(std::move(f));
    }
    return {std::move(fields), "gauged(" + c.label() + ")"};
}

BlockField random_phase_gauge(int m, int nu, std::uint64_t seed, bool real_symmetric) {
    require_modes(m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const Word n = Word{1} << m;
    const Word ones = bits::all_ones(m);
    std::vector<double> theta(n);
    for (Word x = 0; x < n; ++x) {
        if (real_symmetric && (x ^ ones) < x) {
            theta[x] = -theta[x ^ ones];
        } else {
            theta[x] = angle(rng);
        }
    }
    BlockField u(m, nu);
    for (Word x = 0; x < n; ++x) {
        block::set_identity(u.at(x), nu);
        const Complex phase = std::polar(1.0, theta[x]);
        for (Complex& z : u.at(x)) z *= phase;
    }
    return u;
}

}  // namespace carforge
