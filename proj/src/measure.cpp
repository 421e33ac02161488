// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/measure.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "carforge/error.hpp"

namespace carforge {

std::string to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::uniform: return "uniform";
        case MeasureKind::product: return "product";
        case MeasureKind::explicit_table: return "explicit";
        case MeasureKind::frozen_tail: return "frozen_tail";
    }
    return "unknown";
}

OccupationMeasure::OccupationMeasure(int m, MeasureKind kind, std::vector<double> weights)
    : modes_(m), kind_(kind), weights_(std::move(weights)) {
    if (total_mass() <= 0.0) throw ValidationError("measure has zero total mass");
}

OccupationMeasure OccupationMeasure::uniform(int m) {
    require_modes(m);
    return {m, MeasureKind::uniform, std::vector<double>(std::size_t{1} << m, 1.0)};
}

OccupationMeasure OccupationMeasure::product(std::vector<double> p) {
    const int m = static_cast<int>(p.size());
    require_modes(m);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!(p[k] > 0.0 && p[k] < 1.0)) {
            throw ValidationError("product measure needs 0 < p_" + std::to_string(k + 1) +
                                  " < 1, got " + std::to_string(p[k]));
        }
    }
    const std::size_t n = std::size_t{1} << m;
    std::vector<double> w(n, 1.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (int k = 1; k <= m; ++k) {
            const double pk = p[static_cast<std::size_t>(k - 1)];
            w[x] *= bits::occupation(static_cast<Word>(x), k) != 0 ? pk : 1.0 - pk;
        }
    }
    OccupationMeasure mu{m, MeasureKind::product, std::move(w)};
    mu.p_ = std::move(p);
    return mu;
}

OccupationMeasure OccupationMeasure::explicit_weights(int m, std::vector<double> weights) {
    require_modes(m);
    if (weights.size() != (std::size_t{1} << m)) {
        throw DimensionError("explicit measure needs 2^" + std::to_string(m) + " weights, got " +
                             std::to_string(weights.size()));
    }
    for (std::size_t x = 0; x < weights.size(); ++x) {
        if (!std::isfinite(weights[x]) || weights[x] < 0.0) {
            throw ValidationError("weight of " + to_bitstring(static_cast<Word>(x), m) +
                                  " must be finite and nonnegative");
        }
    }
    return {m, MeasureKind::explicit_table, std::move(weights)};
}

OccupationMeasure OccupationMeasure::frozen_tail(int m, int active) {
    require_modes(m);
    if (active < 1 || active > m) {
        throw RangeError("frozen_tail active count " + std::to_string(active) + " outside 1.." +
                         std::to_string(m));
    }
    const std::size_t n = std::size_t{1} << m;
    const Word tail = bits::all_ones(m) & ~bits::all_ones(active);
    std::vector<double> w(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        if ((static_cast<Word>(x) & tail) == 0) w[x] = 1.0;
    }
    OccupationMeasure mu{m, MeasureKind::frozen_tail, std::move(w)};
    mu.frozen_active_ = active;
    return mu;
}

double OccupationMeasure::weight(const Configuration& x) const {
    if (x.modes() != modes_) throw DimensionError("configuration length does not match measure");
    return weights_[x.index()];
}

double OccupationMeasure::total_mass() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool OccupationMeasure::full_support() const {
    for (double w : weights_) {
        if (!(w > 0.0)) return false;
    }
    return true;
}

std::vector<Word> OccupationMeasure::support() const {
    std::vector<Word> out;
    for (std::size_t x = 0; x < weights_.size(); ++x) {
        if (weights_[x] > 0.0) out.push_back(static_cast<Word>(x));
    }
    return out;
}

double rn_ratio(const OccupationMeasure& mu, Word x, Word t) {
    if (!mu.in_support(x)) {
        throw SupportError("Radon-Nikodym ratio evaluated at null configuration " +
                           to_bitstring(x, mu.modes()));
    }
    return mu.weight(x ^ t) / mu.weight(x);
}

double rn_ratio(const OccupationMeasure& mu, const Configuration& x, const Shift& t) {
    if (x.modes() != mu.modes() || t.modes() != mu.modes()) {
        throw DimensionError("rn_ratio operands have mismatched mode counts");
    }
    return rn_ratio(mu, x.bits(), t.bits());
}

OccupationMeasure reflect(const OccupationMeasure& mu) {
    const int m = mu.modes();
    switch (mu.kind()) {
        case MeasureKind::uniform:
            return OccupationMeasure::uniform(m);
        case MeasureKind::product: {
            std::vector<double> q = mu.probabilities();
            for (double& pk : q) pk = 1.0 - pk;
            return OccupationMeasure::product(std::move(q));
        }
        default:
            break;
    }
    const Word ones = bits::all_ones(m);
    std::vector<double> w(mu.size());
    for (std::size_t x = 0; x < w.size(); ++x) w[x] = mu.weight(static_cast<Word>(x) ^ ones);
    return OccupationMeasure::explicit_weights(m, std::move(w));
}

std::vector<Word> support_difference(const OccupationMeasure& a, const OccupationMeasure& b) {
    if (a.modes() != b.modes()) throw DimensionError("measures live on different mode counts");
    std::vector<Word> out;
    for (std::size_t x = 0; x < a.size(); ++x) {
        const auto w = static_cast<Word>(x);
        if (a.in_support(w) != b.in_support(w)) out.push_back(w);
    }
    return out;
}

bool equivalent(const OccupationMeasure& a, const OccupationMeasure& b) {
    return support_difference(a, b).empty();
}

bool quasi_invariant(const OccupationMeasure& mu, std::span<const int> active) {
    for (int k : active) {
        if (k < 1 || k > mu.modes()) {
            throw RangeError("active mode " + std::to_string(k) + " outside 1.." +
                             std::to_string(mu.modes()));
        }
        const Word d = bits::mode_bit(k);
        for (std::size_t x = 0; x < mu.size(); ++x) {
            const auto w = static_cast<Word>(x);
            if (mu.in_support(w) != mu.in_support(w ^ d)) return false;
        }
    }
    return true;
}

}  // namespace carforge
