// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "carforge/error.hpp"
#include "carforge/shift_operator.hpp"

using namespace carforge;

namespace {

ShiftOperator random_operator(int m, int nu, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<Word> shift(0, bits::all_ones(m));
    ShiftOperator a(m, nu);
    const int terms = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < terms; ++i) {
        BlockField& d = a.term(shift(rng));
        for (Word x = 0; x < d.configurations(); ++x) {
            for (Complex& z : d.at(x)) z = {gauss(rng), gauss(rng)};
        }
    }
    return a;
}

OccupationMeasure random_product(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> p(0.3, 0.7);
    std::vector<double> probs(static_cast<std::size_t>(m));
    for (double& v : probs) v = p(rng);
    return OccupationMeasure::product(probs);
}

/// Weighted adjoint computed from the dense matrix: W^{-1} A^H W.
Eigen::MatrixXcd dense_adjoint(const Eigen::MatrixXcd& a, const OccupationMeasure& mu, int nu) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double wr = mu.weight(static_cast<Word>(r / nu));
            const double wc = mu.weight(static_cast<Word>(c / nu));
            out(r, c) = std::conj(a(c, r)) * wc / wr;
        }
    }
    return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("dense layout", "[shift]") {
    CHECK(dense(ShiftOperator::identity(3, 2)).isIdentity(0.0));
    // Single term t = delta_1 with D(x) = x + 1 on m = 1: block (x, x + t) = D(x).
    BlockField d(1, 1);
    d.at(0)[0] = 1.0;
    d.at(1)[0] = 2.0;
    const Eigen::MatrixXcd m = dense(ShiftOperator::single(1, d));
    CHECK(m(0, 1) == Complex(1.0, 0.0));
    CHECK(m(1, 0) == Complex(2.0, 0.0));
    CHECK(m(0, 0) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(dense(ShiftOperator::identity(11, 1)), CapacityError);
}

TEST_CASE("algebra identities", "[shift]") {
    std::mt19937_64 rng(1);
    const auto mu = OccupationMeasure::uniform(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ShiftOperator a = random_operator(3, 2, rng);
        CHECK(residual_norm(subtract(compose(a, ShiftOperator::identity(3, 2)), a)) == 0.0);
        CHECK(residual_norm(subtract(compose(ShiftOperator::identity(3, 2), a), a)) == 0.0);
        CHECK(residual_norm(subtract(adjoint(adjoint(a, mu), mu), a)) == 0.0);
        CHECK(residual_norm(subtract(add(a, a), scale(2.0, a))) == 0.0);
    }
    CHECK_THROWS_AS(compose(ShiftOperator(2, 1), ShiftOperator(3, 1)), DimensionError);
    CHECK_THROWS_AS(add(ShiftOperator(2, 1), ShiftOperator(2, 2)), DimensionError);
}

TEST_CASE("adjoint satisfies the weighted inner product law", "[shift][property]") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = std::uniform_int_distribution<int>(1, 4)(rng);
        const int nu = std::uniform_int_distribution<int>(1, 2)(rng);
        const auto mu = trial % 2 == 0 ? OccupationMeasure::uniform(m) : random_product(m, rng);
        const ShiftOperator a = random_operator(m, nu, rng);
        const VectorField f = VectorField::random(m, nu, rng);
        const VectorField g = VectorField::random(m, nu, rng);
        const Complex lhs = inner(apply(a, f), g, mu);
        const Complex rhs = inner(f, apply(adjoint(a, mu), g), mu);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("shift algebra agrees with dense matrices", "[shift][property]") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = std::uniform_int_distribution<int>(1, 4)(rng);
        const int nu = std::uniform_int_distribution<int>(1, 2)(rng);
        const auto mu = random_product(m, rng);
        const ShiftOperator a = random_operator(m, nu, rng);
        const ShiftOperator b = random_operator(m, nu, rng);
        const VectorField f = VectorField::random(m, nu, rng);
        const Eigen::MatrixXcd da = dense(a);
        const Eigen::MatrixXcd db = dense(b);
        CHECK(max_abs(dense(compose(a, b)) - da * db) <= 1e-13);
        CHECK(max_abs(dense(add(a, b)) - (da + db)) <= 1e-13);
        CHECK(max_abs(dense(scale({0.5, -2.0}, a)) - Complex(0.5, -2.0) * da) <= 1e-13);
        CHECK(max_abs(dense(adjoint(a, mu)) - dense_adjoint(da, mu, nu)) <= 1e-13);
        CHECK(max_abs(dense(apply(a, f)) - da * dense(f)) <= 1e-13);
        CHECK(std::abs(trace(a) - da.trace()) <= 1e-13);
    }
}

TEST_CASE("adjoint vanishes off the support", "[shift]") {
    const auto mu = OccupationMeasure::frozen_tail(2, 1);
    std::mt19937_64 rng(4);
    const ShiftOperator a = random_operator(2, 1, rng);
    const ShiftOperator s = adjoint(a, mu);
    for (const auto& [t, d] : s.terms()) {
        for (Word x = 0; x < 4; ++x) {
            if (!mu.in_support(x) || !mu.in_support(x ^ t)) CHECK(d.at(x)[0] == Complex{});
        }
    }
}

TEST_CASE("vector field inner product", "[shift]") {
    std::mt19937_64 rng(5);
    const auto mu = OccupationMeasure::product({0.25, 0.5});
    const VectorField f = VectorField::random(2, 2, rng);
    CHECK(norm(f, mu) > 0.0);
    CHECK(norm(VectorField(2, 2), mu) == 0.0);
    const VectorField e = VectorField::basis(2, 2, 3, 1);
    CHECK(inner(e, e, mu).real() == Catch::Approx(mu.weight(3)));
    CHECK(inner(f, e, mu) == std::conj(inner(e, f, mu)));
}
