// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "carforge/error.hpp"
#include "carforge/measure.hpp"

using namespace carforge;
using Catch::Approx;

namespace {

Word w(const char* s) { return Configuration::parse(s).bits(); }

OccupationMeasure random_product(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> p(0.05, 0.95);
    std::vector<double> probs(static_cast<std::size_t>(m));
    for (double& v : probs) v = p(rng);
    return OccupationMeasure::product(probs);
}

}  // namespace

TEST_CASE("Radon-Nikodym ratios", "[measure]") {
    const auto uniform = OccupationMeasure::uniform(3);
    for (Word x = 0; x < 8; ++x) {
        for (Word t = 0; t < 8; ++t) CHECK(rn_ratio(uniform, x, t) == 1.0);
    }
    const auto product = OccupationMeasure::product({1.0 / 3.0, 0.5});
    CHECK(rn_ratio(product, w("00"), w("10")) == Approx(0.5).margin(1e-15));
    const auto frozen = OccupationMeasure::frozen_tail(3, 2);
    CHECK(rn_ratio(frozen, w("100"), w("001")) == 0.0);
    CHECK_THROWS_AS(rn_ratio(frozen, w("001"), w("100")), SupportError);
    CHECK(rn_ratio(frozen, Configuration::parse("100"), Configuration::parse("010")) == 1.0);
}

TEST_CASE("product weights follow the product formula", "[measure]") {
    const std::vector<double> p = {0.2, 0.7, 0.4};
    const auto mu = OccupationMeasure::product(p);
    for (Word x = 0; x < 8; ++x) {
        double expected = 1.0;
        for (int k = 1; k <= 3; ++k) expected *= bits::occupation(x, k) ? p[k - 1] : 1.0 - p[k - 1];
        CHECK(mu.weight(x) == Approx(expected).epsilon(1e-15));
    }
    CHECK(mu.full_support());
    CHECK(mu.total_mass() == Approx(1.0));
    CHECK_THROWS(OccupationMeasure::product({0.5, 1.0}));
    CHECK_THROWS(OccupationMeasure::product({0.0}));
}

TEST_CASE("frozen tail weights", "[measure]") {
    const auto mu = OccupationMeasure::frozen_tail(4, 2);
    for (Word x = 0; x < 16; ++x) {
        const bool tail_empty = (x & 0b1100u) == 0;
        CHECK(mu.weight(x) == (tail_empty ? 1.0 : 0.0));
    }
    CHECK(mu.support().size() == 4);
    CHECK(mu.total_mass() == 4.0);
    CHECK_FALSE(mu.full_support());
    CHECK(mu.frozen_active() == 2);
}

TEST_CASE("explicit weights are validated", "[measure]") {
    CHECK_THROWS(OccupationMeasure::explicit_weights(2, {1.0, 1.0, 1.0}));
    CHECK_THROWS(OccupationMeasure::explicit_weights(2, {1.0, -1.0, 1.0, 1.0}));
    CHECK_THROWS(OccupationMeasure::explicit_weights(2, {0.0, 0.0, 0.0, 0.0}));
    const auto mu = OccupationMeasure::explicit_weights(2, {1.0, 0.0, 0.0, 2.0});
    CHECK(mu.support() == std::vector<Word>{0, 3});
}

TEST_CASE("reflection", "[measure]") {
    CHECK(reflect(OccupationMeasure::uniform(3)).kind() == MeasureKind::uniform);
    const auto product = OccupationMeasure::product({0.2, 0.9});
    const auto reflected = reflect(product);
    REQUIRE(reflected.kind() == MeasureKind::product);
    CHECK(reflected.probabilities()[0] == Approx(0.8));
    CHECK(reflected.probabilities()[1] == Approx(0.1));
    for (Word x = 0; x < 4; ++x) CHECK(reflected.weight(x) == Approx(product.weight(x ^ 3u)));

    const auto frozen = reflect(OccupationMeasure::frozen_tail(3, 2));
    for (Word x = 0; x < 8; ++x) CHECK(frozen.in_support(x) == (bits::occupation(x, 3) == 1));
}

TEST_CASE("equivalence is equality of supports", "[measure]") {
    const auto uniform = OccupationMeasure::uniform(3);
    CHECK(equivalent(uniform, OccupationMeasure::product({0.3, 0.5, 0.6})));
    CHECK(equivalent(uniform, uniform));
    const auto frozen = OccupationMeasure::frozen_tail(3, 2);
    CHECK_FALSE(equivalent(frozen, reflect(frozen)));
    CHECK(support_difference(frozen, reflect(frozen)).size() == 8);
    CHECK(support_difference(uniform, uniform).empty());
}

TEST_CASE("quasi-invariance under active generators", "[measure]") {
    const std::vector<int> all = {1, 2, 3, 4};
    const std::vector<int> head = {1, 2};
    CHECK(quasi_invariant(OccupationMeasure::uniform(4), all));
    CHECK(quasi_invariant(OccupationMeasure::frozen_tail(4, 2), head));
    CHECK_FALSE(quasi_invariant(OccupationMeasure::frozen_tail(4, 2), all));
    const std::vector<int> bad = {5};
    CHECK_THROWS(quasi_invariant(OccupationMeasure::uniform(4), bad));
}

TEST_CASE("ratio cocycle identity", "[measure][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = std::uniform_int_distribution<int>(1, 6)(rng);
        const auto mu = random_product(m, rng);
        std::uniform_int_distribution<Word> word(0, bits::all_ones(m));
        const Word x = word(rng);
        const Word t = word(rng);
        CHECK(rn_ratio(mu, x, t) * rn_ratio(mu, x ^ t, t) == Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("reflection weight identities", "[measure][property]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = std::uniform_int_distribution<int>(1, 6)(rng);
        const auto mu = random_product(m, rng);
        const auto tilde = reflect(mu);
        const Word ones = bits::all_ones(m);
        for (Word x = 0; x <= ones; ++x) {
            CHECK(tilde.weight(x) * tilde.weight(x ^ ones) ==
                  Approx(mu.weight(x) * mu.weight(x ^ ones)).epsilon(1e-13));
            const double wx = tilde.weight(x) / mu.weight(x);
            const double wc = tilde.weight(x ^ ones) / mu.weight(x ^ ones);
            CHECK(wx * wc == Approx(1.0).epsilon(1e-13));
        }
        const auto twice = reflect(tilde);
        for (Word x = 0; x <= ones; ++x) CHECK(twice.weight(x) == Approx(mu.weight(x)).epsilon(1e-15));
    }
    const auto frozen = OccupationMeasure::frozen_tail(4, 3);
    const auto back = reflect(reflect(frozen));
    for (Word x = 0; x < 16; ++x) CHECK(back.weight(x) == frozen.weight(x));
}
