// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "carforge/analysis.hpp"
#include "carforge/error.hpp"

namespace carforge {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail.str("");
            detail << "failed: " << what;
        }
    }
};

OccupationMeasure random_product(int m, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> p(static_cast<std::size_t>(m));
    for (double& v : p) v = dist(rng);
    return OccupationMeasure::product(std::move(p));
}

std::vector<double> random_unit(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<double> z(n);
    double len = 0.0;
    for (double& v : z) {
        v = gauss(rng);
        len += v * v;
    }
    len = std::sqrt(len);
    for (double& v : z) v /= len;
    return z;
}

void car_exactness(Outcome& out, std::uint64_t seed) {
    double worst_exact = 0.0;
    for (int m = 1; m <= 8; ++m) {
        worst_exact = std::max(worst_exact,
                               verify_car(Triple(OccupationMeasure::uniform(m), trivial(m))).max_residual);
        if (m % 4 == 0) {
            worst_exact = std::max(worst_exact,
                                   verify_car(Triple(OccupationMeasure::uniform(m), gw311(m))).max_residual);
        }
    }
    out.require(worst_exact == 0.0, "uniform measure CAR residual " + std::to_string(worst_exact));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> modes(1, 5);
    double worst_product = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int m = modes(rng);
        const OccupationMeasure mu = random_product(m, rng, 0.05, 0.95);
        worst_product = std::max(worst_product, verify_car(Triple(mu, trivial(m))).max_residual);
        if (m == 4) worst_product = std::max(worst_product, verify_car(Triple(mu, gw311(m))).max_residual);
    }
    out.require(worst_product <= 1e-12, "product measure CAR residual " + std::to_string(worst_product));
    if (out.pass) {
        out.detail << "uniform max residual " << worst_exact << ", 50 product measures max residual "
                   << worst_product;
    }
}

void cartan_table(Outcome& out) {
    std::string verdicts;
    std::string phases;
    for (int m = 1; m <= 8; ++m) {
        const CartanRow row = cartan_phase(m);
        const int expected = (m * (m + 1) / 2) % 2 == 0 ? 1 : -1;
        const bool expected_split = m % 4 == 0 || m % 4 == 3;
        out.require(row.holonomy == Complex(expected, 0.0),
                    "m=" + std::to_string(m) + " holonomy not exactly " + std::to_string(expected));
        out.require(row.split == expected_split, "m=" + std::to_string(m) + " verdict");
        out.require(row.agree && row.predicted == expected, "m=" + std::to_string(m) + " closed form");
        verdicts += row.split ? 'Y' : 'N';
        phases += row.holonomy.real() > 0 ? '+' : '-';
    }
    if (out.pass) out.detail << "verdicts " << verdicts << ", holonomy signs " << phases;
}

void gw311_suite(Outcome& out) {
    for (int m : {4, 8}) {
        const std::string tag = "m=" + std::to_string(m) + ": ";
        const CocycleFamily c = gw311(m);
        out.require(check_conditions(c).max_residual() == 0.0, tag + "cocycle conditions not exact");
        out.require(real_compatible(c).compatible, tag + "not real compatible");
        const Triple t(OccupationMeasure::uniform(m), c);
        const SolveResult r = solve(t);
        out.require(r.split(), tag + "solver found no real structure");
        if (!r.split()) return;
        const RealStructureReport v = verify(*r.structure, t);
        out.require(v.max_residual() == 0.0, tag + "verify residual " + std::to_string(v.max_residual()));
        out.require(commutant_dim_complex(t) == 1, tag + "complex commutant dimension");
        const ComplexStructureResult cs = complex_structure_search(t, *r.structure);
        out.require(!cs.exists && cs.commutant_dim == 1, tag + "complex structure search");
    }
    if (out.pass) out.detail << "m=4,8: exact conditions, split, commutant 1, real commutant R";
}

void frozen_tail_emulation(Outcome& out) {
    const Triple frozen(OccupationMeasure::frozen_tail(3, 2), trivial(3), {1, 2});
    const SolveResult a = solve(frozen);
    out.require(a.obstruction && std::holds_alternative<MeasureNotEquivalent>(*a.obstruction),
                "frozen tail did not report MeasureNotEquivalent");
    const Triple full(OccupationMeasure::uniform(3), trivial(3));
    out.require(solve(full).split(), "all-active m=3 triple did not split");
    if (out.pass) out.detail << "active {1,2}: MeasureNotEquivalent; active {1,2,3}: split";
}

void number_law(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> modes(1, 6);
    std::uniform_int_distribution<int> nus(1, 2);
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const int m = modes(rng);
        const int nu = nus(rng);
        const OccupationMeasure mu = i % 2 == 0 ? OccupationMeasure::uniform(m) : random_product(m, rng, 0.1, 0.9);
        const Triple t(mu, trivial(m, nu));
        const int k = std::uniform_int_distribution<int>(1, m)(rng);
        const VectorField f = VectorField::random(m, nu, rng);
        const VectorField g = apply(number_ops(t, k).first, f);
        for (Word x = 0; x < mu.size(); ++x) {
            for (int j = 0; j < nu; ++j) {
                const Complex want = bits::occupation(x, k) != 0 ? f.at(x)[static_cast<std::size_t>(j)] : 0.0;
                if (g.at(x)[static_cast<std::size_t>(j)] != want) ++mismatches;
            }
        }
    }
    out.require(mismatches == 0, std::to_string(mismatches) + " entries differ from x_k f(x)");
    if (out.pass) out.detail << "100 random fields, every entry exact";
}

void clifford_relation(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Triple> triples;
    for (int m = 1; m <= 6; ++m) triples.emplace_back(OccupationMeasure::uniform(m), trivial(m));
    for (int m = 2; m <= 6; m += 2) triples.emplace_back(random_product(m, rng, 0.1, 0.9), trivial(m, 2));
    triples.emplace_back(OccupationMeasure::uniform(4), gw311(4));
    triples.emplace_back(random_product(4, rng, 0.1, 0.9),
                         gauge(gw311(4), random_phase_gauge(4, 1, seed, false)));
    double worst = 0.0;
    for (const Triple& t : triples) {
        const std::size_t n = 2 * t.active().size();
        for (int i = 0; i < 100; ++i) {
            const std::vector<double> z = random_unit(n, rng);
            const std::vector<double> w = random_unit(n, rng);
            double dot = 0.0;
            for (std::size_t q = 0; q < n; ++q) dot += z[q] * w[q];
            const ShiftOperator jz = j_general(t, z);
            const ShiftOperator jw = j_general(t, w);
            const ShiftOperator lhs =
                add(add(compose(jz, jw), compose(jw, jz)), scale(2.0 * dot, t.identity()));
            worst = std::max(worst, residual_norm(lhs));
        }
    }
    out.require(worst <= 1e-12, "Clifford residual " + std::to_string(worst));
    if (out.pass) out.detail << triples.size() << " triples x 100 pairs, max residual " << worst;
}

void gauge_round_trip(Outcome& out, std::uint64_t seed) {
    const CocycleFamily base = gw311(4);
    double worst_verify = 0.0;
    double worst_unitarity = 0.0;
    double worst_compat = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CocycleFamily c = gauge(base, random_phase_gauge(4, 1, seed + static_cast<std::uint64_t>(i), true));
        out.require(real_compatible(c).compatible, "gauge " + std::to_string(i) + " not real compatible");
        const Triple t(OccupationMeasure::uniform(4), c);
        const SolveResult r = solve(t);
        out.require(r.split(), "gauge " + std::to_string(i) + " did not split");
        if (!r.split()) return;
        worst_verify = std::max(worst_verify, verify(*r.structure, t).max_residual());
        const Standardized st = standardize(t, *r.structure);
        const CompatibilityReport compat = real_compatible(st.triple.cocycle());
        out.require(compat.compatible, "standardized family " + std::to_string(i) + " not real compatible");
        worst_compat = std::max(worst_compat, compat.residual);
        worst_unitarity = std::max(worst_unitarity, st.report.intertwiner_unitarity);
    }
    // Gauges without the reflection symmetry break real compatibility but not splitting.
    for (int i = 0; i < 20; ++i) {
        const CocycleFamily c = gauge(base, random_phase_gauge(4, 1, seed + 1000 + static_cast<std::uint64_t>(i), false));
        const Triple t(OccupationMeasure::uniform(4), c);
        const SolveResult r = solve(t);
        out.require(r.split(), "general gauge " + std::to_string(i) + " did not split");
        if (!r.split()) return;
        worst_verify = std::max(worst_verify, verify(*r.structure, t).max_residual());
        const Standardized st = standardize(t, *r.structure);
        out.require(real_compatible(st.triple.cocycle()).compatible,
                    "standardized general gauge " + std::to_string(i) + " not real compatible");
        worst_unitarity = std::max(worst_unitarity, st.report.intertwiner_unitarity);
    }
    out.require(worst_verify <= 1e-12, "verify residual " + std::to_string(worst_verify));
    out.require(worst_unitarity <= 1e-12, "intertwiner unitarity " + std::to_string(worst_unitarity));
    if (out.pass) {
        out.detail << "100 symmetric + 20 general gauges; verify " << worst_verify << ", unitarity "
                   << worst_unitarity << ", compatibility " << worst_compat;
    }
}

void obstruction_robustness(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int m : {1, 2, 5, 6}) {
        const Triple t(OccupationMeasure::uniform(m), trivial(m));
        const SolveResult base = solve(t);
        out.require(!base.split(), "m=" + std::to_string(m) + " split with identity seed");
        for (int i = 0; i < 20; ++i) {
            const Complex phase = std::polar(1.0, angle(rng));
            const SolveResult r = solve(t, std::span<const Complex>(&phase, 1));
            out.require(!r.split(), "m=" + std::to_string(m) + " split with a random seed");
            out.require(r.holonomy && std::abs(*r.holonomy - *base.holonomy) <= 1e-12,
                        "m=" + std::to_string(m) + " holonomy depends on the seed");
        }
    }
    if (out.pass) out.detail << "m=1,2,5,6: identity seed and 20 random phases all obstructed";
}

void frobenius_schur_check(Outcome& out) {
    const int expected[] = {-1, -1, 1, 1, -1, -1};
    std::string got;
    for (int m = 1; m <= 6; ++m) {
        const int fs = frobenius_schur(Triple(OccupationMeasure::uniform(m), trivial(m)));
        out.require(fs == expected[m - 1], "m=" + std::to_string(m) + " indicator " + std::to_string(fs));
        got += fs > 0 ? '+' : '-';
    }
    std::vector<Triple> builtins;
    for (int m = 1; m <= 8; ++m) builtins.emplace_back(OccupationMeasure::uniform(m), trivial(m));
    builtins.emplace_back(OccupationMeasure::uniform(4), gw311(4));
    builtins.emplace_back(OccupationMeasure::uniform(8), gw311(8));
    builtins.emplace_back(OccupationMeasure::product({0.2, 0.7, 0.4}), trivial(3));
    builtins.emplace_back(OccupationMeasure::product({0.3, 0.6, 0.5, 0.1, 0.8}), trivial(5));
    for (const Triple& t : builtins) {
        const int fs = frobenius_schur(t);
        const bool split = solve(t).split();
        out.require(fs == (split ? 1 : -1), t.cocycle().label() + " m=" + std::to_string(t.modes()) +
                                                ": indicator disagrees with split verdict");
    }
    if (out.pass) out.detail << "indicators m=1..6: " << got << "; " << builtins.size() << " built-ins agree";
}

ShiftOperator random_operator(int m, int nu, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<Word> shifts(0, bits::all_ones(m));
    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    ShiftOperator a(m, nu);
    for (int i = 0; i < count; ++i) {
        BlockField& d = a.term(shifts(rng));
        for (Word x = 0; x < d.configurations(); ++x) {
            for (Complex& z : d.at(x)) z = {gauss(rng), gauss(rng)};
        }
    }
    return a;
}

void dense_oracle(Outcome& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int m = std::uniform_int_distribution<int>(1, 4)(rng);
        const int nu = std::uniform_int_distribution<int>(1, 2)(rng);
        const OccupationMeasure mu = random_product(m, rng, 0.3, 0.7);
        const ShiftOperator a = random_operator(m, nu, rng);
        const ShiftOperator b = random_operator(m, nu, rng);
        const VectorField f = VectorField::random(m, nu, rng);
        const Eigen::MatrixXcd da = dense(a);
        const Eigen::MatrixXcd db = dense(b);
        worst = std::max(worst, (dense(compose(a, b)) - da * db).cwiseAbs().maxCoeff());
        Eigen::VectorXd w(da.rows());
        for (Eigen::Index r = 0; r < w.size(); ++r) w(r) = mu.weight(static_cast<Word>(r / nu));
        const Eigen::MatrixXcd oracle = w.cwiseInverse().asDiagonal() * da.adjoint() * w.asDiagonal();
        worst = std::max(worst, (dense(adjoint(a, mu)) - oracle).cwiseAbs().maxCoeff());
        worst = std::max(worst, (dense(apply(a, f)) - da * dense(f)).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(trace(a) - da.trace()));
    }
    out.require(worst <= 1e-13, "dense mismatch " + std::to_string(worst));
    if (out.pass) out.detail << "200 operators, max deviation " << worst;
}

struct Criterion {
    const char* title;
    double budget;
    std::function<void(Outcome&, std::uint64_t)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {"CAR exactness", 30.0, car_exactness},
        {"Cartan table", 10.0, [](Outcome& o, std::uint64_t) { cartan_table(o); }},
        {"gw311 suite at m=4,8", 120.0, [](Outcome& o, std::uint64_t) { gw311_suite(o); }},
        {"frozen-tail emulation", 1.0, [](Outcome& o, std::uint64_t) { frozen_tail_emulation(o); }},
        {"number-operator law", 0.0, number_law},
        {"Clifford relation", 0.0, clifford_relation},
        {"gauge round trip", 0.0, gauge_round_trip},
        {"obstruction robustness", 0.0, obstruction_robustness},
        {"Frobenius-Schur cross-check", 0.0, [](Outcome& o, std::uint64_t) { frobenius_schur_check(o); }},
        {"dense oracle equivalence", 0.0, dense_oracle},
    };
    return table;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > kCriterionCount) throw RangeError("criterion id must be in 1..10");
    const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
    CriterionResult result;
    result.id = id;
    result.title = c.title;
    result.budget_seconds = c.budget;
    Outcome out;
    const auto start = Clock::now();
    try {
        c.run(out, seed);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail.str("");
        out.detail << "exception: " << e.what();
    }
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.pass = out.pass;
    result.detail = out.detail.str();
    if (result.pass && c.budget > 0.0 && result.seconds > c.budget) {
        result.pass = false;
        result.detail = "exceeded runtime budget of " + std::to_string(c.budget) + " s; " + result.detail;
    }
    return result;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "%s  criterion %2d  %-28s (%.3f s", r.pass ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), r.seconds);
    std::string line = head;
    if (r.budget_seconds > 0.0) {
        char budget[32];
        std::snprintf(budget, sizeof budget, " of %.0f s", r.budget_seconds);
        line += budget;
    }
    return line + ")  " + r.detail;
}

}  // namespace carforge
