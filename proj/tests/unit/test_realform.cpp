// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "carforge/error.hpp"
#include "carforge/realform.hpp"

using namespace carforge;

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::MatrixXcd to_matrix(std::span<const Complex> b, int nu) {
    Eigen::MatrixXcd m(nu, nu);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nu; ++j) m(i, j) = b[static_cast<std::size_t>(i * nu + j)];
    }
    return m;
}

Eigen::MatrixXcd random_unitary(int nu, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd a(nu, nu);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nu; ++j) a(i, j) = {gauss(rng), gauss(rng)};
    }
    return Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
}

/// V V^T is a symmetric unitary; for cocycles of the form c (x) I the pairing
/// U(0) conj(U(1)) = I forces the seed to be of this kind.
Eigen::MatrixXcd random_symmetric_unitary(int nu, std::mt19937_64& rng) {
    const Eigen::MatrixXcd v = random_unitary(nu, rng);
    return v * v.transpose();
}

std::vector<Complex> to_block(const Eigen::MatrixXcd& m) {
    std::vector<Complex> b;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) b.push_back(m(i, j));
    }
    return b;
}

/// The antilinear map r v = U conj(v) applied to a vector.
Eigen::VectorXcd antilinear(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& v) { return u * v.conjugate(); }

/// Edge rule read off from r(x + delta_k) = (-1)^k c_k(x)^{-1} r(x) c_k(1 - x) by
/// evaluating the right-hand side on the standard basis: column j of U_next is
/// r(x + delta_k) applied to e_j (conj(e_j) = e_j).
Eigen::MatrixXcd oracle_next(const Eigen::MatrixXcd& c_x, const Eigen::MatrixXcd& u_x,
                             const Eigen::MatrixXcd& c_complement, int k) {
    const int nu = static_cast<int>(u_x.rows());
    Eigen::MatrixXcd out(nu, nu);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    for (int j = 0; j < nu; ++j) {
        const Eigen::VectorXcd e = Eigen::VectorXcd::Unit(nu, j);
        out.col(j) = sign * c_x.inverse() * antilinear(u_x, c_complement * e);
    }
    return out;
}

Triple uniform_triple(const CocycleFamily& c) { return Triple(OccupationMeasure::uniform(c.modes()), c); }

}  // namespace

TEST_CASE("edge rule matches the antilinear relation", "[realform][oracle]") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int nu = 1 + trial % 3;
        const int m = 4;
        const CocycleFamily c = gauge(gw311(m, nu), random_phase_gauge(m, nu, rng(), false));
        const int k = std::uniform_int_distribution<int>(1, m)(rng);
        const Word x = std::uniform_int_distribution<Word>(0, 15)(rng);
        const Eigen::MatrixXcd u = random_unitary(nu, rng);
        const std::vector<Complex> u_block = to_block(u);
        std::vector<Complex> next(u_block.size());
        propagate_edge(c, k, x, u_block, next);
        const Eigen::MatrixXcd want = oracle_next(to_matrix(c.at(k, x), nu), u, to_matrix(c.at(k, x ^ 15u), nu), k);
        CHECK((to_matrix(next, nu) - want).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("solver verdicts on the standard examples", "[realform]") {
    const SolveResult four = solve(uniform_triple(trivial(4)));
    REQUIRE(four.split());
    CHECK(*four.holonomy == Complex(1.0, 0.0));

    const SolveResult two = solve(uniform_triple(trivial(2)));
    REQUIRE_FALSE(two.split());
    const auto* ci = std::get_if<CycleInconsistency>(&*two.obstruction);
    REQUIRE(ci != nullptr);
    CHECK(ci->pairing);
    CHECK(ci->holonomy.size() == 1);
    CHECK(ci->holonomy[0] == Complex(-1.0, 0.0));
    CHECK(ci->defect == 2.0);
    CHECK_FALSE(ci->loop.empty());
    CHECK(*two.holonomy == Complex(-1.0, 0.0));
    CHECK(obstruction_name(*two.obstruction) == "CycleInconsistency");

    const Triple frozen(OccupationMeasure::frozen_tail(3, 2), trivial(3), {1, 2});
    const SolveResult f = solve(frozen);
    REQUIRE_FALSE(f.split());
    CHECK(std::holds_alternative<MeasureNotEquivalent>(*f.obstruction));
    CHECK(std::get<MeasureNotEquivalent>(*f.obstruction).witness.size() == 8);
    CHECK_FALSE(describe(*f.obstruction, 3).empty());
}

TEST_CASE("certificate loops are closed walks", "[realform]") {
    for (int m : {1, 2, 5, 6}) {
        const SolveResult r = solve(uniform_triple(trivial(m)));
        REQUIRE_FALSE(r.split());
        const auto& loop = std::get<CycleInconsistency>(*r.obstruction).loop;
        const Word ones = bits::all_ones(m);
        Word at = loop.front().from;
        for (const LoopStep& s : loop) {
            CHECK(s.from == at);
            at ^= s.generator == 0 ? ones : bits::mode_bit(s.generator);
        }
        CHECK(at == loop.front().from);
    }
}

TEST_CASE("Cartan phases", "[realform]") {
    for (int m = 1; m <= 10; ++m) {
        const CartanRow row = cartan_phase(m);
        const int expected = (m * (m + 1) / 2) % 2 == 0 ? 1 : -1;
        CHECK(row.predicted == expected);
        CHECK(row.holonomy == Complex(expected, 0.0));
        CHECK(row.split == (expected == 1));
        CHECK(row.agree);
    }
    CHECK(cartan_phase(3).split);
    CHECK_FALSE(cartan_phase(5).split);
    CHECK(cartan_phase(8).split);
}

TEST_CASE("verify residuals vanish on built-in triples", "[realform]") {
    for (const Triple& t : {uniform_triple(trivial(3)), uniform_triple(trivial(4)), uniform_triple(gw311(4)),
                            uniform_triple(gw311(8)), uniform_triple(gw311(4, 2))}) {
        const SolveResult r = solve(t);
        REQUIRE(r.split());
        const RealStructureReport v = verify(*r.structure, t);
        CHECK(v.involution == 0.0);
        CHECK(v.isometry == 0.0);
        CHECK(v.commutation == 0.0);
        CHECK(v.number == 0.0);
    }
}

TEST_CASE("soundness on gauged and weighted triples", "[realform][property]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const int nu = 1 + trial % 2;
        const CocycleFamily c = gauge(gw311(4, nu), random_phase_gauge(4, nu, rng(), trial % 3 == 0));
        std::uniform_real_distribution<double> p(0.1, 0.9);
        const Triple t(OccupationMeasure::product({p(rng), p(rng), p(rng), p(rng)}), c);
        const std::vector<Complex> seed = to_block(random_symmetric_unitary(nu, rng));
        const SolveResult r = solve(t, seed);
        REQUIRE(r.split());
        CHECK(verify(*r.structure, t, rng()).max_residual() <= 1e-12);
    }
}

TEST_CASE("an antisymmetric seed breaks the pairing", "[realform]") {
    const Triple t = uniform_triple(gw311(4, 2));
    const std::vector<Complex> seed = {0.0, 1.0, -1.0, 0.0};
    const SolveResult r = solve(t, seed);
    REQUIRE_FALSE(r.split());
    REQUIRE(r.obstruction.has_value());
    const auto* cycle = std::get_if<CycleInconsistency>(&*r.obstruction);
    REQUIRE(cycle != nullptr);
    CHECK(cycle->pairing);
    CHECK(cycle->defect >= 1.0);
}

TEST_CASE("obstructions do not depend on the seed", "[realform][property]") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int m : {1, 2, 5, 6}) {
        const Triple t = uniform_triple(trivial(m));
        const Complex base = *solve(t).holonomy;
        for (int i = 0; i < 20; ++i) {
            const Complex seed = std::polar(1.0, angle(rng));
            const SolveResult r = solve(t, std::span<const Complex>(&seed, 1));
            CHECK_FALSE(r.split());
            CHECK(std::abs(*r.holonomy - base) <= 1e-12);
        }
    }
    const Complex bad = 2.0;
    CHECK_THROWS_AS(solve(uniform_triple(trivial(3)), std::span<const Complex>(&bad, 1)), ValidationError);
}

TEST_CASE("exhaustive search over quarter-turn phases agrees with the solver", "[realform][oracle]") {
    std::vector<CocycleFamily> families;
    for (int m = 1; m <= 4; ++m) families.push_back(trivial(m));
    families.push_back(gw311(4));
    std::mt19937_64 rng(44);
    for (int i = 0; i < 3; ++i) {
        // Sign gauges keep every value in {+-1}.
        BlockField u(4, 1);
        for (Word x = 0; x < 16; ++x) u.at(x)[0] = (rng() & 1u) ? 1.0 : -1.0;
        families.push_back(gauge(gw311(4), u));
        families.push_back(gauge(trivial(3), BlockField(3, 1, std::vector<Complex>(u.values().begin(), u.values().begin() + 8))));
    }
    const Complex phases[4] = {1.0, kI, -1.0, -kI};
    for (const CocycleFamily& c : families) {
        const int m = c.modes();
        const Word n = Word{1} << m;
        const Word ones = n - 1;
        std::vector<Complex> u(n);
        // Constraint for the pair (x, x + delta_k), straight from the antilinear relation.
        const auto edge_ok = [&](Word x, int k) {
            Eigen::MatrixXcd ux(1, 1);
            ux(0, 0) = u[x];
            const Eigen::MatrixXcd want =
                oracle_next(to_matrix(c.at(k, x), 1), ux, to_matrix(c.at(k, x ^ ones), 1), k);
            return std::abs(want(0, 0) - u[x ^ bits::mode_bit(k)]) <= 1e-12;
        };
        bool found = false;
        std::function<void(Word)> assign = [&](Word x) {
            if (found) return;
            if (x == n) {
                found = true;
                return;
            }
            for (Complex p : phases) {
                u[x] = p;
                bool ok = true;
                for (int k = 1; k <= m && ok; ++k) {
                    const Word y = x ^ bits::mode_bit(k);
                    if (y < x) ok = edge_ok(y, k) && edge_ok(x, k);
                }
                const Word z = x ^ ones;
                if (ok && z < x) ok = std::abs(u[x] * std::conj(u[z]) - 1.0) <= 1e-12;
                if (ok) assign(x + 1);
                if (found) return;
            }
        };
        assign(0);
        const Triple t = uniform_triple(c);
        const SolveResult r = solve(t);
        CHECK(found == r.split());
        if (found) {
            BlockField field(m, 1, u);
            CHECK(verify(RealStructure(field, t.measure()), t).max_residual() <= 1e-12);
        }
    }
}

TEST_CASE("support reflection and conjugate inner product", "[realform]") {
    std::mt19937_64 rng(45);
    const Triple t(OccupationMeasure::product({0.2, 0.6, 0.3, 0.7}), gw311(4));
    const SolveResult r = solve(t);
    REQUIRE(r.split());
    const RealStructure& s = *r.structure;
    const Word ones = 15;

    // S L_E = L_{1-E} S, compared on a basis and its i-multiples.
    for (int trial = 0; trial < 20; ++trial) {
        const Word subset = static_cast<Word>(rng() & 0xffffu);
        const auto mask = [](const VectorField& f, auto in_set) {
            VectorField g = f;
            for (Word x = 0; x < 16; ++x) {
                if (!in_set(x)) g.at(x)[0] = 0.0;
            }
            return g;
        };
        const auto in_e = [subset](Word x) { return ((subset >> x) & 1u) != 0; };
        const auto in_reflected = [subset, ones](Word x) { return ((subset >> (x ^ ones)) & 1u) != 0; };
        for (Word x = 0; x < 16; ++x) {
            for (Complex scale : {Complex(1.0, 0.0), kI}) {
                VectorField b = VectorField::basis(4, 1, x, 0);
                b.at(x)[0] *= scale;
                CHECK(max_abs_diff(s.apply(mask(b, in_e)), mask(s.apply(b), in_reflected)) == 0.0);
            }
        }
    }
    // Supp(Sf) = 1 - Supp(f).
    for (Word x = 0; x < 16; ++x) {
        const VectorField sf = s.apply(VectorField::basis(4, 1, x, 0));
        for (Word y = 0; y < 16; ++y) CHECK((sf.at(y)[0] != Complex{}) == (y == (x ^ ones)));
    }
    // <Sf, Sg> = conj <f, g>.
    for (int trial = 0; trial < 20; ++trial) {
        const VectorField f = VectorField::random(4, 1, rng);
        const VectorField g = VectorField::random(4, 1, rng);
        const Complex lhs = inner(s.apply(f), s.apply(g), t.measure());
        const Complex rhs = std::conj(inner(f, g, t.measure()));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("real form basis", "[realform]") {
    const Triple t = uniform_triple(gw311(4, 2));
    const SolveResult r = solve(t);
    REQUIRE(r.split());
    const auto basis = real_form_basis(*r.structure, t);
    REQUIRE(basis.size() == 32);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(max_abs_diff(r.structure->apply(basis[i]), basis[i]) == 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double g = inner(basis[i], basis[j], t.measure()).real();
            CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-15);
        }
    }
    // Plain conjugation on a uniform measure: e_x + e_{1-x} and i(e_x - e_{1-x}).
    const Triple plain = uniform_triple(gw311(4));
    const RealStructure conj(BlockField::identity(4, 1), plain.measure());
    const auto b = real_form_basis(conj, plain);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(b[0].at(0)[0] - h) <= 1e-15);
    CHECK(std::abs(b[0].at(15)[0] - h) <= 1e-15);
    CHECK(std::abs(b[1].at(0)[0] - kI * h) <= 1e-15);
    CHECK(std::abs(b[1].at(15)[0] + kI * h) <= 1e-15);
}

TEST_CASE("restriction to the real form", "[realform]") {
    const Triple t = uniform_triple(gw311(4));
    const SolveResult r = solve(t);
    REQUIRE(r.split());
    const RealStructure& s = *r.structure;
    const RestrictedOperator id = restrict_to_real_form(t, s, t.identity());
    CHECK(id.matrix.isIdentity(1e-14));
    CHECK_THROWS_AS(restrict_to_real_form(t, s, scale(kI, t.identity())), InvarianceError);
    std::vector<Eigen::MatrixXd> gens;
    for (int k = 1; k <= 4; ++k) {
        for (const ShiftOperator& g : {j_basis(t, k), j_sigma(t, k)}) {
            const RestrictedOperator rg = restrict_to_real_form(t, s, g);
            CHECK(rg.imaginary_residual <= 1e-14);
            CHECK((rg.matrix * rg.matrix.transpose()).isIdentity(1e-13));
            CHECK((rg.matrix * rg.matrix + Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-13);
            gens.push_back(rg.matrix);
        }
    }
    std::mt19937_64 rng(46);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> z(8), w(8);
        for (double& v : z) v = gauss(rng);
        for (double& v : w) v = gauss(rng);
        Eigen::MatrixXd rz = Eigen::MatrixXd::Zero(16, 16), rw = rz;
        double dot = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            rz += z[i] * gens[i];
            rw += w[i] * gens[i];
            dot += z[i] * w[i];
        }
        const Eigen::MatrixXd lhs = rz * rw + rw * rz + 2.0 * dot * Eigen::MatrixXd::Identity(16, 16);
        CHECK(lhs.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("standardization", "[realform]") {
    const Triple plain = uniform_triple(gw311(4));
    const SolveResult r = solve(plain);
    REQUIRE(r.split());
    const Standardized st = standardize(plain, *r.structure);
    CHECK(block::max_abs_diff(st.gauge.values(), BlockField::identity(4, 1).values()) == 0.0);
    CHECK(st.report.max_residual() == 0.0);

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int nu = 1 + trial % 2;
        const bool symmetric = trial % 4 < 2;
        const CocycleFamily c = gauge(gw311(4, nu), random_phase_gauge(4, nu, rng(), symmetric));
        const Triple t(OccupationMeasure::product({0.3, 0.4, 0.6, 0.5}), c);
        const std::vector<Complex> seed = to_block(random_symmetric_unitary(nu, rng));
        const SolveResult sr = solve(t, seed);
        REQUIRE(sr.split());
        const Standardized out = standardize(t, *sr.structure);
        CHECK(real_compatible(out.triple.cocycle()).compatible);
        CHECK(check_conditions(out.triple.cocycle()).max_residual() <= 1e-12);
        CHECK(out.report.max_residual() <= 1e-12);
        // The standardized module carries plain conjugation as its real structure.
        const RealStructure conj(BlockField::identity(4, nu), out.triple.measure());
        CHECK(verify(conj, out.triple).max_residual() <= 1e-12);
    }
}
