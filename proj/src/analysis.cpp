// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include "carforge/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "carforge/error.hpp"

namespace carforge {

namespace {

constexpr Complex kI{0.0, 1.0};

/// Character sums visit 2^{2n} monomials; beyond this they stop being desk scale.
constexpr int kCharacterMaxActive = 10;

/// Relative singular-value cut for nullspace dimensions.
constexpr double kNullspaceThreshold = 1e-8;

std::vector<ShiftOperator> ordered_generators(const Triple& t) {
    std::vector<ShiftOperator> gens;
    for (int k : t.active()) {
        gens.push_back(j_basis(t, k));
        gens.push_back(j_sigma(t, k));
    }
    return gens;
}

/// Linear constraints on phi (real and imaginary parts of every block entry
/// at every support point) for L_phi to commute with all generators and S.
struct CommutantSystem {
    Eigen::MatrixXd matrix;
    std::vector<Word> support;
    std::vector<std::ptrdiff_t> position;  // configuration -> index in support, -1 if null
    int nu = 1;

    [[nodiscard]] Eigen::Index column(Word x, std::size_t entry, int part) const {
        const auto bs = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu);
        return static_cast<Eigen::Index>((static_cast<std::size_t>(position[x]) * bs + entry) * 2 +
                                         static_cast<std::size_t>(part));
    }
};

class RowWriter {
public:
    explicit RowWriter(Eigen::Index columns) : columns_(columns) {}

    /// Adds a * z (or a * conj(z)) to the current complex equation, z the unknown at (re, im).
    void term(Complex a, Eigen::Index re, Eigen::Index im, bool conjugated) {
        if (a == Complex{}) return;
        const double s = conjugated ? -1.0 : 1.0;
        real_.emplace_back(re, a.real());
        real_.emplace_back(im, -s * a.imag());
        imag_.emplace_back(re, a.imag());
        imag_.emplace_back(im, s * a.real());
    }

    void finish() {
        rows_.push_back(std::move(real_));
        rows_.push_back(std::move(imag_));
        real_.clear();
        imag_.clear();
    }

    [[nodiscard]] Eigen::MatrixXd build() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_.size()), columns_);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (const auto& [c, v] : rows_[r]) m(static_cast<Eigen::Index>(r), c) += v;
        }
        return m;
    }

private:
    Eigen::Index columns_;
    std::vector<std::pair<Eigen::Index, double>> real_;
    std::vector<std::pair<Eigen::Index, double>> imag_;
    std::vector<std::vector<std::pair<Eigen::Index, double>>> rows_;
};

CommutantSystem commutant_system(const Triple& t, const RealStructure& s) {
    CommutantSystem sys;
    sys.nu = t.multiplicity();
    sys.support = t.measure().support();
    sys.position.assign(t.measure().size(), -1);
    for (std::size_t p = 0; p < sys.support.size(); ++p) {
        sys.position[sys.support[p]] = static_cast<std::ptrdiff_t>(p);
    }
    const auto un = static_cast<std::size_t>(sys.nu);
    const auto columns = static_cast<Eigen::Index>(sys.support.size() * un * un * 2);
    RowWriter rows(columns);
    const auto var = [&sys, un](Word x, std::size_t i, std::size_t j) {
        return std::pair{sys.column(x, i * un + j, 0), sys.column(x, i * un + j, 1)};
    };

    // phi(x) D(x) - D(x) phi(x + t) = 0 for each generator term.
    for (const ShiftOperator& g : ordered_generators(t)) {
        for (const auto& [shift, d] : g.terms()) {
            for (Word x : sys.support) {
                const Word y = x ^ shift;
                const auto dx = d.at(x);
                for (std::size_t i = 0; i < un; ++i) {
                    for (std::size_t j = 0; j < un; ++j) {
                        for (std::size_t l = 0; l < un; ++l) {
                            const auto [xr, xi] = var(x, i, l);
                            rows.term(dx[l * un + j], xr, xi, false);
                            const auto [yr, yi] = var(y, l, j);
                            rows.term(-dx[i * un + l], yr, yi, false);
                        }
                        rows.finish();
                    }
                }
            }
        }
    }
    // U(x) conj(phi(1 - x)) - phi(x) U(x) = 0.
    const Word ones = bits::all_ones(t.modes());
    for (Word x : sys.support) {
        const auto u = s.phases().at(x);
        for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t j = 0; j < un; ++j) {
                for (std::size_t l = 0; l < un; ++l) {
                    const auto [cr, ci] = var(x ^ ones, l, j);
                    rows.term(u[i * un + l], cr, ci, true);
                    const auto [xr, xi] = var(x, i, l);
                    rows.term(-u[l * un + j], xr, xi, false);
                }
                rows.finish();
            }
        }
    }
    sys.matrix = rows.build();
    return sys;
}

BlockField field_from_vector(const Triple& t, const CommutantSystem& sys, const Eigen::VectorXd& v) {
    BlockField phi(t.modes(), t.multiplicity());
    const std::size_t bs = phi.block_size();
    for (Word x : sys.support) {
        const auto dst = phi.at(x);
        for (std::size_t e = 0; e < bs; ++e) dst[e] = {v(sys.column(x, e, 0)), v(sys.column(x, e, 1))};
    }
    return phi;
}

Eigen::VectorXd vector_from_field(const CommutantSystem& sys, const BlockField& phi) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.matrix.cols());
    for (Word x : sys.support) {
        const auto src = phi.at(x);
        for (std::size_t e = 0; e < src.size(); ++e) {
            v(sys.column(x, e, 0)) = src[e].real();
            v(sys.column(x, e, 1)) = src[e].imag();
        }
    }
    return v;
}

/// Singular values (descending) and right singular vectors of a tall matrix,
/// reduced through a QR factorization first.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> tall_svd(const Eigen::MatrixXd& a) {
    Eigen::MatrixXd square;
    if (a.rows() > a.cols()) {
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
        square = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    } else {
        square = a;
    }
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(square, Eigen::ComputeFullV);
    Eigen::VectorXd sv = Eigen::VectorXd::Zero(a.cols());
    sv.head(svd.singularValues().size()) = svd.singularValues();
    return {sv, svd.matrixV()};
}

}  // namespace

ShiftOperator monomial(const Triple& t, std::uint64_t alpha) {
    const auto gens = ordered_generators(t);
    ShiftOperator p = t.identity();
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if ((alpha >> g) & 1u) p = compose(p, gens[g]);
    }
    return p;
}

CharacterSums character_sums(const Triple& t) {
    if (static_cast<int>(t.active().size()) > kCharacterMaxActive) {
        throw CapacityError("character sums limited to " + std::to_string(kCharacterMaxActive) +
                            " active modes");
    }
    const auto gens = ordered_generators(t);
    const std::uint64_t count = std::uint64_t{1} << gens.size();
    ShiftOperator p = t.identity();
    double abs2 = 0.0;
    double squares = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (i != 0) p = compose(p, gens[static_cast<std::size_t>(std::countr_zero(i))]);
        abs2 += std::norm(trace(p));
        squares += trace(compose(p, p)).real();
    }
    const double scale = static_cast<double>(count);
    return {abs2 / scale, squares / scale, static_cast<std::size_t>(count)};
}

int commutant_dim_complex(const Triple& t) {
    const double raw = character_sums(t).commutant;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-6) {
        throw Error("character sum " + std::to_string(raw) + " is not an integer");
    }
    return static_cast<int>(rounded);
}

int frobenius_schur(const Triple& t) {
    if (!t.measure().full_support() || !t.all_active()) {
        throw PreconditionError("Frobenius-Schur indicator needs full support and all modes active");
    }
    const CharacterSums sums = character_sums(t);
    if (std::abs(sums.commutant - 1.0) > 1e-6) {
        throw PreconditionError("module is reducible (commutant dimension " +
                                std::to_string(sums.commutant) + ")");
    }
    const double rounded = std::round(sums.indicator);
    if (std::abs(sums.indicator - rounded) > 1e-6) {
        throw Error("indicator sum " + std::to_string(sums.indicator) + " is not an integer");
    }
    return static_cast<int>(rounded);
}

RealCommutant real_commutant(const Triple& t, const RealStructure& s) {
    const CommutantSystem sys = commutant_system(t, s);
    const auto [sv, v] = tall_svd(sys.matrix);
    RealCommutant out;
    const double largest = sv.size() > 0 ? sv.maxCoeff() : 0.0;
    out.threshold = kNullspaceThreshold * largest;
    for (Eigen::Index i = sv.size() - 1; i >= 0; --i) {
        out.singular_values.push_back(sv(i));
        if (sv(i) < out.threshold) {
            out.basis.push_back(field_from_vector(t, sys, v.col(i)));
        }
    }
    out.dimension = static_cast<int>(out.basis.size());
    return out;
}

int real_commutant_dim_dense(const Triple& t, const RealStructure& s, std::size_t max_dim) {
    const std::size_t n = real_form_basis(s, t).size();
    if (n > max_dim) {
        throw CapacityError("dense commutant oracle limited to real dimension " +
                            std::to_string(max_dim));
    }
    const auto dim = static_cast<Eigen::Index>(n);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);
    const auto gens = ordered_generators(t);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(gens.size()) * dim * dim, dim * dim);
    Eigen::Index row = 0;
    for (const ShiftOperator& g : gens) {
        const Eigen::MatrixXd r = restrict_to_real_form(t, s, g).matrix;
        // vec(R M - M R) = (I (x) R - R^T (x) I) vec(M), column-major vec.
        for (Eigen::Index bi = 0; bi < dim; ++bi) {
            for (Eigen::Index bj = 0; bj < dim; ++bj) {
                a.block(row + bi * dim, bj * dim, dim, dim) = eye(bi, bj) * r - r(bj, bi) * eye;
            }
        }
        row += dim * dim;
    }
    const auto [sv, v] = tall_svd(a);
    const double cut = kNullspaceThreshold * sv.maxCoeff();
    return static_cast<int>((sv.array() < cut).count());
}

ComplexStructureResult complex_structure_search(const Triple& t, const RealStructure& s,
                                                std::uint64_t seed) {
    const RealStructureReport check = verify(s, t, seed, 0);
    if (check.max_residual() > t.tolerance()) {
        throw PreconditionError("complex_structure_search needs a valid real structure");
    }
    const CommutantSystem sys = commutant_system(t, s);
    const RealCommutant commutant = real_commutant(t, s);
    ComplexStructureResult out;
    out.commutant_dim = commutant.dimension;
    if (commutant.dimension == 1) {
        out.exhaustive = true;
        out.certificate = "real commutant = R*I (dimension 1)";
        return out;
    }
    if (commutant.dimension % 2 != 0) {
        out.exhaustive = true;
        out.certificate = "real commutant has odd dimension " + std::to_string(commutant.dimension) +
                          "; a square root of -I would make it a complex vector space";
        return out;
    }

    constexpr int kTrials = 64;
    const int nu = t.multiplicity();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < kTrials; ++trial) {
        BlockField mix(t.modes(), nu);
        for (const BlockField& b : commutant.basis) {
            const double c = gauss(rng);
            for (Word x : sys.support) {
                const auto src = b.at(x);
                const auto dst = mix.at(x);
                for (std::size_t e = 0; e < src.size(); ++e) dst[e] += c * src[e];
            }
        }
        // i * sign(Im lambda) applied to each block; real because the spectrum
        // of the restricted operator is closed under conjugation.
        BlockField candidate(t.modes(), nu);
        bool usable = true;
        for (Word x : sys.support) {
            Eigen::MatrixXcd blockx(nu, nu);
            const auto src = mix.at(x);
            for (int i = 0; i < nu; ++i) {
                for (int j = 0; j < nu; ++j) blockx(i, j) = src[static_cast<std::size_t>(i * nu + j)];
            }
            const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(blockx);
            const Eigen::VectorXcd lambda = eig.eigenvalues();
            const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
            Eigen::VectorXcd f(nu);
            for (int i = 0; i < nu; ++i) {
                if (std::abs(lambda(i).imag()) < 1e-6 * scale) {
                    usable = false;
                    break;
                }
                f(i) = lambda(i).imag() > 0 ? kI : -kI;
            }
            if (!usable) break;
            const Eigen::MatrixXcd& vecs = eig.eigenvectors();
            const Eigen::FullPivLU<Eigen::MatrixXcd> lu(vecs);
            if (!lu.isInvertible()) {
                usable = false;
                break;
            }
            const Eigen::MatrixXcd value = vecs * f.asDiagonal() * lu.inverse();
            const auto dst = candidate.at(x);
            for (int i = 0; i < nu; ++i) {
                for (int j = 0; j < nu; ++j) dst[static_cast<std::size_t>(i * nu + j)] = value(i, j);
            }
        }
        if (!usable) continue;
        double square_defect = 0.0;
        std::vector<Complex> sq(candidate.block_size());
        for (Word x : sys.support) {
            block::mul(candidate.at(x), candidate.at(x), sq, nu);
            for (Complex& z : sq) z = -z;
            square_defect = std::max(square_defect, block::identity_defect(sq, nu));
        }
        const double membership =
            (sys.matrix * vector_from_field(sys, candidate)).cwiseAbs().maxCoeff();
        const double residual = std::max(square_defect, membership);
        if (residual <= 1e-8) {
            out.exists = true;
            out.exhaustive = true;
            out.witness = std::move(candidate);
            out.witness_residual = residual;
            out.certificate = "witness phi with phi^2 = -I found in trial " + std::to_string(trial + 1);
            return out;
        }
    }
    out.certificate = "no complex structure found in " + std::to_string(kTrials) +
                      " random trials (search not exhaustive)";
    return out;
}

EpsilonResult epsilon_consistency(int m) {
    if (m < 1) throw RangeError("mode count must be positive");
    const Word ones = bits::all_ones(m);
    EpsilonResult out;
    std::ostringstream cert;
    if (m <= 4) {
        const Word n = Word{1} << m;
        const std::uint64_t assignments = std::uint64_t{1} << n;
        std::uint64_t solutions = 0;
        for (std::uint64_t mask = 0; mask < assignments; ++mask) {
            const auto eps = [mask](Word x) { return ((mask >> x) & 1u) != 0 ? -1 : 1; };
            bool ok = true;
            for (Word x = 0; x < n && ok; ++x) {
                if (eps(x ^ ones) != -eps(x)) ok = false;
                for (int k = 1; k <= m && ok; ++k) {
                    if (eps(x ^ bits::mode_bit(k)) != eps(x)) ok = false;
                }
            }
            if (ok) ++solutions;
        }
        out.exhaustive = true;
        out.assignments_checked = assignments;
        out.consistent = solutions > 0;
        cert << "exhaustive over " << assignments << " sign assignments: " << solutions
             << " solutions; eps constant on " << n << " points but eps(" << to_bitstring(ones, m)
             << ") = -eps(" << to_bitstring(0, m) << ")";
    } else {
        out.consistent = false;
        cert << "eps(x + delta_k) = eps(x) for k = 1.." << m
             << " makes eps constant on the single orbit X_" << m << ", contradicting eps("
             << to_bitstring(ones, m) << ") = -eps(" << to_bitstring(0, m) << ")";
    }
    out.certificate = cert.str();
    return out;
}

}  // namespace carforge
