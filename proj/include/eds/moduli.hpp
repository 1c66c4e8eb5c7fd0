#pragma once

// Parametric endovolutive tableaux with fixed Cartan characters, their
// symbolic involutivity ideals, and export to computer-algebra systems.
//
// For a character sequence s_1 >= ... >= s_ell > 0 the endovolutive zero
// pattern leaves free coefficients only in the blocks B^lambda_i with
// lambda < i, at rows s_i < a <= s_lambda and columns b <= s_lambda.  Those
// positions receive symbolic variables x0..x{N-1}, assigned column-major
// within each block, blocks ordered lexicographically by (lambda, i).
// Involutivity of every instantiation is then cut out by an affine quadratic
// ideal: the non-principal rows of the products
// B^lambda_l B^mu_k - B^lambda_k B^mu_l, swept over the same index set as the
// numeric involutivity test.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "involutive.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "rational.hpp"
#include "tableau.hpp"
#include "vartable.hpp"

namespace eds {

struct ParametricTableau {
    std::size_t r = 0, n = 0, ell = 0;
    std::vector<std::size_t> chars;
    VarTablePtr vars;                      // x0..x{N-1}
    std::vector<std::vector<Mat<MPoly>>> b;  // [lambda][i], each r x r

    std::size_t params() const { return vars->size(); }
    const Mat<MPoly>& at(std::size_t lambda, std::size_t i) const { return b[lambda][i]; }
};

namespace detail {

// Matrix product with a vars-carrying accumulator (the generic Mat product
// would accumulate into table-less zero polynomials).
inline Mat<MPoly> pm_mul(const Mat<MPoly>& a, const Mat<MPoly>& c, const VarTablePtr& vars) {
    Mat<MPoly> out(a.rows(), c.cols(), MPoly(vars));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < c.cols(); ++j)
                if (!c(k, j).is_zero()) out(i, j) += a(i, k) * c(k, j);
        }
    return out;
}

}  // namespace detail

// Symbolic endovolutive blocks for the given shape.  `chars` may omit
// trailing zeros; it must be non-increasing, positive up to its last nonzero
// entry, and bounded by r.
inline ParametricTableau parametric_endovolutive(std::size_t r, std::size_t n,
                                                 std::vector<std::size_t> chars) {
    if (r == 0 || n == 0) throw std::invalid_argument("parametric_endovolutive: r, n must be positive");
    if (chars.size() > n) throw std::invalid_argument("parametric_endovolutive: too many characters");
    chars.resize(n, 0);
    if (chars[0] > r) throw std::invalid_argument("parametric_endovolutive: s1 exceeds r");
    std::size_t ell = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && chars[i + 1] > chars[i])
            throw std::invalid_argument("parametric_endovolutive: characters must be non-increasing");
        if (chars[i] > 0) ell = i + 1;
    }
    for (std::size_t i = 0; i < ell; ++i)
        if (chars[i] == 0)
            throw std::invalid_argument("parametric_endovolutive: zero character before the last nonzero one");

    ParametricTableau pt;
    pt.r = r;
    pt.n = n;
    pt.ell = ell;
    pt.chars = chars;

    std::size_t count = 0;
    for (std::size_t lam = 0; lam < ell; ++lam)
        for (std::size_t i = lam + 1; i < n; ++i)
            count += (chars[lam] - chars[i]) * chars[lam];
    pt.vars = VarTable::indexed("x", count);

    std::size_t next = 0;
    pt.b.assign(ell, std::vector<Mat<MPoly>>(n, Mat<MPoly>(r, r, MPoly(pt.vars))));
    for (std::size_t lam = 0; lam < ell; ++lam) {
        for (std::size_t a = 0; a < chars[lam]; ++a)
            pt.b[lam][lam](a, a) = MPoly::constant(pt.vars, Rat(1));
        for (std::size_t i = lam + 1; i < n; ++i)
            for (std::size_t col = 0; col < chars[lam]; ++col)
                for (std::size_t a = chars[i]; a < chars[lam]; ++a)
                    pt.b[lam][i](a, col) = MPoly::var(pt.vars, next++);
    }
    return pt;
}

// Numeric symbol blocks at a full coefficient assignment.
inline SymbolBlocks instantiate(const ParametricTableau& pt, const std::vector<Rat>& assignment) {
    if (assignment.size() != pt.params())
        throw std::invalid_argument("instantiate: assignment must cover every coefficient");
    SymbolBlocks blk;
    blk.n = pt.n;
    blk.r = pt.r;
    blk.ell = pt.ell;
    blk.chars = pt.chars;
    blk.b.assign(pt.ell, std::vector<RatMat>(pt.n, RatMat(pt.r, pt.r)));
    for (std::size_t lam = 0; lam < pt.ell; ++lam)
        for (std::size_t i = 0; i < pt.n; ++i)
            for (std::size_t a = 0; a < pt.r; ++a)
                for (std::size_t c = 0; c < pt.r; ++c)
                    blk.b[lam][i](a, c) = pt.b[lam][i](a, c).evaluate(assignment);
    return blk;
}

// The tableau whose symbol blocks are the instantiated family: one basis
// element per principal entry (row b of column lambda), carrying its
// dependent entries in every later column.
inline Tableau instantiate_tableau(const ParametricTableau& pt,
                                   const std::vector<Rat>& assignment, std::string name = "") {
    SymbolBlocks blk = instantiate(pt, assignment);
    std::vector<RatMat> basis;
    for (std::size_t lam = 0; lam < pt.ell; ++lam)
        for (std::size_t col = 0; col < pt.chars[lam]; ++col) {
            RatMat m(pt.r, pt.n);
            for (std::size_t i = 0; i < pt.n; ++i)
                for (std::size_t a = 0; a < pt.r; ++a) m(a, i) = blk.b[lam][i](a, col);
            basis.push_back(std::move(m));
        }
    return tableau_from_basis(pt.n, pt.r, std::move(basis), std::move(name));
}

// Index tuple of the quadratic condition a generator came from (1-based,
// matching the numeric violation certificates).
struct ModuliProvenance {
    std::size_t lambda, mu, l, k;  // blocks
    std::size_t a, b;              // entry of the product difference

    std::string str() const {
        std::ostringstream out;
        out << "(B^" << lambda << "_" << l << " B^" << mu << "_" << k << " - B^" << lambda << "_"
            << k << " B^" << mu << "_" << l << ")[" << a << "," << b << "]";
        return out.str();
    }
};

struct ModuliIdeal {
    std::size_t r = 0, n = 0;
    std::vector<std::size_t> chars;
    VarTablePtr vars;
    std::vector<MPoly> generators;
    std::vector<ModuliProvenance> provenance;  // parallel to generators
};

// The quadratic involutivity conditions evaluated symbolically, deduplicated
// up to sign, in sweep order.
inline ModuliIdeal involutivity_ideal(const ParametricTableau& pt) {
    ModuliIdeal out;
    out.r = pt.r;
    out.n = pt.n;
    out.chars = pt.chars;
    out.vars = pt.vars;
    const auto& s = pt.chars;
    for (std::size_t lam = 1; lam <= pt.ell; ++lam)
        for (std::size_t l = lam + 1; l <= pt.n; ++l)
            for (std::size_t k = l + 1; k <= pt.n; ++k)
                for (std::size_t mu = lam; mu <= std::min(k - 1, pt.ell); ++mu) {
                    Mat<MPoly> d =
                        detail::pm_mul(pt.at(lam - 1, l - 1), pt.at(mu - 1, k - 1), pt.vars) -
                        detail::pm_mul(pt.at(lam - 1, k - 1), pt.at(mu - 1, l - 1), pt.vars);
                    for (std::size_t a = s[l - 1]; a < pt.r; ++a)
                        for (std::size_t b = 0; b < pt.r; ++b) {
                            const MPoly& g = d(a, b);
                            if (g.is_zero()) continue;
                            bool seen = false;
                            for (const auto& h : out.generators)
                                seen = seen || h == g || h == -g;
                            if (seen) continue;
                            out.generators.push_back(g);
                            out.provenance.push_back({lam, mu, l, k, a + 1, b + 1});
                        }
                }
    return out;
}

// True iff every generator vanishes at the (full) assignment.
inline bool point_check(const ModuliIdeal& ideal, const std::vector<Rat>& assignment) {
    if (assignment.size() != ideal.vars->size())
        throw std::invalid_argument("point_check: assignment must cover every coefficient");
    for (const auto& g : ideal.generators)
        if (g.evaluate(assignment) != 0) return false;
    return true;
}

// Aligned text rendering of the symbolic blocks B^lambda_i, lambda <= i <= n.
inline std::string block_display(const ParametricTableau& pt) {
    std::ostringstream os;
    os << "parametric endovolutive family: r = " << pt.r << ", n = " << pt.n << ", characters (";
    for (std::size_t i = 0; i < pt.chars.size(); ++i) os << (i ? ", " : "") << pt.chars[i];
    os << ")\nfree parameters: " << pt.params();
    if (pt.params() > 0) os << " (x0..x" << pt.params() - 1 << ")";
    os << "\n";
    for (std::size_t lam = 0; lam < pt.ell; ++lam)
        for (std::size_t i = lam; i < pt.n; ++i) {
            const Mat<MPoly>& m = pt.at(lam, i);
            std::vector<std::size_t> width(pt.r, 0);
            for (std::size_t c = 0; c < pt.r; ++c)
                for (std::size_t a = 0; a < pt.r; ++a)
                    width[c] = std::max(width[c], m(a, c).str().size());
            os << "B^" << lam + 1 << "_" << i + 1 << " =\n";
            for (std::size_t a = 0; a < pt.r; ++a) {
                os << "  [";
                for (std::size_t c = 0; c < pt.r; ++c) {
                    std::string e = m(a, c).str();
                    os << " " << std::string(width[c] - e.size(), ' ') << e;
                }
                os << " ]\n";
            }
        }
    return os.str();
}

// Deterministic computer-algebra source for the ideal.  Supported formats:
// "singular", "macaulay2", "sage-text".  A parameter-free ideal gets a
// placeholder variable so the ring declaration stays well-formed.
inline std::string export_ideal(const ModuliIdeal& ideal, const std::string& format) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ideal.vars->size(); ++i) names.push_back(ideal.vars->name(i));
    if (names.empty()) names.push_back("x0");
    auto join = [&](const std::string& sep) {
        std::string out;
        for (std::size_t i = 0; i < names.size(); ++i) out += (i ? sep : "") + names[i];
        return out;
    };

    std::ostringstream os;
    if (format == "singular") {
        os << "ring R = 0, (" << join(",") << "), dp;\n";
        if (ideal.generators.empty()) {
            os << "ideal G = 0;\n";
        } else {
            os << "ideal G =";
            for (std::size_t i = 0; i < ideal.generators.size(); ++i)
                os << (i ? ",\n  " : "\n  ") << ideal.generators[i].str();
            os << ";\n";
        }
    } else if (format == "macaulay2") {
        os << "R = QQ[" << join(",") << "];\n";
        if (ideal.generators.empty()) {
            os << "G = ideal(0_R);\n";
        } else {
            os << "G = ideal(";
            for (std::size_t i = 0; i < ideal.generators.size(); ++i)
                os << (i ? ",\n  " : "\n  ") << ideal.generators[i].str();
            os << ");\n";
        }
    } else if (format == "sage-text") {
        os << "R.<" << join(",") << "> = PolynomialRing(QQ)\n";
        os << "G = R.ideal([";
        for (std::size_t i = 0; i < ideal.generators.size(); ++i)
            os << (i ? ",\n  " : "\n  ") << ideal.generators[i].str();
        os << "])\n";
    } else {
        throw std::invalid_argument("export_ideal: unknown format '" + format + "'");
    }
    return os.str();
}

}  // namespace eds
