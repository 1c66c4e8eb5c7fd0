#pragma once

// Built-in example tableaux.  These are the worked examples the test suite
// pins down numerically; the CLI can also materialize them as tableau files.
//
//   hankel      span of all 3x3 Hankel (catalecticant) matrices
//   wave        symbol of the 2+1 wave equation u_33 = u_11 + u_22
//   zerodim-a   4x3, one independent column, four simple characteristic points
//   zerodim-b   as -a but with a repeated point of fiber dimension 2
//   zerodim-c   as -a but with a nilpotent (Jordan) double point
//   zerodim-d   both degenerations at once: a triple point plus a simple one
//   onedim      2x3 tableau with characteristic conic a0^2 = 9 a1 a2
//   moduli-320  an involutive member of the (r,n) = (3,3), (3,2,0) family
//
// The zerodim family realizes eigenvalue pairs (c_a, d_a) row by row; the
// concrete parameter values below are part of the frozen test surface.

#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "tableau.hpp"

namespace eds {

inline Tableau gallery_hankel() {
    // Basis matrix k has 1 wherever (row + col) == k (0-based).
    std::vector<RatMat> basis;
    for (std::size_t k = 0; k < 5; ++k) {
        RatMat m(3, 3);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t i = 0; i < 3; ++i)
                if (a + i == k) m(a, i) = 1;
        basis.push_back(m);
    }
    return tableau_from_basis(3, 3, std::move(basis), "hankel");
}

inline Tableau gallery_wave() {
    // Relations on vec(pi) (row-major, 0-based index a*3+i):
    //   pi^1_2 = pi^2_1,  pi^1_3 = pi^3_1,  pi^2_3 = pi^3_2,
    //   pi^3_3 = pi^1_1 + pi^2_2.
    RatMat rel(4, 9);
    rel(0, 1) = 1;
    rel(0, 3) = -1;
    rel(1, 2) = 1;
    rel(1, 6) = -1;
    rel(2, 5) = 1;
    rel(2, 7) = -1;
    rel(3, 8) = 1;
    rel(3, 0) = -1;
    rel(3, 4) = -1;
    return tableau_from_relations(3, 3, rel, "wave");
}

namespace detail {

// Rows of the zero-dimensional examples: row a is (alpha_a, c_a alpha_a + e_a alpha_2,
// d_a alpha_a + e_a alpha_2) where e_a = 1 only on the Jordan row (row 1 when
// enabled).  Equivalently: basis matrices are e_a x (1, c_a, d_a) plus, when a
// Jordan block is present, the extra matrix coupling alpha_2 into row 1.
inline Tableau zerodim(const std::vector<std::pair<Rat, Rat>>& cd, bool jordan,
                       const std::string& name) {
    const std::size_t r = 4, n = 3;
    std::vector<RatMat> basis;
    for (std::size_t a = 0; a < r; ++a) {
        RatMat m(r, n);
        m(a, 0) = 1;
        m(a, 1) = cd[a].first;
        m(a, 2) = cd[a].second;
        if (jordan && a == 1) {
            m(0, 1) += 1;
            m(0, 2) += 1;
        }
        basis.push_back(m);
    }
    return tableau_from_basis(n, r, std::move(basis), name);
}

}  // namespace detail

inline Tableau gallery_zerodim(char variant) {
    using P = std::pair<Rat, Rat>;
    switch (variant) {
        case 'a':  // four distinct simple points
            return detail::zerodim({P{1, 2}, P{2, -1}, P{-1, 3}, P{3, 1}}, false, "zerodim-a");
        case 'b':  // rows 1 and 2 share (c, d): double point with 2-dim fiber
            return detail::zerodim({P{1, 2}, P{1, 2}, P{-1, 3}, P{3, 1}}, false, "zerodim-b");
        case 'c':  // Jordan coupling on rows 1-2: double point, 1-dim fiber
            return detail::zerodim({P{1, 2}, P{1, 2}, P{-1, 3}, P{3, 1}}, true, "zerodim-c");
        case 'd':  // rows 1-3 share (c, d) and rows 1-2 are Jordan-coupled
            return detail::zerodim({P{1, 2}, P{1, 2}, P{1, 2}, P{3, 1}}, true, "zerodim-d");
        default:
            throw std::invalid_argument("unknown zerodim variant");
    }
}

inline Tableau gallery_onedim() {
    // pi = [[a0, a2, 5 a0 + 9 a2], [a1, a0/9, a0 + 5 a1]].
    RatMat m0{{Rat(1), Rat(0), Rat(5)}, {Rat(0), Rat(1, 9), Rat(1)}};
    RatMat m1{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(5)}};
    RatMat m2{{Rat(0), Rat(1), Rat(9)}, {Rat(0), Rat(0), Rat(0)}};
    return tableau_from_basis(3, 2, {m0, m1, m2}, "onedim");
}

inline Tableau gallery_moduli320() {
    // Instantiation of the 16-parameter endovolutive (3,2,0) family at a
    // point of the involutivity ideal's maximal component (x0 = x1 = x5 =
    // x8 = 0), other parameters pinned at small distinct rationals:
    //   B12 last row (0, 0, 1)
    //   B13 = [[2, -1, 1], [3, 1/2, -2], [0, 0, 1]]
    //   B23 upper block [[2, 1/3], [-1, 1]]
    RatMat m0{{Rat(1), Rat(0), Rat(2)}, {Rat(0), Rat(0), Rat(3)}, {Rat(0), Rat(0), Rat(0)}};
    RatMat m1{{Rat(0), Rat(0), Rat(-1)}, {Rat(1), Rat(0), Rat(1, 2)}, {Rat(0), Rat(0), Rat(0)}};
    RatMat m2{{Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(-2)}, {Rat(1), Rat(1), Rat(1)}};
    RatMat m3{{Rat(0), Rat(1), Rat(2)}, {Rat(0), Rat(0), Rat(-1)}, {Rat(0), Rat(0), Rat(0)}};
    RatMat m4{{Rat(0), Rat(0), Rat(1, 3)}, {Rat(0), Rat(1), Rat(1)}, {Rat(0), Rat(0), Rat(0)}};
    return tableau_from_basis(3, 3, {m0, m1, m2, m3, m4}, "moduli-320");
}

inline std::vector<std::string> gallery_names() {
    return {"hankel",    "wave",      "zerodim-a", "zerodim-b",
            "zerodim-c", "zerodim-d", "onedim",    "moduli-320"};
}

inline Tableau gallery(const std::string& name) {
    if (name == "hankel") return gallery_hankel();
    if (name == "wave") return gallery_wave();
    if (name == "zerodim-a") return gallery_zerodim('a');
    if (name == "zerodim-b") return gallery_zerodim('b');
    if (name == "zerodim-c") return gallery_zerodim('c');
    if (name == "zerodim-d") return gallery_zerodim('d');
    if (name == "onedim") return gallery_onedim();
    if (name == "moduli-320") return gallery_moduli320();
    throw std::invalid_argument("unknown example: " + name);
}

}  // namespace eds
