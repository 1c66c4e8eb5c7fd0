#pragma once

// Independent oracles used by the unit tests.  These are deliberately naive
// reimplementations (cofactor determinants, brute-force span membership, …)
// kept separate from the library so that the two sides can disagree loudly.

#include <eds/linalg.hpp>
#include <eds/matrix.hpp>
#include <eds/rational.hpp>
#include <eds/rng.hpp>
#include <eds/tableau.hpp>

#include <vector>

namespace oracle {

using eds::Rat;
using eds::RatMat;
using eds::RatVec;

// Cofactor-expansion determinant: O(n!) but unimpeachable at test sizes.
inline Rat det_cofactor(const RatMat& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    if (n == 1) return m(0, 0);
    Rat acc(0);
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) != 0) {
            RatMat minor(n - 1, n - 1);
            for (std::size_t i = 1; i < n; ++i) {
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(i - 1, cc++) = m(i, c);
                }
            }
            acc += Rat(sign) * m(0, j) * det_cofactor(minor);
        }
        sign = -sign;
    }
    return acc;
}

inline RatMat random_mat(eds::Rng& rng, std::size_t r, std::size_t c,
                         long long lo = -9, long long hi = 9) {
    RatMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rat(lo, hi);
    return m;
}

inline RatVec mat_vec(const RatMat& m, const RatVec& v) { return m.apply(v); }

inline bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Dimension of the prolongation computed the other way around: instead of the
// kernel of the skewing map on A (x) V*, build symmetric W-valued 2-tensors
// X^a_{ij} directly and impose that every slice X(.,.,j) lies in the tableau
// (via its relation matrix).  The two constructions share no code.
inline std::size_t prolong_dim_symmetric(const eds::Tableau& t) {
    const std::size_t n = t.n, r = t.r;
    // unknowns: X^a_{ij} for i <= j, codebook (a, i<=j)
    std::vector<std::pair<std::size_t, std::size_t>> sym;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) sym.emplace_back(i, j);
    const std::size_t unknowns = r * sym.size();
    RatMat rel = t.relations();  // (rn - s) x (r n)
    RatMat sys(rel.rows() * n, unknowns);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < rel.rows(); ++q)
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t i = 0; i < n; ++i) {
                    // coefficient of X^a_{ij} (slice j, entry (a,i))
                    std::size_t lo = std::min(i, j), hi = std::max(i, j);
                    std::size_t col = 0;
                    while (sym[col] != std::make_pair(lo, hi)) ++col;
                    sys(j * rel.rows() + q, a * sym.size() + col) += rel(q, a * n + i);
                }
    return eds::kernel_basis(sys).size();
}

}  // namespace oracle
