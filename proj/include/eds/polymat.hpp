#pragma once

// Determinants of polynomial matrices.  Cofactor expansion for tiny sizes,
// fraction-free Bareiss elimination (with exact polynomial division) above
// that — Groebner-free by design, and every division in Bareiss is exact by
// the Sylvester identity.

#include <stdexcept>

#include "matrix.hpp"
#include "mpoly.hpp"

namespace eds {

using PolyMat = Mat<MPoly>;

namespace detail {

inline MPoly poly_det_cofactor(const PolyMat& m) {
    const std::size_t n = m.rows();
    const VarTablePtr& vars = m(0, 0).vars();
    if (n == 1) return m(0, 0);
    MPoly acc(vars);
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (!m(0, j).is_zero()) {
            PolyMat minor(n - 1, n - 1, MPoly(vars));
            for (std::size_t i = 1; i < n; ++i) {
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(i - 1, cc++) = m(i, c);
                }
            }
            MPoly t = m(0, j) * poly_det_cofactor(minor);
            acc = sign > 0 ? acc + t : acc - t;
        }
        sign = -sign;
    }
    return acc;
}

inline MPoly poly_det_bareiss(PolyMat m) {
    const std::size_t n = m.rows();
    const VarTablePtr& vars = m(0, 0).vars();
    int sign = 1;
    MPoly prev = MPoly::constant(vars, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return MPoly(vars);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)).exact_div(prev);
        prev = m(k, k);
    }
    MPoly d = m(n - 1, n - 1);
    return sign > 0 ? d : -d;
}

}  // namespace detail

inline MPoly poly_det(const PolyMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("poly_det: matrix not square");
    if (m.rows() == 0) throw std::invalid_argument("poly_det: empty matrix");
    if (m.rows() <= 4) return detail::poly_det_cofactor(m);
    return detail::poly_det_bareiss(m);
}

}  // namespace eds
