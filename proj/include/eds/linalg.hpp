#pragma once

// Exact linear algebra over the rationals: reduced row echelon form with a
// deterministic pivot rule (first nonzero entry scanning top-down), and the
// rank / kernel / solve / inverse operations the tableau pipeline is built on.
// Determinants go through a fraction-free Bareiss elimination on the
// denominator-cleared integer matrix.

#include <optional>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace eds {

using RatMat = Mat<Rat>;
using RatVec = std::vector<Rat>;

// In-place reduced row echelon form.  Pivot selection is deterministic: for
// each column, the first row (top-down) with a nonzero entry.  Returns the
// rank; records pivot columns if requested.
inline std::size_t rref(RatMat& m, std::vector<std::size_t>* pivot_cols = nullptr) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t lead = 0;
    if (pivot_cols) pivot_cols->clear();
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t p = lead;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != lead)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(lead, j));
        Rat inv = Rat(1) / m(lead, c);
        for (std::size_t j = c; j < cols; ++j) m(lead, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == lead || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(lead, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++lead;
    }
    return lead;
}

inline std::size_t rank(RatMat m) { return rref(m); }

// Basis of the right kernel {x : m x = 0}.  One vector per free column, with a
// 1 at the free coordinate — deterministic given the pivot rule above.
inline std::vector<RatVec> kernel_basis(RatMat m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One particular solution of A x = b, or nullopt if inconsistent.  Free
// coordinates are set to zero.
inline std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    RatMat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;  // 0 = 1 row
    RatVec x(a.cols(), Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(k, a.cols());
    return x;
}

inline std::optional<RatMat> inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    RatMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    rref(aug, &piv);
    // Invertible iff the pivots are exactly the left-block columns.
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Fraction-free determinant.  Rows are scaled to integers first (tracking the
// scaling), then Bareiss elimination runs over mpz with exact divisions only.
inline Rat det_bareiss(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);

    std::vector<std::vector<Int>> z(n, std::vector<Int>(n));
    Rat scale(1);  // det(m) = det(z) / scale
    for (std::size_t i = 0; i < n; ++i) {
        Int l(1);
        for (std::size_t j = 0; j < n; ++j) l = lcm(l, rat_den(m(i, j)));
        scale *= Rat(l);
        for (std::size_t j = 0; j < n; ++j) z[i][j] = rat_num(m(i, j) * Rat(l));
    }

    int sign = 1;
    Int prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (z[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && z[p][k] == 0) ++p;
            if (p == n) return Rat(0);
            std::swap(z[k], z[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = z[i][j] * z[k][k] - z[i][k] * z[k][j];
                z[i][j] = t / prev;  // exact by the Bareiss identity
            }
        prev = z[k][k];
    }
    return Rat(sign) * Rat(z[n - 1][n - 1]) / scale;
}

// Convenience builders used throughout the pipeline.

inline RatMat from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
    RatMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

inline RatMat from_cols(const std::vector<RatVec>& cols, std::size_t rows) {
    RatMat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("from_cols: ragged input");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

// Does v lie in the row span of `rows`?  (Both live in Q^dim.)
inline bool in_span(const std::vector<RatVec>& rows, const RatVec& v) {
    if (rows.empty()) {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }
    RatMat base = from_rows(rows, v.size());
    std::size_t r0 = rank(base);
    std::vector<RatVec> ext = rows;
    ext.push_back(v);
    return rank(from_rows(ext, v.size())) == r0;
}

}  // namespace eds
