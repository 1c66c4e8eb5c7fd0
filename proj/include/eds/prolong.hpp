#pragma once

// The Spencer map delta, the prolongation A^(1), Spencer cohomology
// dimensions, and the exactness checks built on them (the wedge-by-phi
// sequence and the restriction sequence of the normal form).
//
// Conventions.  An element of A (x) V* is stored as a vector of length s*n in
// the codebook (k, j) -> k*n + j: coefficient of (basis matrix k) (x) e^j.
// Viewed inside W (x) V* (x) V* it has components P^a_{i,j} = sum_k c_{k,j}
// m_k(a, i); the Spencer map takes the skew part (delta P)^a_{ij} = P^a_{i,j}
// - P^a_{j,i}.  Elements of W (x) wedge^k V* are stored in the codebook
// (a, S) -> a*C(n,k) + index(S) over lexicographically ordered k-subsets S.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "involutive.hpp"
#include "tableau.hpp"

namespace eds {

inline std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t out = 1;
    for (std::size_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
    return out;
}

// Lexicographically ordered k-element subsets of {0, ..., n-1}.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance to the next subset in lex order
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// Indexed basis of wedge^k V*.
struct ExtBasis {
    std::size_t n = 0, k = 0;
    std::vector<std::vector<std::size_t>> subsets;
    std::map<std::vector<std::size_t>, std::size_t> index;

    static ExtBasis make(std::size_t n, std::size_t k) {
        ExtBasis b;
        b.n = n;
        b.k = k;
        b.subsets = k_subsets(n, k);
        for (std::size_t i = 0; i < b.subsets.size(); ++i) b.index[b.subsets[i]] = i;
        return b;
    }
    std::size_t size() const { return subsets.size(); }
};

// e^j ^ e^S = sign * e^T for sorted S not containing j; nullopt if j in S.
inline std::optional<std::pair<int, std::vector<std::size_t>>> wedge_left(
    std::size_t j, const std::vector<std::size_t>& S) {
    std::size_t before = 0;
    for (auto s : S) {
        if (s == j) return std::nullopt;
        if (s < j) ++before;
    }
    std::vector<std::size_t> T = S;
    T.insert(T.begin() + static_cast<std::ptrdiff_t>(before), j);
    return std::make_pair(before % 2 == 0 ? 1 : -1, std::move(T));
}

// e^S ^ e^j = sign * e^T.
inline std::optional<std::pair<int, std::vector<std::size_t>>> wedge_right(
    const std::vector<std::size_t>& S, std::size_t j) {
    auto w = wedge_left(j, S);
    if (!w) return std::nullopt;
    if (S.size() % 2 == 1) w->first = -w->first;
    return w;
}

// ---------------------------------------------------------------------------
// The Spencer map and the prolongation.

struct DeltaMap {
    std::size_t r = 0, n = 0, s = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // row blocks i < j
    RatMat mat;                                              // (r*C(n,2)) x (s*n)
};

inline DeltaMap delta_matrix(const Tableau& t) {
    DeltaMap d;
    d.r = t.r;
    d.n = t.n;
    d.s = t.dim();
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = i + 1; j < t.n; ++j) d.pairs.emplace_back(i, j);
    const std::size_t np = d.pairs.size();
    d.mat = RatMat(t.r * np, d.s * t.n);
    for (std::size_t k = 0; k < d.s; ++k) {
        const RatMat& m = t.basis[k];
        for (std::size_t a = 0; a < t.r; ++a)
            for (std::size_t p = 0; p < np; ++p) {
                auto [i, j] = d.pairs[p];
                d.mat(a * np + p, k * t.n + j) += m(a, i);
                d.mat(a * np + p, k * t.n + i) -= m(a, j);
            }
    }
    return d;
}

struct Prolongation {
    std::size_t n = 0, s = 0;  // ambient space A (x) V*, codebook (k, j)
    std::string base_name;
    std::vector<RatVec> basis;  // kernel of delta

    std::size_t dim() const { return basis.size(); }
};

inline Prolongation prolongation(const Tableau& t) {
    Prolongation p;
    p.n = t.n;
    p.s = t.dim();
    p.base_name = t.name;
    if (p.s > 0) p.basis = kernel_basis(delta_matrix(t).mat);
    return p;
}

// Re-house A^(1) c A (x) V* as a tableau of s x n matrices (target space A),
// so that every analysis — characters, involutivity, further prolongation —
// recurses on the same machinery.
inline Tableau as_tableau(const Prolongation& p) {
    std::vector<RatMat> basis;
    basis.reserve(p.basis.size());
    for (const auto& v : p.basis) basis.push_back(RatMat::unflatten(p.s, p.n, v));
    return tableau_from_basis(p.n, p.s, std::move(basis),
                              p.base_name.empty() ? "" : p.base_name + "'");
}

// Components of an A (x) V* vector viewed in W (x) V* (x) V*, and a symmetry
// probe: membership of c in A^(1) is exactly symmetry of this view.
inline Rat prolongation_component(const Tableau& t, const RatVec& c, std::size_t a,
                                  std::size_t i, std::size_t j) {
    Rat out(0);
    for (std::size_t k = 0; k < t.dim(); ++k) out += c[k * t.n + j] * t.basis[k](a, i);
    return out;
}

inline bool prolongation_element_symmetric(const Tableau& t, const RatVec& c) {
    for (std::size_t a = 0; a < t.r; ++a)
        for (std::size_t i = 0; i < t.n; ++i)
            for (std::size_t j = i + 1; j < t.n; ++j)
                if (prolongation_component(t, c, a, i, j) !=
                    prolongation_component(t, c, a, j, i))
                    return false;
    return true;
}

// Coordinates of an r x n matrix in the tableau basis, if the matrix lies in
// the span at all.
inline std::optional<RatVec> coords_in_tableau(const Tableau& t, const RatMat& m) {
    RatMat sys(t.r * t.n, t.dim());
    for (std::size_t k = 0; k < t.dim(); ++k) {
        RatVec fk = t.basis[k].flatten();
        for (std::size_t e = 0; e < fk.size(); ++e) sys(e, k) = fk[e];
    }
    return solve(sys, m.flatten());
}

// alpha (x) xi as a vector in the A (x) V* codebook.
inline RatVec tensor_with_covector(const Tableau& t, const RatVec& alpha, const RatVec& xi) {
    RatVec c(t.dim() * t.n, Rat(0));
    for (std::size_t k = 0; k < t.dim(); ++k)
        for (std::size_t j = 0; j < t.n; ++j) c[k * t.n + j] = alpha[k] * xi[j];
    return c;
}

// ---------------------------------------------------------------------------
// Spencer cohomology via boundary quotients.
//
// H^1 = (W (x) V*) / A and, for k >= 2, H^k is the cokernel of the Spencer
// map into W (x) wedge^k V*; its image is spanned by the wedges pi ^ omega of
// tableau elements pi with (k-1)-forms omega.

inline std::vector<RatVec> spencer_boundary_rows(const Tableau& t, std::size_t k,
                                                 const ExtBasis& target) {
    std::vector<RatVec> rows;
    if (k == 0 || k > t.n) throw std::invalid_argument("spencer boundary: bad degree");
    auto lower = k_subsets(t.n, k - 1);
    for (const auto& m : t.basis)
        for (const auto& S : lower) {
            RatVec v(t.r * target.size(), Rat(0));
            bool nonzero = false;
            for (std::size_t a = 0; a < t.r; ++a)
                for (std::size_t i = 0; i < t.n; ++i) {
                    if (m(a, i) == 0) continue;
                    auto w = wedge_left(i, S);
                    if (!w) continue;
                    v[a * target.size() + target.index.at(w->second)] += Rat(w->first) * m(a, i);
                    nonzero = true;
                }
            if (nonzero) rows.push_back(std::move(v));
        }
    return rows;
}

// A quotient of Q^ambient by a spanned subspace, with deterministic
// representatives: the rref of the spanning set leaves the non-pivot
// coordinates as a basis of the quotient, and reduction to normal form is the
// projection.
struct Quotient {
    std::size_t ambient = 0;
    RatMat rows;  // rref, zero rows dropped
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;

    std::size_t dim() const { return free_cols.size(); }

    static Quotient make(const std::vector<RatVec>& spanning, std::size_t ambient) {
        Quotient q;
        q.ambient = ambient;
        RatMat m = spanning.empty() ? RatMat(0, ambient) : from_rows(spanning, ambient);
        std::size_t rk = rref(m, &q.pivots);
        q.rows = RatMat(rk, ambient);
        for (std::size_t i = 0; i < rk; ++i)
            for (std::size_t j = 0; j < ambient; ++j) q.rows(i, j) = m(i, j);
        std::vector<bool> is_pivot(ambient, false);
        for (auto c : q.pivots) is_pivot[c] = true;
        for (std::size_t c = 0; c < ambient; ++c)
            if (!is_pivot[c]) q.free_cols.push_back(c);
        return q;
    }

    RatVec project(RatVec v) const {
        if (v.size() != ambient) throw std::invalid_argument("quotient: dimension mismatch");
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            Rat f = v[pivots[i]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < ambient; ++j) v[j] -= f * rows(i, j);
        }
        RatVec out(free_cols.size());
        for (std::size_t c = 0; c < free_cols.size(); ++c) out[c] = v[free_cols[c]];
        return out;
    }
};

inline Quotient spencer_quotient(const Tableau& t, std::size_t k, const ExtBasis& target) {
    return Quotient::make(spencer_boundary_rows(t, k, target), t.r * target.size());
}

inline std::vector<std::size_t> spencer_dims(const Tableau& t, std::size_t kmax = 0) {
    if (kmax == 0) kmax = std::min<std::size_t>(t.n, 4);
    if (kmax > t.n) throw std::invalid_argument("spencer_dims: degree exceeds n");
    std::vector<std::size_t> h;
    for (std::size_t k = 1; k <= kmax; ++k) {
        ExtBasis target = ExtBasis::make(t.n, k);
        auto rowsk = spencer_boundary_rows(t, k, target);
        std::size_t rk = rowsk.empty() ? 0 : rank(from_rows(rowsk, t.r * target.size()));
        h.push_back(t.r * target.size() - rk);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Characteristic covectors (linear test), Cartan's test, and the wedge-by-phi
// exactness sequence.

// Basis of {w in W : w (x) phi in A}.  Nonempty iff phi is characteristic.
inline std::vector<RatVec> characteristic_space(const Tableau& t, const RatVec& phi) {
    if (phi.size() != t.n) throw std::invalid_argument("characteristic_space: bad covector");
    const std::size_t s = t.dim();
    RatMat sys(t.r * t.n, t.r + s);
    for (std::size_t a = 0; a < t.r; ++a)
        for (std::size_t i = 0; i < t.n; ++i) {
            sys(a * t.n + i, a) = phi[i];
            for (std::size_t k = 0; k < s; ++k) sys(a * t.n + i, t.r + k) = -t.basis[k](a, i);
        }
    auto ker = kernel_basis(sys);
    std::vector<RatVec> ws;
    for (const auto& v : ker) ws.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(t.r));
    if (ws.empty()) return {};
    RatMat m = from_rows(ws, t.r);
    std::size_t rk = rref(m);
    std::vector<RatVec> basis;
    for (std::size_t i = 0; i < rk; ++i) basis.push_back(m.row(i));
    return basis;
}

inline CartanTest cartan_test(const Tableau& t, const Frame& f) {
    return cartan_test(f.chars, prolongation(t).dim());
}

// Quadratic criteria and Cartan's test in one report.
inline InvolutivityReport involutivity_test_full(const Tableau& t, const Frame& f) {
    InvolutivityReport rep = involutivity_test(blocks(symbol_coeffs(t, f)));
    CartanTest ct = cartan_test(t, f);
    rep.cartan_checked = true;
    rep.cartan_lhs = ct.lhs;
    rep.cartan_rhs = ct.rhs;
    return rep;
}

// Exactness of 0 -> W -> H^1 -> H^2 -> ... -> H^n -> 0, all maps induced by
// wedging with phi.  Only meaningful for involutive tableaux and
// non-characteristic phi; a characteristic phi is reported and nothing else
// is computed.
struct QuillenReport {
    bool phi_noncharacteristic = false;
    std::vector<std::size_t> h_dims;     // dim H^k, k = 1..n
    std::vector<std::size_t> map_ranks;  // W -> H^1, then H^k -> H^{k+1}
    std::vector<bool> exact_at;          // positions W, H^1, ..., H^n
    bool compositions_zero = true;
    bool exact = false;

    std::string str() const {
        std::ostringstream out;
        if (!phi_noncharacteristic) {
            out << "wedge sequence: skipped (characteristic covector)";
            return out.str();
        }
        out << "wedge sequence: 0 -> W";
        for (std::size_t k = 0; k < h_dims.size(); ++k) out << " -> H^" << k + 1;
        out << " -> 0 is " << (exact ? "exact" : "NOT exact") << "; dims";
        for (auto d : h_dims) out << " " << d;
        return out.str();
    }
};

inline QuillenReport quillen_exactness_check(const Tableau& t, const RatVec& phi) {
    QuillenReport rep;
    rep.phi_noncharacteristic = characteristic_space(t, phi).empty();
    if (!rep.phi_noncharacteristic) return rep;

    const std::size_t n = t.n;
    std::vector<ExtBasis> ext;
    std::vector<Quotient> quot;
    for (std::size_t k = 1; k <= n; ++k) {
        ext.push_back(ExtBasis::make(n, k));
        quot.push_back(spencer_quotient(t, k, ext.back()));
        rep.h_dims.push_back(quot.back().dim());
    }

    // Map 0: W -> H^1 by w -> [w (x) phi].
    std::vector<RatMat> maps;
    {
        RatMat m0(quot[0].dim(), t.r);
        for (std::size_t a = 0; a < t.r; ++a) {
            RatVec v(t.r * n, Rat(0));
            for (std::size_t i = 0; i < n; ++i) v[a * n + i] = phi[i];
            RatVec img = quot[0].project(std::move(v));
            for (std::size_t e = 0; e < img.size(); ++e) m0(e, a) = img[e];
        }
        maps.push_back(std::move(m0));
    }
    // Maps k: H^k -> H^{k+1} on the representative basis e_c of the quotient.
    for (std::size_t k = 1; k < n; ++k) {
        const Quotient& src = quot[k - 1];
        const Quotient& dst = quot[k];
        const ExtBasis& esrc = ext[k - 1];
        const ExtBasis& edst = ext[k];
        RatMat mk(dst.dim(), src.dim());
        for (std::size_t c = 0; c < src.dim(); ++c) {
            std::size_t flat = src.free_cols[c];
            std::size_t a = flat / esrc.size();
            const auto& S = esrc.subsets[flat % esrc.size()];
            RatVec v(t.r * edst.size(), Rat(0));
            for (std::size_t j = 0; j < n; ++j) {
                if (phi[j] == 0) continue;
                auto w = wedge_right(S, j);
                if (!w) continue;
                v[a * edst.size() + edst.index.at(w->second)] += Rat(w->first) * phi[j];
            }
            RatVec img = dst.project(std::move(v));
            for (std::size_t e = 0; e < img.size(); ++e) mk(e, c) = img[e];
        }
        maps.push_back(std::move(mk));
    }

    for (const auto& m : maps) rep.map_ranks.push_back(rank(m));
    for (std::size_t k = 0; k + 1 < maps.size(); ++k)
        if (!(maps[k + 1] * maps[k]).is_zero()) rep.compositions_zero = false;

    // Exactness: at W the first map is injective; at H^k the incoming rank
    // complements the outgoing kernel; at H^n the last map is onto.
    rep.exact_at.push_back(rep.map_ranks[0] == t.r);
    for (std::size_t k = 1; k <= n; ++k) {
        std::size_t incoming = rep.map_ranks[k - 1];
        std::size_t outgoing = (k < n) ? rep.map_ranks[k] : 0;
        rep.exact_at.push_back(incoming + outgoing == rep.h_dims[k - 1]);
    }
    rep.exact = rep.compositions_zero;
    for (bool b : rep.exact_at) rep.exact = rep.exact && b;
    return rep;
}

// ---------------------------------------------------------------------------
// The restriction sequence 0 -> W (x) S^2(U-perp) -> H^1 (x) U-perp -> H^2 in
// the coordinates of a generic frame: U-perp is spanned by the trailing
// n - ell covectors, W (x) U-perp injects into H^1 because those columns hold
// no generators, and the second map skews the two covector slots.
struct GuilleminReport {
    bool vacuous = false;  // ell = n, U-perp = 0
    std::size_t dim_src = 0, dim_mid = 0, dim_h2 = 0;
    std::size_t rank_inclusion = 0, rank_delta = 0;
    bool compositions_zero = true;
    bool injective = false, middle_exact = false;

    bool exact() const { return vacuous || (injective && middle_exact); }

    std::string str() const {
        std::ostringstream out;
        out << "restriction sequence: 0 -> " << dim_src << " -> " << dim_mid << " -> " << dim_h2
            << (vacuous ? " (vacuous)" : exact() ? " exact" : " NOT exact");
        return out.str();
    }
};

inline GuilleminReport guillemin_sequence_check(const Tableau& t, const Frame& f) {
    GuilleminReport rep;
    const std::size_t n = t.n, r = t.r, ell = f.ell;
    if (ell == n) {
        rep.vacuous = true;
        return rep;
    }
    Tableau tt = t.transformed(f.gW, f.gV);
    const std::size_t q = n - ell;

    ExtBasis e1 = ExtBasis::make(n, 1), e2 = ExtBasis::make(n, 2);
    Quotient q1 = spencer_quotient(tt, 1, e1);
    Quotient q2 = spencer_quotient(tt, 2, e2);

    rep.dim_mid = q1.dim() * q;
    rep.dim_h2 = q2.dim();

    // Source basis: (a, {rho <= sig}) with rho, sig in the trailing range.
    std::vector<std::pair<std::size_t, std::size_t>> sym_pairs;
    for (std::size_t rho = ell; rho < n; ++rho)
        for (std::size_t sig = rho; sig < n; ++sig) sym_pairs.emplace_back(rho, sig);
    rep.dim_src = r * sym_pairs.size();

    // Inclusion: w_a (x) u^rho . u^sig -> [w_a (x) u^rho] (x) u^sig
    //                                   + [w_a (x) u^sig] (x) u^rho.
    RatMat incl(rep.dim_mid, rep.dim_src);
    std::size_t col = 0;
    for (std::size_t a = 0; a < r; ++a)
        for (auto [rho, sig] : sym_pairs) {
            auto place = [&](std::size_t cov, std::size_t slot) {
                RatVec v(r * n, Rat(0));
                v[a * n + cov] = 1;
                RatVec img = q1.project(std::move(v));
                for (std::size_t e = 0; e < img.size(); ++e)
                    incl(e * q + (slot - ell), col) += img[e];
            };
            place(rho, sig);
            if (sig != rho) place(sig, rho);
            ++col;
        }
    rep.rank_inclusion = rank(incl);
    rep.injective = (rep.rank_inclusion == rep.dim_src);

    // Skewing map on the representative basis of H^1 (x) U-perp.
    RatMat dl(rep.dim_h2, rep.dim_mid);
    for (std::size_t c = 0; c < q1.dim(); ++c) {
        std::size_t flat = q1.free_cols[c];
        std::size_t a = flat / n, i = flat % n;
        for (std::size_t sig = ell; sig < n; ++sig) {
            RatVec v(r * e2.size(), Rat(0));
            if (i != sig) {
                auto w = wedge_right(std::vector<std::size_t>{i}, sig);
                v[a * e2.size() + e2.index.at(w->second)] = Rat(w->first);
            }
            RatVec img = q2.project(std::move(v));
            for (std::size_t e = 0; e < img.size(); ++e) dl(e, c * q + (sig - ell)) = img[e];
        }
    }
    rep.rank_delta = rank(dl);
    rep.compositions_zero = (dl * incl).is_zero();
    rep.middle_exact =
        rep.compositions_zero && (rep.rank_delta == rep.dim_mid - rep.rank_inclusion);
    return rep;
}

// ---------------------------------------------------------------------------
// Rank-one elements and the prolongation: w (x) xi in A forces
// (w (x) xi) (x) xi in A^(1), and conversely every element of A^(1) of the
// form pi (x) xi has pi itself of rank one with row space along xi.
struct Rank1Sample {
    RatVec w, xi;
};

struct Rank1ProlongReport {
    std::size_t forward_checked = 0, forward_failed = 0;
    std::size_t converse_checked = 0, converse_failed = 0;

    bool ok() const { return forward_failed == 0 && converse_failed == 0; }
};

inline Rank1ProlongReport rank1_prolong_check(const Tableau& t,
                                              const std::vector<Rank1Sample>& samples) {
    Rank1ProlongReport rep;
    const std::size_t s = t.dim(), n = t.n, r = t.r;
    DeltaMap d = s > 0 ? delta_matrix(t) : DeltaMap{};

    for (const auto& smp : samples) {
        if (smp.w.size() != r || smp.xi.size() != n)
            throw std::invalid_argument("rank1_prolong_check: sample shape");

        // Forward: w (x) xi must lie in A, and its tensor with xi in ker delta.
        ++rep.forward_checked;
        RatMat outer(r, n);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t i = 0; i < n; ++i) outer(a, i) = smp.w[a] * smp.xi[i];
        auto alpha = coords_in_tableau(t, outer);
        bool fwd = alpha.has_value();
        if (fwd) {
            RatVec c = tensor_with_covector(t, *alpha, smp.xi);
            RatVec img = d.mat.apply(c);
            for (const auto& x : img) fwd = fwd && (x == 0);
        }
        if (!fwd) ++rep.forward_failed;

        // Converse: every pi in A with pi (x) xi symmetric factors as
        // w' (x) xi.  Solve the linear condition inside A, then factor each
        // basis solution exactly.
        RatMat sys(r * n * (n - 1) / 2, s);
        std::size_t row = 0;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    for (std::size_t k = 0; k < s; ++k)
                        sys(row, k) = t.basis[k](a, i) * smp.xi[j] - t.basis[k](a, j) * smp.xi[i];
                    ++row;
                }
        for (const auto& cv : kernel_basis(sys)) {
            ++rep.converse_checked;
            RatMat pi(r, n);
            for (std::size_t k = 0; k < s; ++k) pi = pi + t.basis[k] * cv[k];
            // factor pi = w' (x) xi: each row must be a multiple of xi
            bool good = true;
            std::size_t lead = 0;
            while (lead < n && smp.xi[lead] == 0) ++lead;
            if (lead == n) {
                good = pi.is_zero();
            } else {
                for (std::size_t a = 0; a < r && good; ++a) {
                    Rat scale = pi(a, lead) / smp.xi[lead];
                    for (std::size_t i = 0; i < n; ++i)
                        good = good && (pi(a, i) == scale * smp.xi[i]);
                }
            }
            if (!good) ++rep.converse_failed;
        }
    }
    return rep;
}

}  // namespace eds
