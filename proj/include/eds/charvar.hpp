#pragma once

// The characteristic variety of a tableau, computed exactly:
//
//   * rank-1 ideal: 2x2 minors of the parametrized element pi(alpha),
//     linearly interreduced to a canonical generator list;
//   * characteristic ideal: the per-column determinants
//     d_i = det(sum_lambda xi_lambda B^lambda_i - xi_i I), plus the
//     restriction of the ideal to the mutual eigenspace over a generic base
//     covector (whose roots are the characteristic sheets);
//   * mutual eigenspaces W^1(phi) and characteristic sheets over phi, with
//     exact rational eigenvalue extraction and squarefree reporting of the
//     irrational part;
//   * scheme summaries (projective dimension ell-1, degree s_ell, component
//     table with multiplicities and fiber dimensions at a generic sample);
//   * restriction/commutation checks for the Guillemin normal form;
//   * the rank-1 incidence correspondence (eigenvector condition in both
//     directions);
//   * determined-tableau predicates, the symbol isomorphism sigma_phi, and a
//     finite hyperbolicity probe (real spectrum via Sturm counts plus
//     diagonalizability of rational eigenvalues).
//
// Everything is over Q.  Complex characteristic points are never
// approximated: they are carried implicitly as squarefree factors with
// multiplicity.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "involutive.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "polymat.hpp"
#include "prolong.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "tableau.hpp"
#include "univar.hpp"
#include "vartable.hpp"

namespace eds {

// Coefficient variables a0..a{s-1} of a tableau basis combination.
inline VarTablePtr alpha_vars(std::size_t s) { return VarTable::indexed("a", s); }

// Covector coordinate variables xi1..xin (1-based names, matching the column
// indices they pair with).
inline VarTablePtr xi_vars(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back("xi" + std::to_string(i));
    return VarTable::make(std::move(names));
}

namespace detail {

// Scale to coprime integer coefficients with a positive leading (grlex)
// coefficient — the canonical representative of the line through p.
inline MPoly primitive_part(const MPoly& p) {
    if (p.is_zero()) return p;
    Int den(1);
    for (const auto& [e, c] : p.terms()) den = lcm(den, rat_den(c));
    Int num(0);
    for (const auto& [e, c] : p.terms()) num = gcd(num, rat_num(c * Rat(den)));
    Rat scale = Rat(den) / Rat(num);  // num != 0
    if (p.terms().begin()->second * scale < 0) scale = -scale;
    return p * scale;
}

inline RatMat outer(const RatVec& w, const RatVec& xi) {
    RatMat m(w.size(), xi.size());
    for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t i = 0; i < xi.size(); ++i) m(a, i) = w[a] * xi[i];
    return m;
}

inline bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rank-1 ideal.

// Generators of the ideal of rank-<=1 elements inside the span: every 2x2
// minor of pi(alpha) = sum_k alpha_k basis_k, with the identically-zero minors
// dropped and the survivors linearly interreduced (row reduction over the
// monomial coordinates).  Each generator is integer-primitive with positive
// leading coefficient, ordered by decreasing leading monomial.
struct RankOneIdeal {
    VarTablePtr vars;  // a0..a{s-1}
    std::vector<MPoly> generators;
};

inline RankOneIdeal rank1_ideal(const Tableau& t) {
    const std::size_t s = t.dim();
    RankOneIdeal out;
    out.vars = alpha_vars(s);
    if (t.r < 2 || t.n < 2 || s == 0) return out;  // every element has rank <= 1

    PolyMat pi(t.r, t.n, MPoly(out.vars));
    for (std::size_t k = 0; k < s; ++k) {
        MPoly ak = MPoly::var(out.vars, k);
        for (std::size_t a = 0; a < t.r; ++a)
            for (std::size_t i = 0; i < t.n; ++i)
                if (t.basis[k](a, i) != 0) pi(a, i) += ak * t.basis[k](a, i);
    }

    std::vector<MPoly> minors;
    for (std::size_t a = 0; a < t.r; ++a)
        for (std::size_t b = a + 1; b < t.r; ++b)
            for (std::size_t i = 0; i < t.n; ++i)
                for (std::size_t j = i + 1; j < t.n; ++j) {
                    MPoly m = pi(a, i) * pi(b, j) - pi(a, j) * pi(b, i);
                    if (!m.is_zero()) minors.push_back(std::move(m));
                }
    if (minors.empty()) return out;

    // Linear interreduction: monomials (grlex-descending) index the columns.
    std::vector<Expo> monos;
    for (const auto& m : minors)
        for (const auto& [e, c] : m.terms()) monos.push_back(e);
    std::sort(monos.begin(), monos.end(), GrlexGreater{});
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    auto col_of = [&](const Expo& e) {
        return std::lower_bound(monos.begin(), monos.end(), e, GrlexGreater{}) - monos.begin();
    };
    RatMat rows(minors.size(), monos.size());
    for (std::size_t k = 0; k < minors.size(); ++k)
        for (const auto& [e, c] : minors[k].terms()) rows(k, col_of(e)) = c;
    std::size_t rk = rref(rows);
    for (std::size_t k = 0; k < rk; ++k) {
        MPoly g(out.vars);
        for (std::size_t c = 0; c < monos.size(); ++c)
            if (rows(k, c) != 0) g.add_term(monos[c], rows(k, c));
        out.generators.push_back(detail::primitive_part(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mutual eigenspaces W^1(phi).

namespace detail {

// Rows cutting out W^1(phi) inside W: the stacked constraints
// (sum_lambda phi_lambda B^lambda_mu - phi_mu I) w = 0 for mu = 1..ell,
// together with the coordinate conditions w_a = 0 for a > s_{lambda_min}
// placing w in W^-(phi).  (The coordinate rows are implied by the mu =
// lambda_min block, since B^lambda_mu = 0 for mu < lambda; they are kept so
// the containment is explicit.)
inline RatMat w1_system(const SymbolBlocks& blk, const RatVec& phi) {
    if (phi.size() != blk.ell) throw std::invalid_argument("w1_system: phi must have ell entries");
    if (is_zero_vec(phi)) throw std::invalid_argument("w1_system: phi must be nonzero");
    std::size_t lam_min = 0;
    while (phi[lam_min] == 0) ++lam_min;
    const std::size_t s_min = blk.chars[lam_min];

    RatMat sys(blk.ell * blk.r + (blk.r - s_min), blk.r);
    for (std::size_t mu = 0; mu < blk.ell; ++mu) {
        RatMat m(blk.r, blk.r);
        for (std::size_t lam = 0; lam < blk.ell; ++lam)
            if (phi[lam] != 0) m = m + blk.b[lam][mu] * phi[lam];
        for (std::size_t a = 0; a < blk.r; ++a) m(a, a) -= phi[mu];
        for (std::size_t a = 0; a < blk.r; ++a)
            for (std::size_t b = 0; b < blk.r; ++b) sys(mu * blk.r + a, b) = m(a, b);
    }
    for (std::size_t a = s_min; a < blk.r; ++a) sys(blk.ell * blk.r + (a - s_min), a) = 1;
    return sys;
}

}  // namespace detail

// Basis of W^1(phi) = { w in W^-(phi) : B(phi)(u_mu) w = phi_mu w for all
// mu <= ell }, the space of mutual eigenvectors over the base covector phi.
inline std::vector<RatVec> mutual_eigenspace(const SymbolBlocks& blk, const RatVec& phi) {
    return kernel_basis(detail::w1_system(blk, phi));
}

// A base covector certified generic by batch minimum: `batch` seeded draws
// with entries in [-20, 20], keeping the first one whose W^1 dimension
// attains the minimum over the batch.  (dim W^1 is upper-semicontinuous, so
// the batch minimum is the generic value with overwhelming probability.)
struct GenericCovector {
    RatVec phi;
    std::vector<RatVec> w1;
};

inline GenericCovector generic_covector(const SymbolBlocks& blk, std::uint64_t seed,
                                        std::size_t batch = 12) {
    if (blk.ell == 0) throw std::invalid_argument("generic_covector: tableau has no principal columns");
    Rng rng(seed);
    std::vector<RatVec> draws;
    std::vector<std::size_t> dims;
    std::size_t min_dim = blk.r + 1;
    for (std::size_t k = 0; k < batch; ++k) {
        RatVec phi = rng.rat_vec(blk.ell, -20, 20);
        while (detail::is_zero_vec(phi)) phi = rng.rat_vec(blk.ell, -20, 20);
        draws.push_back(phi);
        dims.push_back(mutual_eigenspace(blk, phi).size());
        min_dim = std::min(min_dim, dims.back());
    }
    for (std::size_t k = 0; k < batch; ++k)
        if (dims[k] == min_dim) return {draws[k], mutual_eigenspace(blk, draws[k])};
    throw std::logic_error("generic_covector: unreachable");
}

// Representation matrix of op restricted to span(basis), or nullopt if the
// span is not op-invariant.
inline std::optional<RatMat> restrict_to_span(const RatMat& op, const std::vector<RatVec>& basis) {
    const std::size_t k = basis.size();
    RatMat rep(k, k);
    if (k == 0) return rep;
    RatMat cols = from_cols(basis, op.rows());
    for (std::size_t j = 0; j < k; ++j) {
        auto c = solve(cols, op.apply(basis[j]));
        if (!c) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i) rep(i, j) = (*c)[i];
    }
    return rep;
}

// Exact membership of the rank-1 element w (x) xi in the tableau cut out by
// the symbol blocks: sum_lambda xi_lambda B^lambda_i w = xi_i w for every
// column i.  (Rows below the shaded block reproduce the defining relations;
// the shaded rows hold identically.)
inline bool symbol_membership(const SymbolBlocks& blk, const RatVec& w, const RatVec& xi) {
    if (w.size() != blk.r || xi.size() != blk.n)
        throw std::invalid_argument("symbol_membership: dimension mismatch");
    for (std::size_t i = 0; i < blk.n; ++i) {
        RatVec lhs(blk.r, Rat(0));
        for (std::size_t lam = 0; lam < blk.ell; ++lam) {
            if (xi[lam] == 0) continue;
            RatVec img = blk.b[lam][i].apply(w);
            for (std::size_t a = 0; a < blk.r; ++a) lhs[a] += xi[lam] * img[a];
        }
        for (std::size_t a = 0; a < blk.r; ++a)
            if (lhs[a] != xi[i] * w[a]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Characteristic ideal.

// Per-column determinants d_i = det(sum_lambda xi_lambda B^lambda_i - xi_i I)
// in Q[xi1..xin], plus the restriction over a seeded generic base covector:
// for each rho > ell, the monic characteristic polynomial of B(phi)(u_rho)
// acting on W^1(phi).  The roots of the restricted polynomials are the
// xi_rho-coordinates of the characteristic sheets over phi.
struct CharIdeal {
    std::size_t n = 0, ell = 0;
    VarTablePtr vars;               // xi1..xin
    std::vector<MPoly> d;           // d[i], 0-based column index
    RatVec phi;                     // the generic base covector used below
    std::vector<RatVec> w1;         // basis of W^1(phi)
    bool restricted_ok = true;      // false if W^1(phi) is not invariant (non-involutive input)
    std::vector<UPoly> restricted;  // per rho = ell+1..n, in that order
};

inline CharIdeal char_ideal(const SymbolBlocks& blk, std::uint64_t seed = 0) {
    CharIdeal out;
    out.n = blk.n;
    out.ell = blk.ell;
    out.vars = xi_vars(blk.n);
    for (std::size_t i = 0; i < blk.n; ++i) {
        PolyMat m(blk.r, blk.r, MPoly(out.vars));
        for (std::size_t lam = 0; lam < blk.ell; ++lam) {
            MPoly xl = MPoly::var(out.vars, lam);
            for (std::size_t a = 0; a < blk.r; ++a)
                for (std::size_t b = 0; b < blk.r; ++b)
                    if (blk.b[lam][i](a, b) != 0) m(a, b) += xl * blk.b[lam][i](a, b);
        }
        MPoly xi = MPoly::var(out.vars, i);
        for (std::size_t a = 0; a < blk.r; ++a) m(a, a) -= xi;
        out.d.push_back(poly_det(m));
    }

    auto gen = generic_covector(blk, seed);
    out.phi = gen.phi;
    out.w1 = gen.w1;
    for (std::size_t rho = blk.ell; rho < blk.n; ++rho) {
        RatVec v(blk.n, Rat(0));
        v[rho] = 1;
        auto rep = restrict_to_span(B_eval(blk, out.phi, v), out.w1);
        if (!rep) {
            out.restricted_ok = false;
            break;
        }
        out.restricted.push_back(char_poly(*rep));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Characteristic sheets over a base covector.

// One sheet of the characteristic variety over phi.  Rational sheets carry
// the full eigenvalue extension xi_{ell+1}..xi_n and a basis of simultaneous
// eigenvectors; irrational sheets carry the rational prefix of the extension
// plus the squarefree factor (in the xi-coordinate of the named column) that
// their remaining eigenvalues satisfy.
struct EigenSheet {
    RatVec phi;
    bool rational = true;
    RatVec xi_ext;                                       // full (rational) or prefix (implicit)
    std::vector<std::pair<std::size_t, UPoly>> factors;  // implicit part: (1-based column, factor)
    std::size_t multiplicity = 1;                        // generalized-eigenspace dimension share
    std::vector<RatVec> vectors;                         // eigenvector basis inside W^1(phi)
    std::size_t fiber_dim = 0;
    bool membership_ok = true;  // rational sheets: each vector w has w (x) xi in the tableau
};

struct FiberReport {
    bool invariant = true;  // every B(phi)(u_rho) preserves W^1(phi) and its refinements
    std::size_t dim_w1 = 0;
    std::vector<EigenSheet> sheets;

    bool ok() const {
        if (!invariant) return false;
        for (const auto& s : sheets)
            if (!s.membership_ok) return false;
        return true;
    }
};

// Simultaneous generalized eigenstructure of B(phi)(u_rho), rho > ell, on
// W^1(phi).  Buckets are refined column by column: a rational eigenvalue of
// algebraic multiplicity m splits off its generalized eigenspace
// ker (R - cI)^m; the root-free part of the characteristic polynomial is
// reported one squarefree factor at a time, terminally.  Non-invariance of
// any bucket (impossible for involutive inputs, where the restricted maps
// commute) aborts with invariant = false.
inline FiberReport xi_fibers(const SymbolBlocks& blk, const RatVec& phi) {
    FiberReport rep;
    auto w1 = mutual_eigenspace(blk, phi);
    rep.dim_w1 = w1.size();
    if (w1.empty()) return rep;
    const std::size_t q = blk.n - blk.ell;

    std::vector<RatMat> ops;  // ambient B(phi)(u_rho), rho = ell..n-1 (0-based)
    for (std::size_t rho = blk.ell; rho < blk.n; ++rho) {
        RatVec v(blk.n, Rat(0));
        v[rho] = 1;
        ops.push_back(B_eval(blk, phi, v));
    }

    auto map_out = [](const std::vector<RatVec>& basis, const std::vector<RatVec>& coords) {
        std::vector<RatVec> out;
        if (coords.empty()) return out;
        RatMat cols = from_cols(basis, basis[0].size());
        for (const auto& c : coords) out.push_back(cols.apply(c));
        return out;
    };

    std::function<void(const std::vector<RatVec>&, const RatVec&, std::size_t)> refine =
        [&](const std::vector<RatVec>& bucket, const RatVec& ext, std::size_t step) {
            if (!rep.invariant) return;
            if (step == q) {
                EigenSheet s;
                s.phi = phi;
                s.xi_ext = ext;
                s.multiplicity = bucket.size();
                // Simultaneous eigenvectors inside W^1(phi) for this tuple.
                RatMat sys(detail::w1_system(blk, phi));
                RatMat full(sys.rows() + q * blk.r, blk.r);
                for (std::size_t i = 0; i < sys.rows(); ++i)
                    for (std::size_t j = 0; j < blk.r; ++j) full(i, j) = sys(i, j);
                for (std::size_t k = 0; k < q; ++k)
                    for (std::size_t a = 0; a < blk.r; ++a)
                        for (std::size_t b = 0; b < blk.r; ++b)
                            full(sys.rows() + k * blk.r + a, b) =
                                ops[k](a, b) - (a == b ? ext[k] : Rat(0));
                s.vectors = kernel_basis(full);
                s.fiber_dim = s.vectors.size();
                RatVec xi(blk.n, Rat(0));
                for (std::size_t lam = 0; lam < blk.ell; ++lam) xi[lam] = phi[lam];
                for (std::size_t k = 0; k < q; ++k) xi[blk.ell + k] = ext[k];
                for (const auto& w : s.vectors)
                    if (!symbol_membership(blk, w, xi)) s.membership_ok = false;
                rep.sheets.push_back(std::move(s));
                return;
            }
            auto r0 = restrict_to_span(ops[step], bucket);
            if (!r0) {
                rep.invariant = false;
                return;
            }
            const RatMat& R = *r0;
            UPoly p = char_poly(R);
            auto rr = rational_roots(p);
            for (const auto& root : rr.roots) {
                RatMat shifted = R;
                for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= root.root;
                RatMat power = RatMat::identity(R.rows());
                for (std::size_t k = 0; k < root.multiplicity; ++k) power = power * shifted;
                auto sub = map_out(bucket, kernel_basis(power));
                RatVec ext2 = ext;
                ext2.push_back(root.root);
                refine(sub, ext2, step + 1);
            }
            if (up_deg(rr.cofactor) >= 1) {
                for (const auto& f : squarefree_decomposition(rr.cofactor).factors) {
                    EigenSheet s;
                    s.phi = phi;
                    s.rational = false;
                    s.xi_ext = ext;
                    s.factors.emplace_back(blk.ell + step + 1, f.factor);
                    s.multiplicity = f.multiplicity;
                    s.vectors = map_out(bucket, kernel_basis(up_apply(f.factor, R)));
                    s.fiber_dim = s.vectors.size() / static_cast<std::size_t>(up_deg(f.factor));
                    rep.sheets.push_back(std::move(s));
                }
            }
        };
    refine(w1, RatVec{}, 0);
    return rep;
}

// ---------------------------------------------------------------------------
// Scheme summary.

struct SchemeComponent {
    UPoly factor;  // monic factor of the restricted characteristic polynomial
    std::size_t multiplicity = 1;
    std::size_t fiber_dim = 0;
};

// Components of the characteristic polynomial of B(phi)(v) on span(w1):
// rational roots first (ascending, exact), then the squarefree factors of the
// root-free cofactor.  Fiber dimensions are eigenvector-space dimensions per
// point: nullity(f(M)) / deg f.
inline std::vector<SchemeComponent> restricted_components(const SymbolBlocks& blk,
                                                          const RatVec& phi,
                                                          const std::vector<RatVec>& w1,
                                                          const RatVec& v) {
    auto rep = restrict_to_span(B_eval(blk, phi, v), w1);
    if (!rep) throw std::runtime_error("restricted_components: W^1(phi) is not invariant");
    const RatMat& m = *rep;
    UPoly p = char_poly(m);
    std::vector<SchemeComponent> out;
    auto rr = rational_roots(p);
    for (const auto& root : rr.roots) {
        RatMat shifted = m;
        for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= root.root;
        out.push_back({UPoly{-root.root, Rat(1)}, root.multiplicity, kernel_basis(shifted).size()});
    }
    if (up_deg(rr.cofactor) >= 1)
        for (const auto& f : squarefree_decomposition(rr.cofactor).factors)
            out.push_back({f.factor, f.multiplicity,
                           kernel_basis(up_apply(f.factor, m)).size() /
                               static_cast<std::size_t>(up_deg(f.factor))});
    return out;
}

// Scheme-theoretic summary of the characteristic variety: projective
// dimension ell-1 and degree s_ell (meaningful when the tableau is
// involutive), with the component table computed at a seeded generic pair
// (phi, v): base covector by batch-minimum W^1 dimension, direction v in the
// complement span(u_{ell+1}..u_n) by finest factorization over 5 draws.
struct SchemeSummary {
    bool involutive = false;
    std::string label;  // empty when the dim/degree theorems apply
    std::size_t ell = 0, s_ell = 0;
    std::size_t dim = 0;     // ell - 1 (projective); 0 for the empty variety
    std::size_t degree = 0;  // s_ell
    RatVec phi;              // generic base covector (ell entries)
    RatVec v;                // generic direction (n entries, first ell zero)
    std::vector<SchemeComponent> components;

    std::string str() const {
        std::ostringstream os;
        os << "characteristic scheme: ";
        if (!label.empty() && components.empty() && s_ell == 0) {
            os << label << "\n";
            return os.str();
        }
        os << "dim " << dim << ", degree " << degree;
        os << (label.empty() ? " (involutive)" : " (" + label + ")") << "\n";
        if (ell > 0 && !phi.empty()) {
            os << "  base covector phi = (";
            for (std::size_t i = 0; i < phi.size(); ++i)
                os << (i ? ", " : "") << rat_str(phi[i]);
            os << ")\n";
        }
        if (components.empty()) {
            os << "  components: none (restriction space is trivial, l = n)\n";
            return os.str();
        }
        os << "  direction v = (";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << rat_str(v[i]);
        os << ")\n";
        os << "  components (factor | multiplicity | fiber dim):\n";
        for (const auto& c : components)
            os << "    " << up_str(c.factor) << " | " << c.multiplicity << " | " << c.fiber_dim
               << "\n";
        return os.str();
    }
};

inline SchemeSummary scheme_summary(const Tableau& t, std::uint64_t seed = 0) {
    SchemeSummary out;
    if (t.dim() == 0) {
        out.involutive = true;
        out.label = "empty (zero tableau)";
        return out;
    }
    Frame f = generic_frame(t, seed);
    out.ell = f.ell;
    out.s_ell = f.s_ell;
    out.dim = f.ell == 0 ? 0 : f.ell - 1;
    out.degree = f.s_ell;

    auto ev = endovolutivize(t, f, seed);
    if (!ev) {
        out.label = "non-involutive - degree/dim theorems not applicable";
        return out;
    }
    auto report = involutivity_test_full(t, ev->frame);
    out.involutive = report.involutive();

    const SymbolBlocks& blk = ev->blocks;
    auto gen = generic_covector(blk, seed);
    out.phi = gen.phi;
    if (!out.involutive) {
        // W^1 need not be invariant, so no restricted component table.
        out.label = "non-involutive - degree/dim theorems not applicable";
        return out;
    }
    if (blk.ell == blk.n) return out;  // nothing to restrict along

    Rng rng(seed + 1);
    std::vector<RatVec> vs;
    for (std::size_t k = 0; k < 5; ++k) {
        RatVec v(blk.n, Rat(0));
        do {
            for (std::size_t rho = blk.ell; rho < blk.n; ++rho) v[rho] = rng.rat(-20, 20);
        } while (detail::is_zero_vec(v));
        vs.push_back(v);
    }
    std::size_t best = 0, best_count = 0;
    std::vector<std::vector<SchemeComponent>> tables;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        tables.push_back(restricted_components(blk, gen.phi, gen.w1, vs[k]));
        if (tables[k].size() > best_count) {
            best_count = tables[k].size();
            best = k;
        }
    }
    out.v = vs[best];
    out.components = tables[best];
    return out;
}

// ---------------------------------------------------------------------------
// Guillemin normal-form check.

// Exact verification that B(phi)(v) preserves W^1(phi) and that B(phi)(v),
// B(phi)(vt) commute on it — the two conclusions of Guillemin normal form,
// guaranteed for involutive tableaux but checkable for any endovolutive one.
struct GuilleminCheck {
    std::size_t dim_w1 = 0;
    bool invariant_v = true, invariant_vt = true, commute = true;
    std::optional<std::size_t> witness;  // index of a W^1 basis vector the commutator moves

    bool ok() const { return invariant_v && invariant_vt && commute; }
};

inline GuilleminCheck guillemin_check(const SymbolBlocks& blk, const RatVec& phi, const RatVec& v,
                                      const RatVec& vt) {
    GuilleminCheck out;
    auto w1 = mutual_eigenspace(blk, phi);
    out.dim_w1 = w1.size();
    RatMat mv = B_eval(blk, phi, v), mvt = B_eval(blk, phi, vt);
    out.invariant_v = restrict_to_span(mv, w1).has_value();
    out.invariant_vt = restrict_to_span(mvt, w1).has_value();
    RatMat comm = mv * mvt - mvt * mv;
    for (std::size_t k = 0; k < w1.size(); ++k) {
        if (!detail::is_zero_vec(comm.apply(w1[k]))) {
            out.commute = false;
            out.witness = k;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Incidence correspondence.

// Forward: each sampled rank-1 element w (x) xi of the tableau is checked to
// satisfy the eigenvector condition B(xi)(v) w = xi(v) w at seeded v.
// Backward: sheets over seeded base covectors are reconstructed with
// xi_fibers and each rational sheet's w (x) xi is checked for membership in
// the tableau by direct linear algebra (independent of the symbol blocks).
struct IncidenceReport {
    bool vacuous = false;
    std::size_t forward_checked = 0, forward_failed = 0;
    std::size_t backward_checked = 0, backward_failed = 0;

    bool ok() const { return forward_failed == 0 && backward_failed == 0; }
};

inline IncidenceReport incidence_check(const Tableau& t, const std::vector<Rank1Sample>& samples,
                                       std::uint64_t seed = 0) {
    IncidenceReport out;
    if (t.dim() == 0) {
        out.vacuous = samples.empty();
        out.forward_checked = samples.size();
        for (const auto& smp : samples)
            if (!detail::is_zero_vec(smp.w) && !detail::is_zero_vec(smp.xi)) ++out.forward_failed;
        return out;
    }

    Frame f = generic_frame(t, seed);
    SymbolBlocks blk;
    if (auto ev = endovolutivize(t, f, seed)) {
        f = ev->frame;
        blk = ev->blocks;
    } else {
        blk = blocks(symbol_coeffs(t, f));
    }
    RatMat gW = f.gW, gV = f.gV;
    RatMat gWinv = *inverse(gW);
    RatMat gVinvT = inverse(gV)->transpose();

    Rng rng(seed + 17);
    for (const auto& smp : samples) {
        ++out.forward_checked;
        if (!coords_in_tableau(t, detail::outer(smp.w, smp.xi))) {
            ++out.forward_failed;  // not a member at all
            continue;
        }
        RatVec w2 = gW.apply(smp.w);
        RatVec xi2 = gVinvT.apply(smp.xi);
        RatVec phi2(xi2.begin(), xi2.begin() + blk.ell);
        bool good = true;
        for (std::size_t k = 0; k < 5 && good; ++k) {
            RatVec v = rng.rat_vec(blk.n, -20, 20);
            Rat xiv(0);
            for (std::size_t i = 0; i < blk.n; ++i) xiv += xi2[i] * v[i];
            RatVec lhs = detail::is_zero_vec(phi2) ? RatVec(blk.r, Rat(0))
                                                   : B_eval(blk, phi2, v).apply(w2);
            for (std::size_t a = 0; a < blk.r; ++a)
                if (lhs[a] != xiv * w2[a]) good = false;
        }
        if (!good) ++out.forward_failed;
    }

    RatMat gVT = gV.transpose();
    for (std::size_t trial = 0; trial < 3; ++trial) {
        RatVec phi2 = rng.rat_vec(blk.ell, -20, 20);
        while (detail::is_zero_vec(phi2)) phi2 = rng.rat_vec(blk.ell, -20, 20);
        auto fib = xi_fibers(blk, phi2);
        for (const auto& sheet : fib.sheets) {
            if (!sheet.rational) continue;
            RatVec xi2(blk.n, Rat(0));
            for (std::size_t lam = 0; lam < blk.ell; ++lam) xi2[lam] = phi2[lam];
            for (std::size_t k = 0; k < sheet.xi_ext.size(); ++k)
                xi2[blk.ell + k] = sheet.xi_ext[k];
            RatVec xi = gVT.apply(xi2);
            for (const auto& w2 : sheet.vectors) {
                ++out.backward_checked;
                RatVec w = gWinv.apply(w2);
                if (!coords_in_tableau(t, detail::outer(w, xi))) ++out.backward_failed;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Determined tableaux and the hyperbolicity probe.

// Determined: s_1 = ... = s_{n-1} = r and s_n = 0.
inline bool is_determined(const std::vector<std::size_t>& chars, std::size_t r) {
    if (chars.empty()) return false;
    for (std::size_t i = 0; i + 1 < chars.size(); ++i)
        if (chars[i] != r) return false;
    return chars.back() == 0;
}

inline bool is_determined(const SymbolBlocks& blk) { return is_determined(blk.chars, blk.r); }

// The symbol map W -> H^1 of a determined tableau in its endovolutive basis:
// sigma_phi = sum_{lambda < n} phi_lambda B^lambda_n - phi_n I.
inline RatMat sigma_phi(const SymbolBlocks& blk, const RatVec& phi) {
    if (!is_determined(blk)) throw std::invalid_argument("sigma_phi: tableau is not determined");
    if (phi.size() != blk.n) throw std::invalid_argument("sigma_phi: phi must have n entries");
    RatMat m(blk.r, blk.r);
    for (std::size_t lam = 0; lam + 1 < blk.n; ++lam)
        if (phi[lam] != 0) m = m + blk.b[lam][blk.n - 1] * phi[lam];
    for (std::size_t a = 0; a < blk.r; ++a) m(a, a) -= phi[blk.n - 1];
    return m;
}

// Finite probe of the space-like condition at phi: sigma_phi(phi) must be
// invertible, and for each sampled eta the pencil matrix
// sigma_phi(phi)^{-1} sigma_phi(eta) must have an all-real spectrum (Sturm
// count of the squarefree part equals its degree) with every rational
// eigenvalue's geometric multiplicity matching its algebraic one.
// Irrational eigenvalues leave diagonalizability unverified, so the probe
// reports `inconclusive` rather than `passed` when any appear.
struct HyperbolicProbe {
    enum class Status { passed, failed, inconclusive, characteristic };
    Status status = Status::passed;
    std::size_t checked = 0;
    std::optional<std::size_t> witness;  // index of the first failing eta
    bool irrational_seen = false;

    std::string str() const {
        switch (status) {
            case Status::passed:
                return "probe passed";
            case Status::failed:
                return "probe failed (eta #" + std::to_string(witness.value_or(0)) + ")";
            case Status::inconclusive:
                return "probe inconclusive (irrational eigenvalues present: realness verified, "
                       "diagonalizability unverified)";
            case Status::characteristic:
                return "phi is characteristic";
        }
        return "";
    }
};

inline HyperbolicProbe hyperbolic_probe(const SymbolBlocks& blk, const RatVec& phi,
                                        const std::vector<RatVec>& etas) {
    HyperbolicProbe out;
    RatMat sp = sigma_phi(blk, phi);
    auto inv = inverse(sp);
    if (!inv) {
        out.status = HyperbolicProbe::Status::characteristic;
        return out;
    }
    for (std::size_t k = 0; k < etas.size(); ++k) {
        ++out.checked;
        RatMat m = *inv * sigma_phi(blk, etas[k]);
        UPoly p = char_poly(m);
        UPoly sf{Rat(1)};
        for (const auto& fac : squarefree_decomposition(p).factors)
            sf = up_mul(sf, fac.factor);
        bool bad = up_deg(sf) >= 1 && real_root_count(sf) != static_cast<std::size_t>(up_deg(sf));
        auto rr = rational_roots(p);
        for (const auto& root : rr.roots) {
            RatMat shifted = m;
            for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= root.root;
            if (kernel_basis(shifted).size() != root.multiplicity) bad = true;
        }
        if (up_deg(rr.cofactor) >= 1) out.irrational_seen = true;
        if (bad) {
            out.status = HyperbolicProbe::Status::failed;
            out.witness = k;
            return out;
        }
    }
    out.status = out.irrational_seen ? HyperbolicProbe::Status::inconclusive
                                     : HyperbolicProbe::Status::passed;
    return out;
}

}  // namespace eds
