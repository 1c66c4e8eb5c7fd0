#pragma once

// Involutivity of a tableau via its symbol blocks.
//
// A block family is *endovolutive* when every B^lambda_i maps into the span of
// the first s_lambda basis vectors of W, i.e. vanishes outside its upper-left
// s_lambda x s_lambda corner.  For an endovolutive family, involutivity is
// equivalent to the vanishing of the quadratic combinations
//
//   (B^lambda_l B^mu_k - B^lambda_k B^mu_l)^a_b = 0
//     for all lambda < l < k,  lambda <= mu < k,  a > s_l,  all b,
//
// and independently to Cartan's test: s_1 + 2 s_2 + ... + ell s_ell equals the
// dimension of the prolongation.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tableau.hpp"

namespace eds {

inline bool is_endovolutive(const SymbolBlocks& blk) {
    for (std::size_t lam = 0; lam < blk.ell; ++lam) {
        std::size_t s_lam = blk.chars[lam];
        for (std::size_t i = 0; i < blk.n; ++i)
            for (std::size_t a = 0; a < blk.r; ++a)
                for (std::size_t b = 0; b < blk.r; ++b)
                    if ((a >= s_lam || b >= s_lam) && blk.at(lam, i)(a, b) != 0) return false;
    }
    return true;
}

// One failed quadratic condition, pinned to its indices (1-based, matching the
// convention in the file header) and the offending value.
struct QuadraticViolation {
    std::size_t lambda, mu, l, k;  // block indices
    std::size_t a, b;              // entry within the product difference
    Rat value;

    std::string str() const {
        std::ostringstream out;
        out << "(B^" << lambda << "_" << l << " B^" << mu << "_" << k << " - B^" << lambda << "_"
            << k << " B^" << mu << "_" << l << ")[" << a << "," << b << "] = " << rat_str(value);
        return out.str();
    }
};

struct InvolutivityReport {
    bool endovolutive = false;
    bool quadratic_ok = false;
    std::vector<QuadraticViolation> violations;

    // Filled by the prolongation-aware wrapper: the two sides of Cartan's test.
    bool cartan_checked = false;
    Int cartan_lhs{0}, cartan_rhs{0};

    bool involutive() const { return endovolutive && quadratic_ok; }
};

// Quadratic involutivity conditions on an endovolutive block family.  If the
// blocks are not endovolutive the quadratic sweep is skipped (the criterion
// presumes endovolutivity) and the report says so.
inline InvolutivityReport involutivity_test(const SymbolBlocks& blk) {
    InvolutivityReport rep;
    rep.endovolutive = is_endovolutive(blk);
    if (!rep.endovolutive) return rep;

    const auto& s = blk.chars;
    for (std::size_t lam = 1; lam <= blk.ell; ++lam)
        for (std::size_t l = lam + 1; l <= blk.n; ++l)
            for (std::size_t k = l + 1; k <= blk.n; ++k)
                for (std::size_t mu = lam; mu <= std::min(k - 1, blk.ell); ++mu) {
                    RatMat d = blk.at(lam - 1, l - 1) * blk.at(mu - 1, k - 1) -
                               blk.at(lam - 1, k - 1) * blk.at(mu - 1, l - 1);
                    for (std::size_t a = s[l - 1]; a < blk.r; ++a)
                        for (std::size_t b = 0; b < blk.r; ++b)
                            if (d(a, b) != 0)
                                rep.violations.push_back(
                                    {lam, mu, l, k, a + 1, b + 1, d(a, b)});
                }
    rep.quadratic_ok = rep.violations.empty();
    return rep;
}

// Search for a W-basis refinement making the symbol blocks endovolutive.
// Stages: (1) keep the current frame if it already works; (2) a greedy flag
// alignment — for lambda = ell down to 1, gather the images of all B^lambda_i
// and stack them into a nested flag, then change basis so the flag occupies
// leading coordinates; (3) seeded random W-bases within a fixed budget.
// Returns the refined frame and its blocks, or nullopt if every stage fails.
struct EndovolutiveResult {
    Frame frame;
    SymbolCoeffs coeffs;
    SymbolBlocks blocks;
};

inline std::optional<EndovolutiveResult> endovolutivize(const Tableau& t, const Frame& f,
                                                        std::uint64_t seed = 0,
                                                        std::size_t budget = 200) {
    auto attempt = [&](const RatMat& gW) -> std::optional<EndovolutiveResult> {
        if (!detail::shaded_entries_form_basis(t, gW, f.gV, f.chars)) return std::nullopt;
        Frame cand = Frame::checked(t, gW, f.gV);
        if (cand.chars != f.chars) return std::nullopt;
        SymbolCoeffs c;
        try {
            c = symbol_coeffs(t, cand);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        SymbolBlocks blk = blocks(c);
        if (!is_endovolutive(blk)) return std::nullopt;
        return EndovolutiveResult{std::move(cand), std::move(c), std::move(blk)};
    };

    // Greedy flag alignment starting from a frame in which the symbol blocks
    // are computable: in an endovolutive basis the columns of every B^lambda_i
    // land in the span of the first s_lambda coordinates, so the nested column
    // spans F_ell subset ... subset F_1 of the current blocks, moved to leading
    // positions, are the natural candidate flag.
    auto align = [&](const RatMat& base_gW) -> std::optional<EndovolutiveResult> {
        if (!detail::shaded_entries_form_basis(t, base_gW, f.gV, f.chars)) return std::nullopt;
        SymbolBlocks blk;
        try {
            Frame base = Frame::checked(t, base_gW, f.gV);
            if (base.chars != f.chars) return std::nullopt;
            blk = blocks(symbol_coeffs(t, base));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        std::vector<RatVec> flag_cols;  // grows from the deepest level outward
        for (std::size_t lam = blk.ell; lam-- > 0;) {
            for (std::size_t i = 0; i < blk.n; ++i)
                for (std::size_t col = 0; col < blk.r; ++col) {
                    RatVec v = blk.at(lam, i).col(col);
                    bool zero = true;
                    for (const auto& x : v) zero = zero && (x == 0);
                    if (!zero && !in_span(flag_cols, v)) flag_cols.push_back(v);
                }
            if (flag_cols.size() > blk.chars[lam]) return std::nullopt;  // flag too fat
        }
        std::vector<RatVec> basis_cols = flag_cols;
        for (std::size_t e = 0; e < blk.r && basis_cols.size() < blk.r; ++e) {
            RatVec unit(blk.r, Rat(0));
            unit[e] = 1;
            if (!in_span(basis_cols, unit)) basis_cols.push_back(unit);
        }
        auto Pinv = inverse(from_cols(basis_cols, blk.r));
        if (!Pinv) return std::nullopt;
        return attempt(*Pinv * base_gW);
    };

    // Stage 1: the frame as given, then its row permutations (cheap, and the
    // natural move when the tableau is presented in scrambled coordinates).
    if (auto res = attempt(f.gW)) return res;
    if (t.r <= 6) {
        std::vector<std::size_t> perm(t.r);
        for (std::size_t i = 0; i < t.r; ++i) perm[i] = i;
        while (std::next_permutation(perm.begin(), perm.end())) {
            if (auto res = attempt(detail::permutation_matrix_rows(perm) * f.gW)) return res;
        }
    }

    // Stage 2: flag alignment from the given frame.
    if (auto res = align(f.gW)) return res;

    // Stage 3: seeded random bases, each tried directly and as an alignment
    // base.
    Rng rng(seed);
    for (std::size_t draw = 0; draw < budget; ++draw) {
        RatMat gW(t.r, t.r);
        for (std::size_t i = 0; i < t.r; ++i)
            for (std::size_t j = 0; j < t.r; ++j) gW(i, j) = rng.rat(-20, 20);
        if (det_bareiss(gW) == 0) continue;
        if (auto res = attempt(gW)) return res;
        if (auto res = align(gW)) return res;
    }
    return std::nullopt;
}

// Cartan's test: involutive iff s_1 + 2 s_2 + ... + ell s_ell == dim A^(1).
// The caller supplies the prolongation dimension (computed independently by
// the prolongation module); this keeps the two sides honest.
struct CartanTest {
    Int lhs;             // weighted character sum
    Int rhs;             // dim of the prolongation
    bool equality;       // involutive
};

inline CartanTest cartan_test(const std::vector<std::size_t>& chars, std::size_t prolongation_dim) {
    CartanTest ct;
    ct.lhs = 0;
    for (std::size_t i = 0; i < chars.size(); ++i) ct.lhs += Int(i + 1) * Int(chars[i]);
    ct.rhs = Int(prolongation_dim);
    ct.equality = (ct.lhs == ct.rhs);
    return ct;
}

// Restriction of the tableau to the span U of the first ell transformed
// V-directions: keep the leading ell columns of every basis matrix.  In a
// generic frame the independent entries all live in those columns, so the
// restricted matrices still span an s-dimensional tableau.
inline Tableau restrict_to_U(const Tableau& t, const Frame& f) {
    if (f.ell == 0) throw std::invalid_argument("restrict_to_U: zero tableau");
    Tableau tt = t.transformed(f.gW, f.gV);
    std::vector<RatMat> basis;
    for (const auto& m : tt.basis) {
        RatMat c(t.r, f.ell);
        for (std::size_t a = 0; a < t.r; ++a)
            for (std::size_t i = 0; i < f.ell; ++i) c(a, i) = m(a, i);
        basis.push_back(c);
    }
    return tableau_from_basis(f.ell, t.r, std::move(basis),
                              t.name.empty() ? "" : t.name + "|U");
}

}  // namespace eds
