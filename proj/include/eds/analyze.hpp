#pragma once

// Full analysis pipeline for one tableau, rendered as a deterministic plain
// text report: characters, endovolutive normal form, involutivity with
// certificates, prolongation and Cartan's test, Spencer cohomology dimensions,
// the rank-one and characteristic ideals, the characteristic scheme, eigen
// sheets at a seeded generic covector, and (for determined systems) the
// symbol-hyperbolicity probe.  Identical input and seed give byte-identical
// output.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "charvar.hpp"
#include "involutive.hpp"
#include "prolong.hpp"
#include "rng.hpp"
#include "tableau.hpp"
#include "univar.hpp"

namespace eds {

// An analysis stage contradicted a structural guarantee (e.g. the normal-form
// invariance of W^1(phi) failed on a tableau certified involutive).  The CLI
// maps this to its own exit code, distinct from malformed input.
struct InternalInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string vec_str(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << rat_str(v[i]);
    os << ")";
    return os.str();
}

inline std::string chars_str(const std::vector<std::size_t>& chars) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < chars.size(); ++i) os << (i ? ", " : "") << chars[i];
    os << ")";
    return os.str();
}

inline std::string sheet_str(const EigenSheet& s, std::size_t index, std::size_t n) {
    std::ostringstream os;
    os << "  sheet " << index << ": multiplicity " << s.multiplicity << ", fiber dim "
       << s.fiber_dim << ", xi = [";
    std::size_t printed = 0;
    for (const auto& x : s.phi) os << (printed++ ? " : " : "") << rat_str(x);
    for (const auto& x : s.xi_ext) os << (printed++ ? " : " : "") << rat_str(x);
    for (; printed < n; ++printed) os << " : *";
    os << "]";
    for (const auto& [col, fac] : s.factors)
        os << ", xi_" << col << " root of " << up_str(fac, "t");
    return os.str();
}

}  // namespace detail

inline std::string analysis_report(const Tableau& t, std::uint64_t seed = 0) {
    std::ostringstream os;
    os << "== tableau analysis: " << (t.name.empty() ? "(unnamed)" : t.name) << " ==\n";
    os << "seed " << seed << "\n\n";
    os << "space: r = " << t.r << ", n = " << t.n << ", dim A = " << t.dim() << "\n";

    Frame f = generic_frame(t, seed);
    auto ev = endovolutivize(t, f, seed);
    if (ev) f = ev->frame;
    os << "characters: " << detail::chars_str(f.chars) << "; ell = " << f.ell
       << "; s_ell = " << f.s_ell << "\n";
    os << "endovolutive frame: " << (ev ? "found" : "not found within the search budget") << "\n";

    Prolongation p = prolongation(t);
    CartanTest ct = cartan_test(f.chars, p.dim());
    InvolutivityReport inv;
    if (ev)
        inv = involutivity_test(ev->blocks);
    else
        inv.endovolutive = false;
    const bool involutive = inv.involutive() && ct.equality;
    os << "involutive: " << (involutive ? "yes" : "no");
    if (!ev)
        os << " (no endovolutive frame; quadratic conditions not applicable)";
    else if (!inv.quadratic_ok)
        os << " (first violated quadratic condition: " << inv.violations.front().str() << ")";
    os << "\n";
    os << "dim A^(1) = " << p.dim() << "; Cartan bound sum_k k*s_k = " << ct.lhs << ": "
       << (ct.equality ? "attained (Cartan's test passes)" : "strict (Cartan's test fails)")
       << "\n";

    auto h = spencer_dims(t);
    os << "Spencer H^k dims (k = 1.." << h.size() << "):";
    for (auto d : h) os << " " << d;
    os << "\n\n";

    RankOneIdeal r1 = rank1_ideal(t);
    os << "rank-one ideal (" << r1.generators.size() << " generator"
       << (r1.generators.size() == 1 ? "" : "s") << " in a0..a"
       << (t.dim() ? t.dim() - 1 : 0) << "):\n";
    for (const auto& g : r1.generators) os << "  " << g.str() << "\n";
    if (r1.generators.empty()) os << "  (none: every member has rank <= 1)\n";
    os << "\n";

    if (ev && f.ell > 0) {
        CharIdeal ci = char_ideal(ev->blocks, seed);
        os << "characteristic ideal (determinants of the symbol in xi1..xi" << t.n << "):\n";
        for (std::size_t i = 0; i < ci.d.size(); ++i)
            os << "  d_" << i + 1 << " = " << ci.d[i].str() << "\n";
        os << "generic base covector phi = " << detail::vec_str(ci.phi)
           << "; dim W^1(phi) = " << ci.w1.size() << "\n";
        if (ci.restricted_ok) {
            for (std::size_t k = 0; k < ci.restricted.size(); ++k)
                os << "  restricted char poly at u_" << f.ell + k + 1 << ": "
                   << up_str(ci.restricted[k], "t") << "\n";
        } else {
            os << "  restricted polynomials unavailable: W^1(phi) is not invariant\n";
        }

        FiberReport fib = xi_fibers(ev->blocks, ci.phi);
        if (involutive && (!ci.restricted_ok || !fib.ok()))
            throw InternalInconsistency(
                "characteristic-variety stage: normal-form invariance failed on a tableau "
                "certified involutive");
        os << "eigen sheets at phi:\n";
        if (fib.sheets.empty()) os << "  (none: W^1(phi) = 0)\n";
        for (std::size_t k = 0; k < fib.sheets.size(); ++k)
            os << detail::sheet_str(fib.sheets[k], k + 1, t.n) << "\n";
    } else if (f.ell > 0) {
        os << "characteristic-variety analysis skipped (no endovolutive frame)\n";
    } else {
        os << "characteristic-variety analysis empty (zero tableau)\n";
    }
    os << "\n" << scheme_summary(t, seed).str();

    if (ev && is_determined(ev->blocks)) {
        RatVec phi(t.n, Rat(0));
        phi[0] = 1;
        std::vector<RatVec> etas;
        for (std::size_t i = 1; i < t.n; ++i) {
            RatVec e(t.n, Rat(0));
            e[i] = 1;
            etas.push_back(std::move(e));
        }
        os << "\ndetermined system; symbol-hyperbolicity probe at phi = e_1 against the "
              "remaining coordinate directions:\n  "
           << hyperbolic_probe(ev->blocks, phi, etas).str() << "\n";
    }

    if (involutive) {
        Rng rng(seed + 101);
        for (int trial = 0; trial < 3; ++trial) {
            RatVec phi = rng.rat_vec(f.ell, -9, 9);
            while (detail::is_zero_vec(phi)) phi = rng.rat_vec(f.ell, -9, 9);
            GuilleminCheck gc = guillemin_check(ev->blocks, phi, rng.rat_vec(t.n, -9, 9),
                                                rng.rat_vec(t.n, -9, 9));
            if (!gc.ok())
                throw InternalInconsistency(
                    "normal-form stage: invariance/commutation failed on a tableau certified "
                    "involutive");
        }
    }
    return os.str();
}

}  // namespace eds
