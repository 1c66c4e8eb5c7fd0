#pragma once

// Univariate polynomial toolkit over Rat: Euclidean division, gcd, Yun's
// squarefree decomposition, Sturm counting, and rational-root extraction.
// This is the complete factorization budget of the library — no general
// factorization and no Groebner bases; the characteristic-scheme machinery
// only ever needs squarefree structure, real-root counts, and exact rational
// eigenvalues.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "mpoly.hpp"
#include "rational.hpp"

namespace eds {

// Coefficients ascending: p[k] is the coefficient of t^k.  Zero polynomial is
// the empty vector; degree(zero) == -1.
using UPoly = std::vector<Rat>;

inline void up_trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int up_deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool up_is_zero(const UPoly& p) { return p.empty(); }

inline Rat up_eval(const UPoly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline UPoly up_add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    up_trim(r);
    return r;
}
inline UPoly up_scale(const UPoly& a, const Rat& c) {
    if (c == 0) return {};
    UPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}
inline UPoly up_sub(const UPoly& a, const UPoly& b) { return up_add(a, up_scale(b, Rat(-1))); }

inline UPoly up_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    up_trim(r);
    return r;
}

inline UPoly up_derivative(const UPoly& p) {
    if (p.size() <= 1) return {};
    UPoly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(i);
    up_trim(r);
    return r;
}

// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b) {
    if (up_is_zero(b)) throw std::invalid_argument("division by zero polynomial");
    UPoly r = a, q;
    int db = up_deg(b);
    const Rat& lead = b.back();
    while (up_deg(r) >= db) {
        int shift = up_deg(r) - db;
        Rat c = r.back() / lead;
        if (q.size() < static_cast<std::size_t>(shift + 1)) q.resize(shift + 1, Rat(0));
        q[shift] += c;
        for (int i = 0; i <= db; ++i) r[shift + i] -= c * b[i];
        up_trim(r);
    }
    up_trim(q);
    return {q, r};
}

inline UPoly up_monic(UPoly p) {
    up_trim(p);
    if (p.empty()) return p;
    Rat inv = Rat(1) / p.back();
    for (auto& c : p) c *= inv;
    return p;
}

// Monic gcd (gcd(0,0) == 0).
inline UPoly up_gcd(UPoly a, UPoly b) {
    up_trim(a);
    up_trim(b);
    while (!up_is_zero(b)) {
        UPoly r = up_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return up_monic(a);
}

inline UPoly up_exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = up_divmod(a, b);
    if (!up_is_zero(r)) throw std::domain_error("up_exact_div: not divisible");
    return q;
}

struct SquarefreeFactor {
    UPoly factor;          // monic, squarefree, nonconstant
    std::size_t multiplicity;
};

// Yun's algorithm.  p == unit * prod factor_i ^ multiplicity_i with the
// factors monic, squarefree, and pairwise coprime.
struct SquarefreeDecomposition {
    Rat unit;
    std::vector<SquarefreeFactor> factors;

    UPoly reassemble() const {
        UPoly p{unit};
        for (const auto& f : this->factors)
            for (std::size_t k = 0; k < f.multiplicity; ++k) p = up_mul(p, f.factor);
        return p;
    }
};

inline SquarefreeDecomposition squarefree_decomposition(UPoly p) {
    up_trim(p);
    if (up_is_zero(p)) throw std::invalid_argument("squarefree decomposition of zero");
    SquarefreeDecomposition out;
    out.unit = p.back();
    p = up_monic(p);
    if (up_deg(p) == 0) return out;

    UPoly dp = up_derivative(p);
    UPoly g = up_gcd(p, dp);
    if (up_deg(g) == 0) {
        out.factors.push_back({p, 1});
        return out;
    }
    UPoly c = up_exact_div(p, g);
    UPoly d = up_sub(up_exact_div(dp, g), up_derivative(c));
    for (std::size_t i = 1; !up_is_zero(c) && up_deg(c) > 0; ++i) {
        UPoly a = up_gcd(c, d);
        if (up_deg(a) > 0) out.factors.push_back({up_monic(a), i});
        c = up_exact_div(c, a);
        d = up_sub(up_exact_div(d, a), up_derivative(c));
    }
    return out;
}

// Signed-remainder (Sturm) sequence sign-variation count.  Counts distinct
// real roots of squarefree p in the open interval (a, b); requires nonzero
// endpoint values so the count is unambiguous.
inline std::size_t sturm_count(const UPoly& p, const Rat& a, const Rat& b) {
    if (up_is_zero(p)) throw std::invalid_argument("sturm_count of zero polynomial");
    if (!(a < b)) throw std::invalid_argument("sturm_count: empty interval");
    if (up_eval(p, a) == 0 || up_eval(p, b) == 0)
        throw std::invalid_argument("sturm_count: endpoint is a root");
    std::vector<UPoly> seq{p, up_derivative(p)};
    while (!up_is_zero(seq.back()) && up_deg(seq.back()) > 0) {
        UPoly r = up_divmod(seq[seq.size() - 2], seq.back()).second;
        seq.push_back(up_scale(r, Rat(-1)));
    }
    auto variations = [&](const Rat& x) {
        std::size_t v = 0;
        int prev = 0;
        for (const auto& q : seq) {
            Rat val = up_eval(q, x);
            int s = val == 0 ? 0 : (val > 0 ? 1 : -1);
            if (s != 0) {
                if (prev != 0 && s != prev) ++v;
                prev = s;
            }
        }
        return v;
    };
    return variations(a) - variations(b);
}

// All real roots lie inside (-cauchy_bound, cauchy_bound).
inline Rat cauchy_bound(const UPoly& p) {
    if (up_deg(p) < 1) return Rat(1);
    Rat m(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, Rat(abs(p[i] / p.back())));
    return Rat(m + 1);
}

// Count of distinct real roots of squarefree p.
inline std::size_t real_root_count(const UPoly& p) {
    if (up_deg(p) < 1) return 0;
    Rat b = cauchy_bound(p);
    return sturm_count(p, -b, b);
}

struct RationalRoot {
    Rat root;
    std::size_t multiplicity;
};

namespace detail {
inline std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> divs;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d * d != n) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}
}  // namespace detail

// Exact rational roots with multiplicities (ascending by value), plus the
// root-free cofactor.  Candidates come from the divisors of the trailing and
// leading coefficients of the primitive integer form.
struct RationalRootSplit {
    std::vector<RationalRoot> roots;
    UPoly cofactor;  // monic, no rational roots
};

inline RationalRootSplit rational_roots(UPoly p) {
    up_trim(p);
    if (up_is_zero(p)) throw std::invalid_argument("rational_roots of zero polynomial");
    RationalRootSplit out;
    p = up_monic(p);

    // Factor out t^k first so the trailing coefficient is nonzero.
    std::size_t k0 = 0;
    while (k0 < p.size() && p[k0] == 0) ++k0;
    if (k0 > 0) {
        out.roots.push_back({Rat(0), k0});
        p.erase(p.begin(), p.begin() + k0);
    }
    if (up_deg(p) < 1) {
        out.cofactor = p;
        return out;
    }

    // Primitive integer form: clear denominators, then p/q candidates.
    Int den(1);
    for (const auto& c : p) den = lcm(den, rat_den(c));
    std::vector<Int> z(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) z[i] = rat_num(p[i] * Rat(den));
    auto ps = detail::positive_divisors(z.front());
    auto qs = detail::positive_divisors(z.back());

    std::vector<Rat> candidates;
    for (const auto& num : ps)
        for (const auto& den2 : qs) {
            candidates.push_back(Rat(num, den2));
            candidates.push_back(Rat(-num, den2));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& r : candidates) {
        std::size_t mult = 0;
        while (up_deg(p) >= 1 && up_eval(p, r) == 0) {
            p = up_exact_div(p, UPoly{-r, Rat(1)});
            ++mult;
        }
        if (mult > 0) out.roots.push_back({r, mult});
        if (up_deg(p) < 1) break;
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RationalRoot& a, const RationalRoot& b) { return a.root < b.root; });
    out.cofactor = up_monic(p);
    return out;
}

// Evaluate p at a square matrix argument (Horner).
inline Mat<Rat> up_apply(const UPoly& p, const Mat<Rat>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("up_apply: matrix not square");
    const std::size_t n = m.rows();
    Mat<Rat> acc(n, n);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

// Canonical rendering, highest power first: "t^3 - 2*t + 1/2".
inline std::string up_str(const UPoly& p, const std::string& var = "t") {
    if (up_is_zero(p)) return "0";
    std::string out;
    bool first = true;
    for (int k = up_deg(p); k >= 0; --k) {
        const Rat& c = p[k];
        if (c == 0) continue;
        Rat a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            a = abs(c);
        }
        if (k == 0) {
            out += rat_str(a);
        } else {
            if (a != 1) out += rat_str(a) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        first = false;
    }
    return out;
}

// Characteristic polynomial of a square rational matrix by Faddeev–LeVerrier:
// exact over Rat, independent of the symbolic determinant path (the two are
// cross-checked in the tests).
inline UPoly char_poly(const Mat<Rat>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: matrix not square");
    const std::size_t n = m.rows();
    UPoly p(n + 1, Rat(0));
    p[n] = 1;
    Mat<Rat> mk = m;
    Rat c(0);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            Mat<Rat> shifted = mk;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
            mk = m * shifted;
        }
        Rat tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
        c = -tr / Rat(k);
        p[n - k] = c;
    }
    return p;
}

// Convert a univariate MPoly (at most one variable occurs) to a UPoly.
inline UPoly to_univariate(const MPoly& p, std::size_t var) {
    UPoly out;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && i != var)
                throw std::invalid_argument("to_univariate: polynomial involves other variables");
        if (out.size() <= e[var]) out.resize(e[var] + 1, Rat(0));
        out[e[var]] = c;
    }
    up_trim(out);
    return out;
}

}  // namespace eds
