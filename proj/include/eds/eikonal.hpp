#pragma once

// Polynomial phase-space observables, their Poisson bracket, and a
// degree-bounded closure probe for systems of eikonal generators.
//
// Observables live in Q[x1..xn, p1..pn]: the variable table is split into a
// base half x and a fiber half p of equal length.  The probe asks, for every
// pair of generators, whether the bracket {F, G} lies in the module generated
// by the F^rho over polynomial coefficients in x of bounded degree.  Exact
// linear algebra makes the positive answer a proof; the negative answer only
// says "not at this bound" (smooth coefficients could still work), so the
// probe is one-sided.  Membership is monotone in the bound by construction.

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "rational.hpp"
#include "vartable.hpp"

namespace eds {

// Q[x1..xn, p1..pn]; indices 0..n-1 are the base variables, n..2n-1 the fiber.
inline VarTablePtr phase_vars(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(2 * n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
    return VarTable::make(std::move(names));
}

// Number of base variables; rejects tables that cannot be split into halves.
inline std::size_t phase_dim(const VarTablePtr& vars) {
    if (!vars || vars->size() == 0 || vars->size() % 2 != 0)
        throw std::invalid_argument("phase observables need x/p variable halves of equal length");
    return vars->size() / 2;
}

// d/dv, exact.
inline MPoly mp_derivative(const MPoly& f, std::size_t v) {
    MPoly out(f.vars());
    for (const auto& [e, c] : f.terms()) {
        if (e[v] == 0) continue;
        Expo d = e;
        d[v] -= 1;
        out.add_term(d, c * Rat(static_cast<long long>(e[v])));
    }
    return out;
}

// {F, G} = sum_i (dF/dp_i dG/dx_i - dG/dp_i dF/dx_i).
inline MPoly poisson_bracket(const MPoly& f, const MPoly& g) {
    if (f.vars() != g.vars())
        throw std::invalid_argument("poisson_bracket: operands use different variable tables");
    const std::size_t n = phase_dim(f.vars());
    MPoly out(f.vars());
    for (std::size_t i = 0; i < n; ++i) {
        out += mp_derivative(f, n + i) * mp_derivative(g, i);
        out -= mp_derivative(g, n + i) * mp_derivative(f, i);
    }
    return out;
}

// Total degree in the fiber variables, or -1 for the zero polynomial.
inline std::int64_t p_degree(const MPoly& f) {
    const std::size_t n = phase_dim(f.vars());
    std::int64_t d = -1;
    for (const auto& [e, c] : f.terms()) {
        std::int64_t t = 0;
        for (std::size_t i = n; i < 2 * n; ++i) t += e[i];
        d = std::max(d, t);
    }
    return d;
}

// Every term has the same fiber degree (vacuously true for zero).
inline bool p_homogeneous(const MPoly& f) {
    const std::size_t n = phase_dim(f.vars());
    std::int64_t seen = -1;
    for (const auto& [e, c] : f.terms()) {
        std::int64_t t = 0;
        for (std::size_t i = n; i < 2 * n; ++i) t += e[i];
        if (seen >= 0 && t != seen) return false;
        seen = t;
    }
    return true;
}

namespace detail {

// All monomials in the base variables with total degree <= bound, as full
// exponent vectors, in a deterministic order.
inline std::vector<Expo> base_monomials(std::size_t n, std::size_t width, std::size_t bound) {
    std::vector<Expo> out;
    Expo cur(width, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = 0; k <= left; ++k) {
            cur[pos] = static_cast<std::uint32_t>(k);
            self(self, pos + 1, left - k);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, bound);
    return out;
}

}  // namespace detail

// Solve target = sum_rho g_rho * gens[rho] with each g_rho a polynomial in
// the base variables of total degree <= bound.  Returns the coefficients when
// a solution exists.
inline std::optional<std::vector<MPoly>> module_membership(const MPoly& target,
                                                           const std::vector<MPoly>& gens,
                                                           std::size_t bound) {
    const VarTablePtr& vars = target.vars();
    for (const auto& g : gens)
        if (g.vars() != vars)
            throw std::invalid_argument("module_membership: mixed variable tables");
    const std::size_t n = phase_dim(vars);
    if (target.is_zero()) return std::vector<MPoly>(gens.size(), MPoly(vars));

    std::vector<Expo> monos = detail::base_monomials(n, 2 * n, bound);
    std::vector<MPoly> columns;
    columns.reserve(gens.size() * monos.size());
    for (const auto& g : gens)
        for (const auto& m : monos) {
            MPoly mono(vars);
            mono.add_term(m, Rat(1));
            columns.push_back(mono * g);
        }

    std::map<Expo, std::size_t, GrlexGreater> row_of;
    auto index_terms = [&](const MPoly& p) {
        for (const auto& [e, c] : p.terms()) row_of.emplace(e, 0);
    };
    index_terms(target);
    for (const auto& col : columns) index_terms(col);
    std::size_t next = 0;
    for (auto& [e, idx] : row_of) idx = next++;

    RatMat a(row_of.size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [e, c] : columns[j].terms()) a(row_of.at(e), j) = c;
    RatVec b(row_of.size(), Rat(0));
    for (const auto& [e, c] : target.terms()) b[row_of.at(e)] = c;

    auto sol = solve(a, b);
    if (!sol) return std::nullopt;

    std::vector<MPoly> witness(gens.size(), MPoly(vars));
    for (std::size_t r = 0; r < gens.size(); ++r)
        for (std::size_t m = 0; m < monos.size(); ++m)
            witness[r].add_term(monos[m], (*sol)[r * monos.size() + m]);
    return witness;
}

struct ClosureVerdict {
    std::size_t i = 0, j = 0;  // generator pair, 0-based, i < j
    MPoly bracket;
    bool member = false;
    std::vector<MPoly> witness;  // bracket == sum witness[rho] * gens[rho] when member
};

struct ClosureReport {
    std::size_t bound = 3;
    bool p_homogeneous = true;  // every generator satisfies the fiber-homogeneity hypothesis
    std::vector<ClosureVerdict> pairs;

    bool closed() const {
        for (const auto& v : pairs)
            if (!v.member) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream out;
        out << "closure probe at coefficient degree bound " << bound << "\n";
        if (!p_homogeneous)
            out << "warning: generators are not homogeneous in the fiber variables\n";
        for (const auto& v : pairs)
            out << "  {F" << (v.i + 1) << ", F" << (v.j + 1) << "} = " << v.bracket.str()
                << "  ->  " << (v.member ? "member" : "not a member at this bound") << "\n";
        out << (pairs.empty()
                    ? "fewer than two generators: closed\n"
                    : (closed() ? "bracket-closed at this bound\n"
                                : "closure undecided at this bound\n"));
        return out.str();
    }
};

// Pairwise bracket-closure of a generator list under the degree bound.
inline ClosureReport closure_probe(const std::vector<MPoly>& generators, std::size_t bound = 3) {
    ClosureReport rep;
    rep.bound = bound;
    for (const auto& g : generators) rep.p_homogeneous = rep.p_homogeneous && p_homogeneous(g);
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            ClosureVerdict v;
            v.i = i;
            v.j = j;
            v.bracket = poisson_bracket(generators[i], generators[j]);
            auto w = module_membership(v.bracket, generators, bound);
            v.member = w.has_value();
            if (w) v.witness = std::move(*w);
            rep.pairs.push_back(std::move(v));
        }
    return rep;
}

}  // namespace eds
