// Poisson brackets on polynomial phase observables and the degree-bounded
// closure probe.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eds/eikonal.hpp"
#include "eds/rng.hpp"

using namespace eds;

namespace {

std::string read_golden(const std::string& name) {
    const char* dir = std::getenv("EDS_GOLDEN_DIR");
    REQUIRE(dir != nullptr);
    std::ifstream in(std::string(dir) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Random observable: up to `terms` monomials of total degree <= 2 over the
// full x/p table, small nonzero integer coefficients.
MPoly random_observable(Rng& rng, const VarTablePtr& vars, int terms = 4) {
    MPoly f(vars);
    const std::size_t w = vars->size();
    for (int t = 0; t < terms; ++t) {
        Expo e(w, 0);
        long long deg = rng.uniform(0, 2);
        for (long long d = 0; d < deg; ++d) e[static_cast<std::size_t>(rng.uniform(0, w - 1))] += 1;
        f.add_term(e, rng.rat_nonzero(-4, 4));
    }
    return f;
}

}  // namespace

TEST_CASE("canonical pairs and simple brackets") {
    VarTablePtr v = phase_vars(3);
    MPoly x1 = parse_poly("x1", v), p1 = parse_poly("p1", v);

    CHECK(poisson_bracket(p1, x1) == parse_poly("1", v));
    CHECK(poisson_bracket(x1, p1) == parse_poly("-1", v));
    CHECK(poisson_bracket(parse_poly("p2", v), parse_poly("p3", v)).is_zero());

    // Hand-differentiated: {x1*p1, p1} = -p1 and {p2 - x3*p1, p3} = p1.
    CHECK(poisson_bracket(parse_poly("x1*p1", v), p1) == parse_poly("-p1", v));
    CHECK(poisson_bracket(parse_poly("p2 - x3*p1", v), parse_poly("p3", v)) ==
          parse_poly("p1", v));

    // Constant-coefficient cone against a momentum: every base derivative of
    // either side vanishes.
    MPoly cone = parse_poly("-p1^2 + p2^2 + p3^2", v);
    CHECK(poisson_bracket(cone, parse_poly("p2", v)).is_zero());
    CHECK(poisson_bracket(cone, cone).is_zero());
}

TEST_CASE("bracket operands must share a phase table") {
    VarTablePtr a = phase_vars(2), b = phase_vars(2);
    CHECK_THROWS_AS(poisson_bracket(parse_poly("p1", a), parse_poly("p1", b)),
                    std::invalid_argument);
    VarTablePtr odd = VarTable::make({"x1", "p1", "q"});
    CHECK_THROWS_AS(poisson_bracket(MPoly::var(odd, 0), MPoly::var(odd, 1)),
                    std::invalid_argument);
}

TEST_CASE("antisymmetry, Jacobi, and Leibniz on seeded triples") {
    VarTablePtr v = phase_vars(3);
    Rng rng(505);
    for (int trial = 0; trial < 25; ++trial) {
        MPoly f = random_observable(rng, v);
        MPoly g = random_observable(rng, v);
        MPoly h = random_observable(rng, v);

        CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
        CHECK(poisson_bracket(f, f).is_zero());

        MPoly jacobi = poisson_bracket(f, poisson_bracket(g, h)) +
                       poisson_bracket(g, poisson_bracket(h, f)) +
                       poisson_bracket(h, poisson_bracket(f, g));
        CHECK(jacobi.is_zero());

        CHECK(poisson_bracket(f, g * h) ==
              poisson_bracket(f, g) * h + g * poisson_bracket(f, h));
    }
}

TEST_CASE("fiber-degree helpers") {
    VarTablePtr v = phase_vars(2);
    CHECK(p_degree(parse_poly("x1^3", v)) == 0);
    CHECK(p_degree(parse_poly("x1*p2^2 + p1", v)) == 2);
    CHECK(p_degree(MPoly(v)) == -1);
    CHECK(p_homogeneous(parse_poly("p1^2 + x1*p2^2", v)));
    CHECK(p_homogeneous(MPoly(v)));
    CHECK_FALSE(p_homogeneous(parse_poly("p1 + p2^2", v)));
    CHECK_FALSE(p_homogeneous(parse_poly("p1 + 1", v)));
}

TEST_CASE("coordinate-model generators are bracket-closed") {
    VarTablePtr v = phase_vars(3);
    ClosureReport rep = closure_probe({parse_poly("p2", v), parse_poly("p3", v)});
    REQUIRE(rep.pairs.size() == 1);
    CHECK(rep.pairs[0].bracket.is_zero());
    CHECK(rep.pairs[0].member);
    CHECK(rep.p_homogeneous);
    CHECK(rep.closed());
}

TEST_CASE("a single generator is vacuously closed") {
    VarTablePtr v = phase_vars(3);
    ClosureReport rep = closure_probe({parse_poly("-p1^2 + p2^2 + p3^2", v)});
    CHECK(rep.pairs.empty());
    CHECK(rep.closed());
    CHECK(rep.str().find("fewer than two generators") != std::string::npos);
}

TEST_CASE("probe of the base-dependent pair at bound 2 matches the frozen verdict") {
    VarTablePtr v = phase_vars(3);
    std::vector<MPoly> gens = {parse_poly("p2 - x2*p1", v), parse_poly("p3", v)};
    ClosureReport rep = closure_probe(gens, 2);
    REQUIRE(rep.pairs.size() == 1);
    CHECK(rep.pairs[0].bracket.is_zero());
    CHECK(rep.pairs[0].member);
    CHECK(rep.closed());
    CHECK(rep.p_homogeneous);
    CHECK(rep.str() == read_golden("eikonal-pair.txt"));
}

TEST_CASE("a bracket escaping the module is reported as not-member at every bound") {
    VarTablePtr v = phase_vars(3);
    std::vector<MPoly> gens = {parse_poly("p2 - x3*p1", v), parse_poly("p3", v)};
    for (std::size_t bound = 0; bound <= 3; ++bound) {
        ClosureReport rep = closure_probe(gens, bound);
        REQUIRE(rep.pairs.size() == 1);
        CHECK(rep.pairs[0].bracket == parse_poly("p1", v));
        CHECK_FALSE(rep.pairs[0].member);
        CHECK_FALSE(rep.closed());
        CHECK(rep.str().find("not a member at this bound") != std::string::npos);
    }
}

TEST_CASE("membership is monotone in the bound and witnesses reconstruct the bracket") {
    VarTablePtr v = phase_vars(1);
    std::vector<MPoly> gens = {parse_poly("p1", v), parse_poly("x1^2*p1", v)};
    MPoly bracket = poisson_bracket(gens[0], gens[1]);
    CHECK(bracket == parse_poly("2*x1*p1", v));

    CHECK_FALSE(module_membership(bracket, gens, 0).has_value());
    for (std::size_t bound = 1; bound <= 3; ++bound) {
        auto w = module_membership(bracket, gens, bound);
        REQUIRE(w.has_value());
        MPoly sum(v);
        for (std::size_t r = 0; r < gens.size(); ++r) sum += (*w)[r] * gens[r];
        CHECK(sum == bracket);
    }

    ClosureReport rep = closure_probe(gens, 1);
    REQUIRE(rep.pairs.size() == 1);
    CHECK(rep.pairs[0].member);
    MPoly sum(v);
    for (std::size_t r = 0; r < gens.size(); ++r) sum += rep.pairs[0].witness[r] * gens[r];
    CHECK(sum == rep.pairs[0].bracket);
}

TEST_CASE("membership edge cases") {
    VarTablePtr v = phase_vars(2);
    auto zero = module_membership(MPoly(v), {parse_poly("p1", v)}, 0);
    REQUIRE(zero.has_value());
    CHECK(zero->size() == 1);
    CHECK((*zero)[0].is_zero());

    CHECK_FALSE(module_membership(parse_poly("p1", v), {}, 3).has_value());

    VarTablePtr other = phase_vars(2);
    CHECK_THROWS_AS(module_membership(parse_poly("p1", v), {parse_poly("p1", other)}, 1),
                    std::invalid_argument);

    // Inhomogeneous generators are allowed; the report records the violation.
    ClosureReport rep = closure_probe({parse_poly("p1 + 1", v), parse_poly("p2", v)});
    CHECK_FALSE(rep.p_homogeneous);
    CHECK(rep.str().find("not homogeneous") != std::string::npos);
}
