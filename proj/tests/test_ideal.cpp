#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mflocus/ideal.hpp"
#include "test_helpers.hpp"

using namespace mflocus;
using namespace mflocus::testing;

namespace {

Ideal ideal_of(const VarsPtr& vars, std::initializer_list<const char*> gens) {
    std::vector<Polynomial> ps;
    for (const char* g : gens)
        ps.push_back(parse_poly(g, vars));
    return Ideal::make(vars, std::move(ps));
}

bool member(const Polynomial& f, const GroebnerBasis& gb) { return nf(f, gb).is_zero(); }

bool equal_ideals(const Ideal& a, const Ideal& b) {
    GroebnerBasis ga = groebner(a), gb = groebner(b);
    for (const auto& g : a.gens)
        if (!member(g, gb))
            return false;
    for (const auto& g : b.gens)
        if (!member(g, ga))
            return false;
    return true;
}

// All monomials of total degree <= d, for brute-force searches.
std::vector<Polynomial> monomials_up_to(const VarsPtr& vars, unsigned d) {
    std::vector<Monomial> monos{Monomial::one(vars->size())};
    for (unsigned step = 0; step < d; ++step) {
        std::size_t old = monos.size();
        for (std::size_t k = 0; k < old; ++k)
            for (std::size_t i = 0; i < vars->size(); ++i) {
                Monomial m = monos[k];
                m.e[i] += 1;
                if (std::find(monos.begin(), monos.end(), m) == monos.end())
                    monos.push_back(m);
            }
    }
    std::vector<Polynomial> out;
    for (auto& m : monos)
        out.push_back(Polynomial::monomial_term(vars, m, Rational(1)));
    return out;
}

} // namespace

TEST_CASE("groebner on a single generator") {
    auto v4 = xyzw();
    GroebnerBasis gb = groebner(ideal_of(v4, {"x*y - z*w"}));
    REQUIRE(gb.elements().size() == 1);
    CHECK(gb.elements()[0] == P("x*y - z*w", v4));
    CHECK(gb.verify_certificates());
    CHECK(gb.verify_buchberger());
}

TEST_CASE("groebner deduplicates") {
    auto v = make_vars({"x"});
    GroebnerBasis gb = groebner(ideal_of(v, {"x", "x"}));
    REQUIRE(gb.elements().size() == 1);
    CHECK(gb.elements()[0] == P("x", v));
    CHECK(gb.verify_certificates());
}

TEST_CASE("groebner drops redundant high powers") {
    auto v = xy();
    for (const char* extra : {"x^2", "x^3", "x^4"}) {
        GroebnerBasis gb = groebner(ideal_of(v, {"x^2", "x*y", "y^2", extra}));
        REQUIRE(gb.elements().size() == 3);
        CHECK(member(P("x^2", v), gb));
        CHECK(member(P("x*y", v), gb));
        CHECK(member(P("y^2", v), gb));
        CHECK(gb.verify_certificates());
        CHECK(gb.verify_buchberger());
    }
}

TEST_CASE("normal form examples") {
    auto v4 = xyzw();
    GroebnerBasis lexgb = groebner(ideal_of(v4, {"x*y - z*w"}), MonomialOrder::lex());
    auto r = normal_form(P("x*y", v4), lexgb);
    CHECK(r.remainder == P("z*w", v4));

    GroebnerBasis gb = groebner(ideal_of(v4, {"x*y - z*w"}));
    CHECK(nf(P("x*y - z*w", v4), gb).is_zero());

    auto v2 = xy();
    GroebnerBasis g2 = groebner(ideal_of(v2, {"x^2", "x*y", "y^2"}));
    CHECK(nf(P("y", v2), g2) == P("y", v2));
}

TEST_CASE("normal form cofactors reproduce the input") {
    auto v4 = xyzw();
    GroebnerBasis gb = groebner(ideal_of(v4, {"x*y - z*w", "x^2 - z"}));
    Polynomial f = P("x^2*y + x*y^2 - 3*z*w + 1", v4);
    auto r = normal_form(f, gb);
    Polynomial acc = r.remainder;
    for (std::size_t k = 0; k < gb.elements().size(); ++k)
        acc = acc + r.cofactors[k] * gb.elements()[k];
    CHECK(acc == f);
    // ... and via certificates, over the original generators.
    auto cert = combination_over_generators(gb, r.cofactors);
    Polynomial acc2 = r.remainder;
    for (std::size_t j = 0; j < gb.source().gens.size(); ++j)
        acc2 = acc2 + cert[j] * gb.source().gens[j];
    CHECK(acc2 == f);
}

TEST_CASE("ideal quotient examples") {
    auto v = make_vars({"x"});
    CHECK(equal_ideals(ideal_quotient(ideal_of(v, {"x^2"}), P("x", v)), ideal_of(v, {"x"})));

    auto v4 = xyzw();
    Ideal I = ideal_of(v4, {"x*y - z*w", "x^2 - w"});
    CHECK(equal_ideals(ideal_quotient(I, P("1", v4)), I));

    CHECK_THROWS_AS(ideal_quotient(I, Polynomial::zero(v4)), PreconditionError);
}

TEST_CASE("quotient of a point square along w leaves the prime") {
    // In Q[x,y,z,w] with P = <x,y,z-1,w> and I = <xy-zw>: z*w = x*y - (x*y - z*w)
    // lies in P^2 + I, so ((P^2+I) : w) contains z, which is not in P.
    auto v4 = xyzw();
    std::vector<Polynomial> q2gens;
    std::vector<Polynomial> pgens{P("x", v4), P("y", v4), P("z-1", v4), P("w", v4)};
    for (std::size_t i = 0; i < pgens.size(); ++i)
        for (std::size_t j = i; j < pgens.size(); ++j)
            q2gens.push_back(pgens[i] * pgens[j]);
    q2gens.push_back(P("x*y - z*w", v4));
    Ideal Q2 = Ideal::make(v4, q2gens);

    // Oracle for the anchor identity itself:
    GroebnerBasis gbQ2 = groebner(Q2);
    CHECK(nf(P("z*w", v4), gbQ2).is_zero());
    GroebnerBasis gbP = groebner(Ideal::make(v4, pgens));
    CHECK(!nf(P("z", v4), gbP).is_zero());

    Ideal quot = ideal_quotient(Q2, P("w", v4));
    bool has_unit_mod_p = false;
    for (const auto& g : quot.gens)
        if (!nf(g, gbP).is_zero())
            has_unit_mod_p = true;
    CHECK(has_unit_mod_p);
}

TEST_CASE("quotient soundness and brute-force completeness") {
    auto v2 = xy();
    std::mt19937_64 rng(7);
    for (int it = 0; it < 10; ++it) {
        Polynomial a = random_poly(rng, v2, 3, 2, 3);
        Polynomial b = random_poly(rng, v2, 3, 2, 3);
        Polynomial f = random_poly(rng, v2, 2, 2, 3);
        if (f.is_zero())
            continue;
        Ideal I = Ideal::make(v2, {a, b});
        Ideal quot = ideal_quotient(I, f);
        GroebnerBasis gbI = groebner(I);
        for (const auto& q : quot.gens)
            CHECK(nf(q * f, gbI).is_zero());
        // Completeness on low-degree monomials: anything g with g*f in I must
        // already lie in the computed quotient.
        GroebnerBasis gbQ = groebner(quot);
        for (const auto& g : monomials_up_to(v2, 2))
            if (nf(g * f, gbI).is_zero())
                CHECK(nf(g, gbQ).is_zero());
    }
}

TEST_CASE("radical membership") {
    auto v2 = xy();
    Ideal I = ideal_of(v2, {"x^2"});
    CHECK(radical_membership(P("x", v2), I));
    CHECK(!radical_membership(P("y", v2), I));
    CHECK(radical_membership(Polynomial::zero(v2), I));
    CHECK(radical_membership(Polynomial::zero(v2), ideal_of(v2, {"0"})));
    // I is contained in its radical: NF membership implies radical membership.
    std::mt19937_64 rng(8);
    GroebnerBasis gb = groebner(I);
    for (int it = 0; it < 20; ++it) {
        Polynomial h = random_poly(rng, v2);
        Polynomial g = h * P("x^2", v2);
        CHECK(nf(g, gb).is_zero());
        CHECK(radical_membership(g, I));
    }
}

TEST_CASE("ideal dimension") {
    auto v4 = xyzw();
    CHECK(ideal_dimension(ideal_of(v4, {"x*y - z*w"})) == 3u);
    CHECK(!ideal_dimension(ideal_of(v4, {"1"})).has_value());
    auto v2 = xy();
    CHECK(ideal_dimension(ideal_of(v2, {"x", "y"})) == 0u);
    CHECK(ideal_dimension(ideal_of(v2, {"0"})) == 2u);
    CHECK(ideal_dimension(ideal_of(v2, {"x^2", "y"})) == 0u);
    CHECK(ideal_dimension(ideal_of(v4, {"x*y - z*w", "w"})) == 2u);
}

TEST_CASE("membership is closed under addition and multiplication") {
    auto v2 = xy();
    Ideal I = ideal_of(v2, {"x^2 - y", "x*y"});
    GroebnerBasis gb = groebner(I);
    std::mt19937_64 rng(9);
    for (int it = 0; it < 40; ++it) {
        Polynomial cf = random_poly(rng, v2);
        Polynomial cg = random_poly(rng, v2);
        Polynomial f = cf * I.gens[0];
        Polynomial g = cg * I.gens[1];
        CHECK(nf(f + g, gb).is_zero());
        Polynomial h = random_poly(rng, v2);
        CHECK(nf(h * f, gb).is_zero());
    }
    // No remainder term is divisible by any leading term of the basis.
    Polynomial f = P("x^3*y + y^3 + x + 2", v2);
    Polynomial r = nf(f, gb);
    for (const auto& [m, c] : r.terms())
        for (const auto& g : gb.elements())
            CHECK(!g.leading_term(gb.order()).first.divides(m));
}

TEST_CASE("certificate soundness across random bases") {
    std::mt19937_64 rng(10);
    auto v2 = xy();
    for (int it = 0; it < 15; ++it) {
        Polynomial a = random_poly(rng, v2, 3, 2, 3);
        Polynomial b = random_poly(rng, v2, 3, 2, 3);
        Polynomial c = random_poly(rng, v2, 3, 2, 3);
        GroebnerBasis gb = groebner(Ideal::make(v2, {a, b, c}));
        CHECK(gb.verify_certificates());
        CHECK(gb.verify_buchberger());
    }
}

TEST_CASE("budget exhaustion is a distinct error") {
    auto v2 = xy();
    GroebnerOptions tiny;
    tiny.step_budget = 1;
    CHECK_THROWS_AS(groebner(ideal_of(v2, {"x^2 - y", "x*y - 1", "y^3 - x"}), MonomialOrder::degrevlex(), tiny),
                    BudgetExhaustedError);
}
