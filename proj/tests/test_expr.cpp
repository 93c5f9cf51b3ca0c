#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mflocus/expr.hpp"
#include "test_helpers.hpp"

using namespace mflocus;
using namespace mflocus::testing;

TEST_CASE("rational strings") {
    CHECK(to_string(Q("3/2")) == "3/2");
    CHECK(to_string(Q("-4/2")) == "-2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(Q("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
}

TEST_CASE("parse basic expressions") {
    auto v4 = xyzw();
    Polynomial f = P("x*y - z*w", v4);
    CHECK(f.terms().size() == 2);
    CHECK(f == P("x*y", v4) - P("z*w", v4));

    auto v1 = make_vars({"x"});
    CHECK(P("0", v1).is_zero());
    CHECK(P("0", v1).terms().empty());

    CHECK(P("(x+1)^2 - x^2 - 2*x", v1) == Polynomial::constant(v1, Rational(1)));
    CHECK(P("1/2 + 1/2", v1) == Polynomial::constant(v1, Rational(1)));
    CHECK(P("-x + x", v1).is_zero());
    CHECK(P("3/2*x^2", v1) == P("x*x", v1).scaled(Rational(3, 2)));
}

TEST_CASE("parse errors carry positions and names") {
    auto v1 = make_vars({"x"});
    CHECK_THROWS_AS(P("x +", v1), ParseError);
    CHECK_THROWS_AS(P("x y", v1), ParseError); // '*' is mandatory
    CHECK_THROWS_AS(P("(x", v1), ParseError);
    CHECK_THROWS_AS(P("x^y", v1), ParseError); // '^' takes a natural literal
    try {
        P("x + q", v1);
        FAIL("expected unknown-variable error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("q") != std::string::npos);
        CHECK(e.position == 4);
    }
}

TEST_CASE("arithmetic examples") {
    auto v4 = xyzw();
    Polynomial f_xy = P("x*y", v4);
    CHECK((f_xy + (-f_xy)).is_zero());
    CHECK(P("x", v4) * P("x", v4) + P("y", v4) * P("x", v4) ==
          P("x^2 + x*y", v4));

    auto v2 = xy();
    CHECK(P("x+y", v2) * P("x-y", v2) == P("x^2 - y^2", v2));
    CHECK(P("2*x", v2).scaled(Rational(1, 2)) == P("x", v2));
    CHECK(P("x+1", v2).pow(3) == P("x^3 + 3*x^2 + 3*x + 1", v2));
    CHECK(P("x", v2).pow(0) == Polynomial::constant(v2, Rational(1)));
}

TEST_CASE("context mismatch is rejected") {
    auto a = make_vars({"x"});
    auto b = make_vars({"y"});
    CHECK_THROWS_AS(P("x", a) + P("y", b), ContextMismatchError);
    // Distinct pointers with identical names are the same context.
    auto a2 = make_vars({"x"});
    CHECK(P("x", a) + P("x", a2) == P("2*x", a));
}

TEST_CASE("evaluation") {
    auto v4 = xyzw();
    CHECK(P("x*y - z*w", v4).evaluate(point({1, 1, 1, 1})) == 0);
    CHECK(P("w", v4).evaluate(point({0, 0, 1, 0})) == 0);
    auto v1 = make_vars({"x"});
    std::vector<Rational> half{Rational(1, 2)};
    CHECK(P("x^2", v1).evaluate(half) == Rational(1, 4));
    CHECK_THROWS_AS(P("x", v1).evaluate(point({1, 2})), PreconditionError);
}

TEST_CASE("partial derivatives") {
    auto v4 = xyzw();
    CHECK(P("x*y - z*w", v4).derivative(0) == P("y", v4));
    CHECK(P("7", v4).derivative(0).is_zero());
    auto v1 = make_vars({"x"});
    CHECK(P("x^2", v1).derivative(0) == P("2*x", v1));
    CHECK_THROWS_AS(P("x", v1).derivative(3), PreconditionError);
}

TEST_CASE("monomial orders") {
    auto v4 = xyzw();
    Monomial xy = P("x*y", v4).terms()[0].first;
    Monomial zw = P("z*w", v4).terms()[0].first;
    CHECK(MonomialOrder::degrevlex().compare(xy, zw) > 0);
    CHECK(MonomialOrder::lex().compare(xy, zw) > 0);
    Monomial x3 = P("x^3", v4).terms()[0].first;
    CHECK(MonomialOrder::degrevlex().compare(xy, x3) < 0);
    CHECK(MonomialOrder::lex().compare(xy, x3) < 0);
    // Elimination block: anything involving x dominates everything x-free.
    Monomial w9 = P("w^9", v4).terms()[0].first;
    Monomial x1 = P("x", v4).terms()[0].first;
    CHECK(MonomialOrder::elimination(1).compare(x1, w9) > 0);
    CHECK(MonomialOrder::degrevlex().compare(x1, w9) < 0);
}

TEST_CASE("ring axioms on randomized triples") {
    std::mt19937_64 rng(1);
    auto v = make_vars({"x", "y", "z"});
    Polynomial one = Polynomial::constant(v, Rational(1));
    for (int it = 0; it < 200; ++it) {
        Polynomial f = random_poly(rng, v);
        Polynomial g = random_poly(rng, v);
        Polynomial h = random_poly(rng, v);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f * g == g * f);
        CHECK(f * one == f);
        CHECK((f + g) + h == f + (g + h));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(2);
    auto v = make_vars({"x", "y", "z"});
    for (int it = 0; it < 200; ++it) {
        Polynomial f = random_poly(rng, v);
        Polynomial g = random_poly(rng, v);
        auto p = random_point(rng, 3);
        CHECK((f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p));
        CHECK((f + g).evaluate(p) == f.evaluate(p) + g.evaluate(p));
    }
}

TEST_CASE("render/parse round trip on canonical forms") {
    std::mt19937_64 rng(3);
    auto v = make_vars({"x", "y", "z"});
    CHECK(Polynomial::zero(v).to_string() == "0");
    for (int it = 0; it < 300; ++it) {
        Polynomial f = random_poly(rng, v, 6, 3, 9);
        CHECK(parse_poly(f.to_string(), v) == f);
    }
    // Rational coefficients render as exact fractions.
    Polynomial g = P("x", v).scaled(Rational(-7, 3)) + Polynomial::constant(v, Rational(1, 2));
    CHECK(parse_poly(g.to_string(), v) == g);
}

TEST_CASE("Leibniz rule on randomized pairs") {
    std::mt19937_64 rng(4);
    auto v = make_vars({"x", "y", "z"});
    for (int it = 0; it < 200; ++it) {
        Polynomial f = random_poly(rng, v);
        Polynomial g = random_poly(rng, v);
        std::size_t var = rng() % 3;
        CHECK((f * g).derivative(var) == f * g.derivative(var) + g * f.derivative(var));
    }
}
