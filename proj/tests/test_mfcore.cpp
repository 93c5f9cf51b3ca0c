#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mflocus/mfcore.hpp"
#include "test_helpers.hpp"

using namespace mflocus;
using namespace mflocus::testing;

TEST_CASE("constructor validates the defining relations") {
    auto v = make_vars({"x"});
    auto model = ambient_model(v, "x^2");
    PolyMatrix mx(v, 1, 1);
    mx.at(0, 0) = P("x", v);
    MatrixFactorization f = MatrixFactorization::make(model, P("x^2", v), mx, mx);
    CHECK(f.n1() == 1);
    CHECK(f.n0() == 1);

    auto v2 = xy();
    auto model2 = ambient_model(v2, "x^2");
    PolyMatrix ax(v2, 1, 1), ay(v2, 1, 1);
    ax.at(0, 0) = P("x", v2);
    ay.at(0, 0) = P("y", v2);
    CHECK_THROWS_AS(MatrixFactorization::make(model2, P("x^2", v2), ax, ay), ValidationError);
}

TEST_CASE("unit and zero objects") {
    auto model = cone_model();
    MatrixFactorization unit = MatrixFactorization::unit(model);
    CHECK(unit.n1() == 0);
    CHECK(unit.n0() == 1);
    CHECK(unit.potential().is_zero());
    MatrixFactorization z = MatrixFactorization::zero(model);
    CHECK(z.n1() == 0);
    CHECK(z.n0() == 0);
}

TEST_CASE("koszul factorizations") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));
    CHECK(k.potential() == P("x*y", v));
    // unit entry: valid object of potential W
    MatrixFactorization split = koszul(model, P("1", v), P("x*y", v));
    CHECK(split.potential() == P("x*y", v));
    MatrixFactorization rr = koszul(model, P("0", v), P("0", v));
    CHECK(rr.potential().is_zero());
    CHECK(rr.n1() == 1);
    CHECK(rr.n0() == 1);
}

TEST_CASE("direct sum") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));
    CHECK(direct_sum(k, MatrixFactorization::zero(model, k.potential())) == k);
    MatrixFactorization kk = direct_sum(k, k);
    CHECK(kk.n1() == 2);
    CHECK(kk.n0() == 2);
    MatrixFactorization other = koszul(model, P("x", v), P("x", v));
    CHECK_THROWS_AS(direct_sum(k, other), PreconditionError);
}

TEST_CASE("shift squares to the identity") {
    auto model = ambient_model(make_vars({"x"}), "x^2");
    auto v = model->vars();
    MatrixFactorization f = koszul(model, P("x", v), P("x", v));
    MatrixFactorization tf = shift(f);
    CHECK(tf.phi1().at(0, 0) == P("-x", v));
    CHECK(tf.phi0().at(0, 0) == P("-x", v));
    CHECK(shift(tf) == f);
    CHECK(shift(shift(MatrixFactorization::zero(model))) == MatrixFactorization::zero(model));
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it) {
        MatrixFactorization g = random_mf(rng, model);
        CHECK(shift(shift(g)) == g);
    }
}

TEST_CASE("tensor ranks, potentials, unit action") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));
    CHECK(tensor(k, MatrixFactorization::unit(model)) == k);
    CHECK(tensor(MatrixFactorization::unit(model), k) == k);

    MatrixFactorization kk = tensor(k, koszul(model, P("y", v), P("x", v)));
    CHECK(kk.n1() == 2);
    CHECK(kk.n0() == 2);
    CHECK(kk.potential() == P("2*x*y", v));

    // potentials add for arbitrary pairs
    std::mt19937_64 rng(12);
    for (int it = 0; it < 10; ++it) {
        MatrixFactorization e = random_mf(rng, model, 1);
        MatrixFactorization f = random_mf(rng, model, 1);
        CHECK(tensor(e, f).potential() == model->reduce(e.potential() + f.potential()));
    }
}

TEST_CASE("sheaf hom and dual") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));
    MatrixFactorization unit = MatrixFactorization::unit(model);

    CHECK(sheaf_hom(unit, k) == k);

    MatrixFactorization dk = dual(k);
    CHECK(dk.n1() == 1);
    CHECK(dk.n0() == 1);
    CHECK(dk.potential() == P("-x*y", v));
    CHECK(dual(dk) == k);

    std::mt19937_64 rng(13);
    for (int it = 0; it < 8; ++it) {
        MatrixFactorization f = random_mf(rng, model);
        CHECK(dual(dual(f)) == f);
        CHECK(dual(f).potential() == model->reduce(-f.potential()));
    }

    // sheaf_hom potential is W - V
    MatrixFactorization a = koszul(model, P("x", v), P("x", v));
    MatrixFactorization b = koszul(model, P("y", v), P("y", v));
    CHECK(sheaf_hom(a, b).potential() == P("y^2 - x^2", v));
}

TEST_CASE("adjunction shadow: ranks and potentials") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    std::mt19937_64 rng(14);
    for (int it = 0; it < 6; ++it) {
        MatrixFactorization g = random_mf(rng, model, 1, 4);
        MatrixFactorization e = random_mf(rng, model, 1, 4);
        MatrixFactorization f = random_mf(rng, model, 1, 4);
        MatrixFactorization lhs = sheaf_hom(g, tensor(e, f));
        MatrixFactorization rhs = tensor(sheaf_hom(g, e), f);
        CHECK(lhs.potential() == rhs.potential());
        CHECK(lhs.n1() + lhs.n0() == rhs.n1() + rhs.n0());
        CHECK(lhs.n1() == rhs.n1());
    }
}

TEST_CASE("totalize") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));

    MFComplex one_term = MFComplex::make({k}, {}, 0);
    CHECK(totalize(one_term) == k);

    // A two-term complex of rank-(1,1) objects: shape check on the ranks.
    MFComplex two = MFComplex::make({k, k}, {MFMorphism::zero(k, k)}, 0);
    MatrixFactorization t = totalize(two);
    CHECK(t.n1() == k.n1() + k.n0());
    CHECK(t.n0() == k.n0() + k.n1());

    // Differentials that do not compose to zero are rejected.
    MatrixFactorization rr = koszul(model, P("0", v), P("0", v));
    MFMorphism id = MFMorphism::identity(rr);
    CHECK_THROWS_AS(MFComplex::make({rr, rr, rr}, {id, id}, 0), ValidationError);
}

TEST_CASE("cone of the zero morphism is sum-with-shift, literally") {
    auto model = ambient_model(xy());
    std::mt19937_64 rng(15);
    for (int it = 0; it < 10; ++it) {
        MatrixFactorization e = random_mf(rng, model, 1);
        MatrixFactorization f = koszul(model, e.potential(),
                                       Polynomial::constant(model->vars(), Rational(1)));
        MatrixFactorization c = cone(MFMorphism::zero(e, f));
        CHECK(c == direct_sum(f, shift(e)));
    }
}

TEST_CASE("cone of a nontrivial morphism validates") {
    // The Step-5 shape: K_s = (R -s-> R -0-> R) maps to F by (y, f0) whenever
    // s*f0 = phi1*y and the squares commute; take F = koszul(x, 0), s = x,
    // y = 1, f0 = 1: checks x*1 = x*1 and 0 = 0.
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization ks = koszul(model, P("x", v), P("0", v));
    MatrixFactorization f = koszul(model, P("x", v), P("0", v));
    PolyMatrix one(v, 1, 1);
    one.at(0, 0) = P("1", v);
    MFMorphism gamma = MFMorphism::make(ks, f, one, one);
    MatrixFactorization c = cone(gamma);
    CHECK(c.n1() == 2);
    CHECK(c.n0() == 2);
}

TEST_CASE("scale and half tensor") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));
    CHECK(scale(Rational(1), k) == k);
    CHECK(scale(Rational(1, 2), scale(Rational(2), k)) == k);
    CHECK_THROWS_AS(scale(Rational(0), k), PreconditionError);

    MatrixFactorization h = half_tensor(k, k);
    CHECK(h.potential() == P("x*y", v));
    CHECK(scale(Rational(3), k).potential() == P("3*x*y", v));
    CHECK_THROWS_AS(half_tensor(k, koszul(model, P("x", v), P("x", v))), PreconditionError);
}

TEST_CASE("morphism operations") {
    auto model = ambient_model(xy());
    auto v = model->vars();
    MatrixFactorization k = koszul(model, P("x", v), P("y", v));
    MFMorphism id = MFMorphism::identity(k);
    PolyMatrix m(v, 1, 1);
    m.at(0, 0) = P("x+y", v);
    MFMorphism f = MFMorphism::make(k, k, m, m); // multiplication morphisms always commute
    MFMorphism fid = compose(f, id);
    CHECK(fid.f1() == f.f1());
    CHECK(fid.f0() == f.f0());

    MFMorphism idid = tensor_morphism(id, id);
    CHECK(idid.f1() == PolyMatrix::identity(v, tensor(k, k).n1()));
    CHECK(idid.f0() == PolyMatrix::identity(v, tensor(k, k).n0()));

    // Mismatched shapes and non-commuting squares are rejected.
    CHECK_THROWS_AS(MFMorphism::make(k, tensor(k, k), m, m), PreconditionError);
    MatrixFactorization j = koszul(model, P("y", v), P("x", v));
    CHECK_THROWS_AS(MFMorphism::make(k, j, m, m), ValidationError);
}

TEST_CASE("nilpotent endomorphism squares to zero mod I") {
    auto model = xsq_model(2); // Q[x,y]/<x^2> carries the desk nilpotence case
    auto v = model->vars();
    auto plain = LGModel::make(make_vars({"x"}), Ideal::make(make_vars({"x"}), {}),
                               Polynomial::zero(make_vars({"x"})));
    // the rank-(1,1) zero-potential object over Q[x]/<x^2>
    auto vx = make_vars({"x"});
    auto rx = LGModel::make(vx, Ideal::make(vx, {parse_poly("x^2", vx)}), Polynomial::zero(vx));
    MatrixFactorization triv = koszul(rx, P("0", vx), P("0", vx));
    PolyMatrix mx(vx, 1, 1);
    mx.at(0, 0) = P("x", vx);
    MFMorphism mult_x = MFMorphism::make(triv, triv, mx, mx);
    MFMorphism sq = tensor_power(mult_x, 2);
    CHECK(rx->reduce(sq.f1()).is_zero());
    CHECK(rx->reduce(sq.f0()).is_zero());
    (void)model;
    (void)plain;
}

TEST_CASE("support blocks have potential zero") {
    auto model = cone_model();
    auto v = model->vars();
    std::vector<Polynomial> fs{P("x", v), P("y", v)};
    MatrixFactorization b = support_block(model, fs);
    CHECK(b.potential().is_zero());
    CHECK(b.n1() == 2);
    CHECK_THROWS_AS(support_block(model, std::span<const Polynomial>{}), PreconditionError);
}

TEST_CASE("non-zero-divisor check") {
    auto model = cone_model();
    CHECK(model->potential_is_nonzerodivisor()); // w on the cone
    auto v = xy();
    auto bad = LGModel::make(v, Ideal::make(v, {parse_poly("x*y", v)}), parse_poly("x", v));
    CHECK(!bad->potential_is_nonzerodivisor()); // x kills y on V(xy)
}

TEST_CASE("constructor invariant survives a randomized op corpus") {
    // Every operation output passes through the validating constructor; this
    // exercises the whole kernel surface on one seed-controlled corpus.
    std::mt19937_64 rng(16);
    auto model = cone_model();
    for (int it = 0; it < 25; ++it) {
        MatrixFactorization f = random_mf(rng, model, 3);
        MatrixFactorization g = random_mf(rng, model, 2);
        MatrixFactorization t = tensor(f, g);
        CHECK(t.potential() == model->reduce(f.potential() + g.potential()));
        MatrixFactorization h = sheaf_hom(f, g);
        CHECK(h.potential() == model->reduce(g.potential() - f.potential()));
        CHECK(dual(dual(f)) == f);
        CHECK(shift(shift(t)) == t);
    }
}
