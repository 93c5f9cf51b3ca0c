#pragma once

#include <random>
#include <string>
#include <vector>

#include "mflocus/expr.hpp"

namespace mflocus::testing {

inline VarsPtr xy() { return make_vars({"x", "y"}); }
inline VarsPtr xyzw() { return make_vars({"x", "y", "z", "w"}); }

inline Polynomial P(const std::string& text, const VarsPtr& vars) {
    return parse_poly(text, vars);
}

inline Rational Q(const std::string& text) { return rational_from_string(text); }

inline std::vector<Rational> point(std::initializer_list<int> coords) {
    std::vector<Rational> p;
    for (int c : coords)
        p.emplace_back(c);
    return p;
}

// Small random polynomials for property tests. Deterministic given the engine
// state; keep degrees and coefficient sizes desk-sized.
inline Polynomial random_poly(std::mt19937_64& rng, const VarsPtr& vars, unsigned max_terms = 4,
                              unsigned max_deg_per_var = 2, int max_coeff = 5) {
    std::vector<Polynomial::Term> terms;
    unsigned nterms = static_cast<unsigned>(rng() % (max_terms + 1));
    for (unsigned t = 0; t < nterms; ++t) {
        Monomial m = Monomial::one(vars->size());
        for (std::size_t i = 0; i < vars->size(); ++i)
            m.e[i] = static_cast<std::uint32_t>(rng() % (max_deg_per_var + 1));
        int c = static_cast<int>(rng() % (2 * max_coeff + 1)) - max_coeff;
        terms.emplace_back(std::move(m), Rational(c));
    }
    return Polynomial::from_terms(vars, std::move(terms));
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n, int span = 2) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i)
        p.emplace_back(static_cast<int>(rng() % (2 * span + 1)) - span);
    return p;
}

} // namespace mflocus::testing

#include "mflocus/mfcore.hpp"

namespace mflocus::testing {

inline ModelPtr ambient_model(const VarsPtr& vars, const std::string& w = "0") {
    return LGModel::make(vars, Ideal::make(vars, {}), parse_poly(w, vars));
}

inline ModelPtr cone_model() {
    auto v = xyzw();
    return LGModel::make(v, Ideal::make(v, {parse_poly("x*y - z*w", v)}), parse_poly("w", v));
}

// Model Q[x]/<x^2> with potential y over Q[x,y], as in the nodal-line example.
inline ModelPtr xsq_model(unsigned n = 2) {
    auto v = xy();
    return LGModel::make(v, Ideal::make(v, {parse_poly("x", v).pow(n)}), parse_poly("y", v));
}

// Randomized factorizations built from koszul / tensor / shift / direct_sum /
// cone-of-zero generators, rank-capped for desk-scale runs.
inline MatrixFactorization random_mf(std::mt19937_64& rng, const ModelPtr& model,
                                     unsigned depth = 2, std::size_t max_rank = 8) {
    auto leaf = [&]() {
        Polynomial f = random_poly(rng, model->vars(), 2, 1, 2);
        Polynomial g = random_poly(rng, model->vars(), 2, 1, 2);
        return koszul(model, f, g);
    };
    MatrixFactorization acc = leaf();
    for (unsigned d = 0; d < depth; ++d) {
        switch (rng() % 4) {
            case 0:
                acc = shift(acc);
                break;
            case 1: {
                if (acc.n1() + acc.n0() > max_rank)
                    break;
                acc = direct_sum(acc, MatrixFactorization::zero(model, acc.potential()));
                acc = direct_sum(acc, acc);
                break;
            }
            case 2: {
                if (2 * (acc.n1() + acc.n0()) > max_rank)
                    break;
                acc = tensor(acc, leaf());
                break;
            }
            case 3: {
                // cone of the zero morphism into a fresh leaf of the same potential
                MatrixFactorization other = koszul(model, acc.potential(),
                                                   Polynomial::constant(model->vars(), Rational(1)));
                acc = cone(MFMorphism::zero(other, acc));
                break;
            }
        }
    }
    return acc;
}

} // namespace mflocus::testing
