#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mflocus/expr.hpp"

namespace mflocus {

// A finitely generated ideal of Q[vars]. The zero ideal is the single generator 0.
struct Ideal {
    VarsPtr vars;
    std::vector<Polynomial> gens;

    static Ideal make(VarsPtr vars, std::vector<Polynomial> gens);
    bool is_zero() const;
};

struct GroebnerOptions {
    // Reduction steps allowed before the computation aborts with
    // BudgetExhaustedError instead of hanging.
    std::uint64_t step_budget = 1'000'000;
};

// A reduced Groebner basis carrying membership certificates: each basis
// element is stored together with the cofactors expressing it exactly as a
// combination of the original generators.
class GroebnerBasis {
public:
    const std::vector<Polynomial>& elements() const { return elements_; }
    const MonomialOrder& order() const { return order_; }
    const Ideal& source() const { return source_; }
    // certificates()[k][j] is the cofactor of source generator j in element k.
    const std::vector<std::vector<Polynomial>>& certificates() const { return certificates_; }

    bool contains_one() const;

    // Exact re-verification of the stored certificates.
    bool verify_certificates() const;
    // Buchberger criterion on the output: every S-polynomial reduces to 0.
    bool verify_buchberger(const GroebnerOptions& opts = {}) const;

private:
    friend GroebnerBasis groebner(const Ideal&, const MonomialOrder&, const GroebnerOptions&);
    Ideal source_{};
    MonomialOrder order_ = MonomialOrder::degrevlex();
    std::vector<Polynomial> elements_;
    std::vector<std::vector<Polynomial>> certificates_;
};

// Buchberger with the normal selection strategy and both S-pair criteria.
// Deterministic given (I, order).
GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::degrevlex(),
                       const GroebnerOptions& opts = {});

struct NormalFormResult {
    Polynomial remainder;
    // Cofactors over the basis elements: f = sum cofactors[k]*g_k + remainder.
    std::vector<Polynomial> cofactors;
};

// Fully reduced normal form: no term of the remainder is divisible by any
// leading term of the basis. remainder == 0 iff f lies in the ideal.
NormalFormResult normal_form(const Polynomial& f, const GroebnerBasis& gb);
// Remainder-only convenience.
Polynomial nf(const Polynomial& f, const GroebnerBasis& gb);

// Folds normal-form cofactors through the basis certificates, yielding the
// combination of f - remainder over the ORIGINAL generators.
std::vector<Polynomial> combination_over_generators(const GroebnerBasis& gb,
                                                    const std::vector<Polynomial>& gb_cofactors);

// (I : f) = {g : g*f in I}, via the t-elimination form of the intersection
// trick. Throws PreconditionError when f = 0.
Ideal ideal_quotient(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& opts = {});

// f in sqrt(I), decided by testing 1 in I + <1 - t*f> (Rabinowitsch).
bool radical_membership(const Polynomial& f, const Ideal& ideal, const GroebnerOptions& opts = {});

// Krull dimension of V(I) via maximal independent variable sets modulo the
// leading-term ideal; nullopt when 1 in I (empty variety).
std::optional<unsigned> ideal_dimension(const Ideal& ideal, const GroebnerOptions& opts = {});

} // namespace mflocus
