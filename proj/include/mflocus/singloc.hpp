#pragma once

#include "mflocus/localize.hpp"

namespace mflocus {

// An identity r*W = sum m_i*n_i mod I with r outside the prime and all
// m_i, n_i inside it, certifying W in m_p^2.
struct WitnessDecomposition {
    Polynomial r;
    std::optional<Polynomial> a; // rational points only: 1 - a*r vanishes at p
    std::vector<std::pair<Polynomial, Polynomial>> pairs;

    // Re-verifies the identity and the membership constraints from scratch.
    bool verify(const LGModel& model, const PrimeLocus& p) const;
};

// Membership in Sing^loc(X_0/X): exists s outside p with s*W in p^2 + I,
// decided via the quotient ((P^2 + I) : W) in the ambient ring.
// Requires p to contain W.
bool in_singloc(const ModelPtr& model, const PrimeLocus& p);

// Smooth ambient space only: W(p) = 0 and all partials of W vanish at p.
bool critical_point_check(const ModelPtr& model, const std::vector<Rational>& point);

struct JacobianNumbers {
    std::size_t emb_dim_x = 0;
    unsigned dim_x = 0;
    bool on_x0 = false;
    std::size_t emb_dim_x0 = 0; // meaningful only when on_x0
    unsigned dim_x0 = 0;        // meaningful only when on_x0
    bool codim_excess = false;  // codim(O_{X0,p}) > codim(O_{X,p})
};

JacobianNumbers jacobian_numbers(const ModelPtr& model, const std::vector<Rational>& point);

// Jacobian-criterion singularity of X_0 at the locus (equidimensionality of
// X_0 assumed, so the global dimension serves as the local one):
// singular iff rank Jac(I + <W>)(p) < n - dim V(I + <W>).
bool jacobian_singular_x0(const ModelPtr& model, const PrimeLocus& p);

// Constructive witness behind the membership: certificate-tracked normal form
// of s*W against GB(P^2 + I), folded back onto the generators {p_i p_j} + I.
WitnessDecomposition witness_decomposition(const ModelPtr& model, const PrimeLocus& p);

// The tensor product koszul(W, 1-a*r) (x) tensor_i koszul(a*m_i, n_i): an
// object of potential W supported at the point.
MatrixFactorization build_nonvanishing_mf(const ModelPtr& model, const std::vector<Rational>& point);

struct SupportComponent {
    std::vector<Polynomial> cut_out;     // sections whose joint zero locus is the component
    std::vector<Rational> base_point;    // a relative-singular point on the component
};

// Direct sum over components of support_block(fs) (x) build_nonvanishing_mf(p).
MatrixFactorization realize_support(const ModelPtr& model,
                                    const std::vector<SupportComponent>& components);

struct SingLocReport {
    PrimeLocus locus;
    bool in_singloc = false;
    bool in_sing_x0 = false;                    // Jacobian test
    std::optional<bool> in_crit;                // smooth-ambient rational points only
    std::optional<WitnessDecomposition> witness;
};

// Per-locus reports; verifies the containment Sing^loc(X_0/X) <= Sing(X_0)
// on every locus as an internal consistency check.
std::vector<SingLocReport> sample_singloc(const ModelPtr& model, const std::vector<PrimeLocus>& loci,
                                          bool with_witness = false);

} // namespace mflocus
