#pragma once

#include <cstdint>
#include <string>

#include "mflocus/singloc.hpp"

namespace mflocus {

// A sampled member of the smallest thick tensor-submodule containing the
// generators, together with the expression tree that witnesses membership.
struct SampledExpression {
    MatrixFactorization value;
    std::string tree;
};

// Seed-deterministic expression sampling over the closure operations
// {shift, direct_sum, cone-of-zero, tensor by a potential-0 block,
// half-tensor by another member}. The potential of the result stays W.
SampledExpression sample_submodule_expression(const std::vector<MatrixFactorization>& generators,
                                              std::uint64_t seed, unsigned depth,
                                              std::size_t max_total_rank = 24);

struct ContainmentViolation {
    std::string tree;
    std::string locus;
};

struct ContainmentReport {
    std::size_t expressions_checked = 0;
    std::size_t points_checked = 0;
    std::vector<ContainmentViolation> violations;
    bool pass() const { return violations.empty(); }
};

// Every sampled expression must be supported only where some reference
// generator is (the executable face of the closure laws). `reference`
// defaults to the generators themselves; passing a different list is the
// negative control.
ContainmentReport check_support_containment(const std::vector<SampledExpression>& expressions,
                                            const std::vector<MatrixFactorization>& reference,
                                            const std::vector<PrimeLocus>& points);

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness; // first counterexample, when failing
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
};

// The five support-data axioms, evaluated pointwise on the given objects
// (all of potential W) over loci lying on V(W); the half-twisted tensor
// product plays the role of the monoidal structure, and coverage of the
// relative singular locus is witnessed by on-demand nonvanishing objects.
AxiomReport check_support_data_axioms(const ModelPtr& model,
                                      const std::vector<MatrixFactorization>& objects,
                                      const std::vector<PrimeLocus>& loci, std::uint64_t seed = 1);

// Supports are invariant under the lambda-twist for every nonzero lambda.
AxiomReport check_scale_invariance(const std::vector<MatrixFactorization>& objects,
                                   const std::vector<PrimeLocus>& loci,
                                   const std::vector<Rational>& lambdas);

struct NilpotenceResult {
    std::optional<unsigned> n; // smallest tensor power that is null, if found
};

// Searches for the smallest n <= max_n with f^(x)n null-homotopic at the
// given degree bound. Requires the fiber of f to vanish (be null-homotopic)
// at every probe point; reports the offending probe otherwise.
NilpotenceResult nilpotence_search(const MFMorphism& f, unsigned max_n, unsigned degree_bound,
                                   const std::vector<PrimeLocus>& probes,
                                   std::size_t max_total_rank = 64);

struct GeneratorProbeRow {
    std::string locus;
    bool in_singloc = false;
    bool in_support = false;
};

struct GeneratorProbeReport {
    std::vector<GeneratorProbeRow> rows;
    // Probe points inside the relative singular locus but outside Supp(G):
    // each certifies that G is not a tensor-generator.
    std::vector<std::string> flagged;
    bool flags_generator_gap() const { return !flagged.empty(); }
};

GeneratorProbeReport generator_probe(const ModelPtr& model, const MatrixFactorization& g,
                                     const std::vector<PrimeLocus>& probes);

// Degree-bounded commutation ansatz: a deterministic (seeded) morphism
// E -> F with polynomial entries of total degree <= degree_bound; the zero
// morphism when no nonzero solution exists.
MFMorphism sample_morphism(const MatrixFactorization& e, const MatrixFactorization& f,
                           unsigned degree_bound, std::uint64_t seed);

} // namespace mflocus
