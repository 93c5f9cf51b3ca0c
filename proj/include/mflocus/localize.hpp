#pragma once

#include <optional>
#include <variant>

#include "mflocus/mfcore.hpp"

namespace mflocus {

// A point of Spec R: either a rational point on the variety or a prime ideal
// given by generators (primality asserted by the caller, not verified).
class PrimeLocus {
public:
    enum class Kind { rational_point, prime_ideal };

    static PrimeLocus rational_point(ModelPtr model, std::vector<Rational> coords);
    static PrimeLocus prime_ideal(ModelPtr model, Ideal generators);

    Kind kind() const { return kind_; }
    const ModelPtr& model() const { return model_; }
    const std::vector<Rational>& coords() const { return coords_; }
    const Ideal& ideal() const { return ideal_; }
    // Groebner basis of the ambient lift of the prime (for a rational point,
    // of <x_i - a_i>).
    const GroebnerBasis& gb() const { return gb_; }

    // Does f vanish at this locus (i.e. lie in the prime)?
    bool contains(const Polynomial& f) const;

    std::string to_string() const;

private:
    PrimeLocus(Kind kind, ModelPtr model, std::vector<Rational> coords, Ideal ideal,
               GroebnerBasis gb)
        : kind_(kind), model_(std::move(model)), coords_(std::move(coords)),
          ideal_(std::move(ideal)), gb_(std::move(gb)) {}
    Kind kind_;
    ModelPtr model_;
    std::vector<Rational> coords_; // rational_point only
    Ideal ideal_;
    GroebnerBasis gb_;
};

// Rank of a polynomial matrix over the residue field k(p), by fraction-free
// elimination in R/p with zero tests by normal form mod gb(p).
std::size_t rank_at(const PolyMatrix& m, const PrimeLocus& p);

struct FiberCohomology {
    std::size_t h0 = 0, h1 = 0;
    std::size_t total() const { return h0 + h1; }
};

// H_i of the fiber F (x) k(p); requires the fiber potential to vanish at p.
FiberCohomology fiber_cohomology(const MatrixFactorization& f, const PrimeLocus& p);

// Nakayama support test: false outright when the potential is a unit at p,
// otherwise true iff the fiber has nonzero cohomology.
bool in_support(const MatrixFactorization& f, const PrimeLocus& p);

// Elements of the local ring at p: fractions with denominator not in p.
struct LocalElem {
    Polynomial num, den;
    bool vanishes_at_locus(const PrimeLocus& p) const;
};

// A factorization over the local ring at a point, produced by trimming.
class LocalMF {
public:
    LocalMF(PrimeLocus locus, std::size_t n1, std::size_t n0, std::vector<LocalElem> phi1,
            std::vector<LocalElem> phi0)
        : locus_(std::move(locus)), n1_(n1), n0_(n0), phi1_(std::move(phi1)),
          phi0_(std::move(phi0)) {}

    std::size_t n1() const { return n1_; }
    std::size_t n0() const { return n0_; }
    std::size_t total_rank() const { return n1_ + n0_; }
    const PrimeLocus& locus() const { return locus_; }
    const LocalElem& phi1_at(std::size_t r, std::size_t c) const { return phi1_[r * n1_ + c]; }
    const LocalElem& phi0_at(std::size_t r, std::size_t c) const { return phi0_[r * n0_ + c]; }

    // All matrix entries lie in the maximal ideal at the locus.
    bool entries_vanish_at_locus() const;

private:
    PrimeLocus locus_;
    std::size_t n1_, n0_;
    std::vector<LocalElem> phi1_, phi0_; // row-major, shapes n0 x n1 and n1 x n0
};

// Unit-entry elimination: repeatedly pivots on the lexicographically first
// entry that is a unit at p, splitting off a contractible rank-(1,1) summand,
// until every entry vanishes at p. The result is homotopy equivalent to f
// over the local ring at p.
LocalMF trim_at_point(const MatrixFactorization& f, const PrimeLocus& p);

enum class Verdict { yes, no, unknown };

struct HomotopyWitness {
    PolyMatrix h0; // E0 -> F1
    PolyMatrix h1; // E1 -> F0
};

struct HomotopyDecision {
    Verdict verdict;
    std::optional<HomotopyWitness> witness; // present for ring-level "yes"
};

// Locus of a null-homotopy decision: exactly at a fiber, or a degree-bounded
// search over the ring (yes/unknown; never a false "no").
struct FiberAt {
    PrimeLocus locus;
};
struct RingLevel {
    unsigned degree_bound = 4;
    // Bail out (returning unknown) when the linear system would exceed this
    // many unknowns.
    std::size_t max_unknowns = 20000;
};

HomotopyDecision is_nullhomotopic(const MFMorphism& f, const FiberAt& at);
HomotopyDecision is_nullhomotopic(const MFMorphism& f, const RingLevel& level);

struct H0ClassOptions {
    unsigned degree_bound = 4;
    std::vector<PrimeLocus> probes; // fiber obstructions give exact "no"
};

// Does the column f0 (a morphism unit -> F, with F of potential 0) represent
// the zero class of H_0(F) = Ker(phi0)/Im(phi1)? Membership of f0 in the
// column span of phi1 over R: exact for single-row factorizations (ideal
// membership), degree-bounded with probe obstructions otherwise.
HomotopyDecision h0_class_is_zero(const MatrixFactorization& f, const PolyMatrix& f0,
                                  const H0ClassOptions& opts = {});

} // namespace mflocus
