#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mflocus/ideal.hpp"
#include "mflocus/matrix.hpp"

namespace mflocus {

class LGModel;
using ModelPtr = std::shared_ptr<const LGModel>;

// An affine Landau-Ginzburg model (Spec Q[vars]/I, O, W), with the Groebner
// basis of I cached; W is stored as its normal form mod I.
class LGModel : public std::enable_shared_from_this<LGModel> {
public:
    static ModelPtr make(VarsPtr vars, Ideal relations, Polynomial potential,
                         GroebnerOptions opts = {});

    const VarsPtr& vars() const { return vars_; }
    const Ideal& relations() const { return relations_; }
    const GroebnerBasis& relations_gb() const { return gb_; }
    const Polynomial& potential() const { return potential_; }
    const GroebnerOptions& options() const { return opts_; }

    Polynomial reduce(const Polynomial& p) const;
    PolyMatrix reduce(const PolyMatrix& m) const;
    bool smooth_ambient() const { return relations_.is_zero(); }

    // On-demand check that W is a non-zero-divisor of R: (I : W) = I.
    bool potential_is_nonzerodivisor() const;

    bool same_as(const LGModel& other) const;

private:
    LGModel(VarsPtr vars, Ideal relations, Polynomial potential, GroebnerBasis gb,
            GroebnerOptions opts);
    VarsPtr vars_;
    Ideal relations_;
    GroebnerBasis gb_;
    Polynomial potential_;
    GroebnerOptions opts_;
};

void require_same_model(const ModelPtr& a, const ModelPtr& b, const char* what);

// A matrix factorization of some potential V over the model's ring:
// phi1: F1 -> F0 (an n0 x n1 matrix), phi0: F0 -> F1 (n1 x n0), with
// phi0*phi1 = V*Id and phi1*phi0 = V*Id mod I. Entries and V are kept in
// normal form mod I, so equality of factorizations is entry-wise.
class MatrixFactorization {
public:
    static MatrixFactorization make(ModelPtr model, Polynomial potential, PolyMatrix phi1,
                                    PolyMatrix phi0);
    // (0 -> R -> 0): the unit for the tensor product, potential 0.
    static MatrixFactorization unit(ModelPtr model);
    // The rank-(0,0) zero object for a given potential.
    static MatrixFactorization zero(ModelPtr model, Polynomial potential);
    static MatrixFactorization zero(ModelPtr model);

    const ModelPtr& model() const { return model_; }
    const Polynomial& potential() const { return potential_; }
    std::size_t n1() const { return phi1_.cols(); }
    std::size_t n0() const { return phi1_.rows(); }
    const PolyMatrix& phi1() const { return phi1_; }
    const PolyMatrix& phi0() const { return phi0_; }

    bool operator==(const MatrixFactorization& other) const;

private:
    MatrixFactorization(ModelPtr model, Polynomial potential, PolyMatrix phi1, PolyMatrix phi0)
        : model_(std::move(model)), potential_(std::move(potential)), phi1_(std::move(phi1)),
          phi0_(std::move(phi0)) {}
    ModelPtr model_;
    Polynomial potential_;
    PolyMatrix phi1_;
    PolyMatrix phi0_;
};

// (R -f-> R -g-> R), potential f*g.
MatrixFactorization koszul(ModelPtr model, const Polynomial& f, const Polynomial& g);

MatrixFactorization direct_sum(const MatrixFactorization& e, const MatrixFactorization& f);

// Shift functor T: ranks swap, matrices swap and negate; T^2 = id on the nose.
MatrixFactorization shift(const MatrixFactorization& f);

// Tensor product; potentials add. Kronecker blocks use the row-major
// convention with the left (E) factor varying slowest.
MatrixFactorization tensor(const MatrixFactorization& e, const MatrixFactorization& f);

// Sheaf Hom from E to F; potential W - V.
MatrixFactorization sheaf_hom(const MatrixFactorization& e, const MatrixFactorization& f);

// The dual, with potential -W and matrices built from transposes. Normalized
// as the shift of sheaf_hom(F, unit) so that dual(dual(F)) == F is literal
// matrix equality.
MatrixFactorization dual(const MatrixFactorization& f);

// The lambda-twist: multiplies phi0 by lambda, landing in potential lambda*W.
MatrixFactorization scale(const Rational& lambda, const MatrixFactorization& f);

// scale(1/2, tensor(E,F)) for E, F of the same potential W; lands back in W.
MatrixFactorization half_tensor(const MatrixFactorization& e, const MatrixFactorization& f);

// tensor_i koszul(f_i, 0): potential 0 and support exactly the joint zero locus.
MatrixFactorization support_block(ModelPtr model, std::span<const Polynomial> sections);

// A morphism of factorizations over one model and potential: both squares
// commute mod I.
class MFMorphism {
public:
    static MFMorphism make(MatrixFactorization source, MatrixFactorization target, PolyMatrix f1,
                           PolyMatrix f0);
    static MFMorphism identity(const MatrixFactorization& f);
    static MFMorphism zero(const MatrixFactorization& source, const MatrixFactorization& target);

    const MatrixFactorization& source() const { return source_; }
    const MatrixFactorization& target() const { return target_; }
    const PolyMatrix& f1() const { return f1_; }
    const PolyMatrix& f0() const { return f0_; }

    bool is_zero() const { return f1_.is_zero() && f0_.is_zero(); }

private:
    MFMorphism(MatrixFactorization source, MatrixFactorization target, PolyMatrix f1, PolyMatrix f0)
        : source_(std::move(source)), target_(std::move(target)), f1_(std::move(f1)),
          f0_(std::move(f0)) {}
    MatrixFactorization source_, target_;
    PolyMatrix f1_, f0_;
};

MFMorphism compose(const MFMorphism& g, const MFMorphism& f); // g after f
MFMorphism shift(const MFMorphism& f);
MFMorphism tensor_morphism(const MFMorphism& f, const MFMorphism& g);
MFMorphism tensor_power(const MFMorphism& f, unsigned n); // n >= 1, left fold

// Bounded complex of factorizations; entries[k] sits in degree top_degree - k
// and differentials[k] : entries[k+1] -> entries[k] ... stored with entries in
// DESCENDING degree so the totalization's block layout puts higher degrees first.
class MFComplex {
public:
    // entries are listed from highest degree (index 0) down; differentials[k]
    // maps entries[k+1] (one degree lower) to entries[k]. Consecutive
    // differentials must compose to 0 mod I.
    static MFComplex make(std::vector<MatrixFactorization> entries, std::vector<MFMorphism> diffs,
                          int top_degree = 0);

    const std::vector<MatrixFactorization>& entries() const { return entries_; }
    const std::vector<MFMorphism>& differentials() const { return diffs_; }
    int top_degree() const { return top_degree_; }
    int degree_of(std::size_t index) const { return top_degree_ - static_cast<int>(index); }

private:
    MFComplex(std::vector<MatrixFactorization> entries, std::vector<MFMorphism> diffs, int top)
        : entries_(std::move(entries)), diffs_(std::move(diffs)), top_degree_(top) {}
    std::vector<MatrixFactorization> entries_;
    std::vector<MFMorphism> diffs_;
    int top_degree_;
};

// Collapses a bounded complex to a single factorization; the degree-i piece
// contributes with sign (-1)^i on its internal differential.
MatrixFactorization totalize(const MFComplex& complex);

// Totalization of (E -f-> F) with F in degree zero:
// Cone_1 = F1 + E0, Cone_0 = F0 + E1, differentials [[phi^F, f],[0, -phi^E]].
MatrixFactorization cone(const MFMorphism& f);

} // namespace mflocus
