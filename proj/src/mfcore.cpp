#include "mflocus/mfcore.hpp"

#include <sstream>
#include <utility>

namespace mflocus {

LGModel::LGModel(VarsPtr vars, Ideal relations, Polynomial potential, GroebnerBasis gb,
                 GroebnerOptions opts)
    : vars_(std::move(vars)), relations_(std::move(relations)), gb_(std::move(gb)),
      potential_(std::move(potential)), opts_(opts) {}

ModelPtr LGModel::make(VarsPtr vars, Ideal relations, Polynomial potential, GroebnerOptions opts) {
    require_same_vars(vars, relations.vars, "model relations");
    require_same_vars(vars, potential.vars(), "model potential");
    GroebnerBasis gb = groebner(relations, MonomialOrder::degrevlex(), opts);
    Polynomial w = nf(potential, gb);
    return ModelPtr(new LGModel(std::move(vars), std::move(relations), std::move(w), std::move(gb), opts));
}

Polynomial LGModel::reduce(const Polynomial& p) const { return nf(p, gb_); }

PolyMatrix LGModel::reduce(const PolyMatrix& m) const {
    return m.map([this](const Polynomial& p) { return nf(p, gb_); });
}

bool LGModel::potential_is_nonzerodivisor() const {
    if (potential_.is_zero())
        return false;
    Ideal quot = ideal_quotient(relations_, potential_, opts_);
    // (I : W) = I iff every quotient generator already lies in I.
    for (const auto& q : quot.gens)
        if (!reduce(q).is_zero())
            return false;
    return true;
}

bool LGModel::same_as(const LGModel& other) const {
    if (this == &other)
        return true;
    return same_vars(vars_, other.vars_) && potential_ == other.potential_ &&
           relations_.gens == other.relations_.gens;
}

void require_same_model(const ModelPtr& a, const ModelPtr& b, const char* what) {
    if (!(a == b || (a && b && a->same_as(*b))))
        throw ContextMismatchError(std::string("model mismatch in ") + what);
}

namespace {

void check_factorization_relations(const LGModel& model, const Polynomial& v, const PolyMatrix& phi1,
                                   const PolyMatrix& phi0) {
    std::size_t n1 = phi1.cols(), n0 = phi1.rows();
    if (phi0.rows() != n1 || phi0.cols() != n0)
        throw PreconditionError("phi0 shape must be the reverse of phi1");
    auto check = [&](const PolyMatrix& prod, std::size_t n, const char* which) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Polynomial expect = i == j ? v : Polynomial::zero(model.vars());
                Polynomial got = model.reduce(prod.at(i, j));
                if (!(got == expect)) {
                    std::ostringstream msg;
                    msg << "factorization relation " << which << " fails at entry (" << i << ", "
                        << j << "): got " << got.to_string() << ", expected " << expect.to_string();
                    throw ValidationError(msg.str());
                }
            }
    };
    check(phi0 * phi1, n1, "phi0*phi1 = V*Id");
    check(phi1 * phi0, n0, "phi1*phi0 = V*Id");
}

} // namespace

MatrixFactorization MatrixFactorization::make(ModelPtr model, Polynomial potential, PolyMatrix phi1,
                                              PolyMatrix phi0) {
    require_same_vars(model->vars(), potential.vars(), "factorization potential");
    Polynomial v = model->reduce(potential);
    PolyMatrix p1 = model->reduce(phi1);
    PolyMatrix p0 = model->reduce(phi0);
    check_factorization_relations(*model, v, p1, p0);
    return MatrixFactorization(std::move(model), std::move(v), std::move(p1), std::move(p0));
}

MatrixFactorization MatrixFactorization::unit(ModelPtr model) {
    const VarsPtr& vars = model->vars();
    return MatrixFactorization(std::move(model), Polynomial::zero(vars), PolyMatrix(vars, 1, 0),
                               PolyMatrix(vars, 0, 1));
}

MatrixFactorization MatrixFactorization::zero(ModelPtr model, Polynomial potential) {
    Polynomial v = model->reduce(potential);
    const VarsPtr& vars = model->vars();
    return MatrixFactorization(std::move(model), std::move(v), PolyMatrix(vars, 0, 0),
                               PolyMatrix(vars, 0, 0));
}

MatrixFactorization MatrixFactorization::zero(ModelPtr model) {
    const VarsPtr& vars = model->vars();
    return zero(std::move(model), Polynomial::zero(vars));
}

bool MatrixFactorization::operator==(const MatrixFactorization& other) const {
    return model_->same_as(*other.model_) && potential_ == other.potential_ &&
           phi1_ == other.phi1_ && phi0_ == other.phi0_;
}

MatrixFactorization koszul(ModelPtr model, const Polynomial& f, const Polynomial& g) {
    const VarsPtr& vars = model->vars();
    PolyMatrix phi1(vars, 1, 1), phi0(vars, 1, 1);
    phi1.at(0, 0) = f;
    phi0.at(0, 0) = g;
    return MatrixFactorization::make(std::move(model), f * g, std::move(phi1), std::move(phi0));
}

MatrixFactorization direct_sum(const MatrixFactorization& e, const MatrixFactorization& f) {
    require_same_model(e.model(), f.model(), "direct sum");
    if (!(e.potential() == f.potential()))
        throw PreconditionError("direct sum requires matching potentials");
    return MatrixFactorization::make(e.model(), e.potential(),
                                     PolyMatrix::block_diag(e.phi1(), f.phi1()),
                                     PolyMatrix::block_diag(e.phi0(), f.phi0()));
}

MatrixFactorization shift(const MatrixFactorization& f) {
    return MatrixFactorization::make(f.model(), f.potential(), -f.phi0(), -f.phi1());
}

MatrixFactorization tensor(const MatrixFactorization& e, const MatrixFactorization& f) {
    require_same_model(e.model(), f.model(), "tensor product");
    const VarsPtr& vars = e.model()->vars();
    auto id = [&](std::size_t n) { return PolyMatrix::identity(vars, n); };
    PolyMatrix phi1 = PolyMatrix::blocks2x2(
        PolyMatrix::kron(e.phi1(), id(f.n0())), PolyMatrix::kron(id(e.n0()), f.phi1()),
        PolyMatrix::kron(-id(e.n1()), f.phi0()), PolyMatrix::kron(e.phi0(), id(f.n1())));
    PolyMatrix phi0 = PolyMatrix::blocks2x2(
        PolyMatrix::kron(e.phi0(), id(f.n0())), PolyMatrix::kron(-id(e.n1()), f.phi1()),
        PolyMatrix::kron(id(e.n0()), f.phi0()), PolyMatrix::kron(e.phi1(), id(f.n1())));
    return MatrixFactorization::make(e.model(), e.potential() + f.potential(), std::move(phi1),
                                     std::move(phi0));
}

MatrixFactorization sheaf_hom(const MatrixFactorization& e, const MatrixFactorization& f) {
    require_same_model(e.model(), f.model(), "sheaf hom");
    const VarsPtr& vars = e.model()->vars();
    auto id = [&](std::size_t n) { return PolyMatrix::identity(vars, n); };
    // Hom(E_i, F_j) is vectorized with the E-index slowest; post-composition by
    // A is kron(I, A), pre-composition by B is kron(B^T, I).
    PolyMatrix phi1 = PolyMatrix::blocks2x2(
        PolyMatrix::kron(e.phi0().transpose(), id(f.n0())), PolyMatrix::kron(id(e.n0()), f.phi1()),
        PolyMatrix::kron(id(e.n1()), f.phi0()), PolyMatrix::kron(e.phi1().transpose(), id(f.n1())));
    PolyMatrix phi0 = PolyMatrix::blocks2x2(
        PolyMatrix::kron(-e.phi1().transpose(), id(f.n0())), PolyMatrix::kron(id(e.n1()), f.phi1()),
        PolyMatrix::kron(id(e.n0()), f.phi0()), PolyMatrix::kron(-e.phi0().transpose(), id(f.n1())));
    return MatrixFactorization::make(e.model(), f.potential() - e.potential(), std::move(phi1),
                                     std::move(phi0));
}

MatrixFactorization dual(const MatrixFactorization& f) {
    return shift(sheaf_hom(f, MatrixFactorization::unit(f.model())));
}

MatrixFactorization scale(const Rational& lambda, const MatrixFactorization& f) {
    if (lambda == 0)
        throw PreconditionError("scale by zero is not an equivalence");
    return MatrixFactorization::make(f.model(), f.potential().scaled(lambda), f.phi1(),
                                     f.phi0().scaled(lambda));
}

MatrixFactorization half_tensor(const MatrixFactorization& e, const MatrixFactorization& f) {
    if (!(e.potential() == f.potential()))
        throw PreconditionError("half tensor requires matching potentials");
    return scale(Rational(1, 2), tensor(e, f));
}

MatrixFactorization support_block(ModelPtr model, std::span<const Polynomial> sections) {
    if (sections.empty())
        throw PreconditionError("support block requires at least one section");
    MatrixFactorization acc = koszul(model, sections[0], Polynomial::zero(model->vars()));
    for (std::size_t i = 1; i < sections.size(); ++i)
        acc = tensor(acc, koszul(model, sections[i], Polynomial::zero(model->vars())));
    return acc;
}

MFMorphism MFMorphism::make(MatrixFactorization source, MatrixFactorization target, PolyMatrix f1,
                            PolyMatrix f0) {
    require_same_model(source.model(), target.model(), "morphism");
    if (!(source.potential() == target.potential()))
        throw PreconditionError("morphism requires matching potentials");
    if (f1.rows() != target.n1() || f1.cols() != source.n1() || f0.rows() != target.n0() ||
        f0.cols() != source.n0())
        throw PreconditionError("morphism component shapes do not match");
    const LGModel& model = *source.model();
    PolyMatrix g1 = model.reduce(f1);
    PolyMatrix g0 = model.reduce(f0);
    if (!model.reduce(g0 * source.phi1() - target.phi1() * g1).is_zero() ||
        !model.reduce(g1 * source.phi0() - target.phi0() * g0).is_zero())
        throw ValidationError("morphism squares do not commute mod I");
    return MFMorphism(std::move(source), std::move(target), std::move(g1), std::move(g0));
}

MFMorphism MFMorphism::identity(const MatrixFactorization& f) {
    const VarsPtr& vars = f.model()->vars();
    return MFMorphism(f, f, PolyMatrix::identity(vars, f.n1()), PolyMatrix::identity(vars, f.n0()));
}

MFMorphism MFMorphism::zero(const MatrixFactorization& source, const MatrixFactorization& target) {
    require_same_model(source.model(), target.model(), "zero morphism");
    if (!(source.potential() == target.potential()))
        throw PreconditionError("morphism requires matching potentials");
    const VarsPtr& vars = source.model()->vars();
    PolyMatrix f1(vars, target.n1(), source.n1());
    PolyMatrix f0(vars, target.n0(), source.n0());
    return MFMorphism(source, target, std::move(f1), std::move(f0));
}

MFMorphism compose(const MFMorphism& g, const MFMorphism& f) {
    if (!(g.source() == f.target()))
        throw PreconditionError("composition endpoints do not match");
    return MFMorphism::make(f.source(), g.target(), g.f1() * f.f1(), g.f0() * f.f0());
}

MFMorphism shift(const MFMorphism& f) {
    return MFMorphism::make(shift(f.source()), shift(f.target()), f.f0(), f.f1());
}

MFMorphism tensor_morphism(const MFMorphism& f, const MFMorphism& g) {
    MatrixFactorization source = tensor(f.source(), g.source());
    MatrixFactorization target = tensor(f.target(), g.target());
    PolyMatrix h1 = PolyMatrix::block_diag(PolyMatrix::kron(f.f1(), g.f0()),
                                           PolyMatrix::kron(f.f0(), g.f1()));
    PolyMatrix h0 = PolyMatrix::block_diag(PolyMatrix::kron(f.f0(), g.f0()),
                                           PolyMatrix::kron(f.f1(), g.f1()));
    return MFMorphism::make(std::move(source), std::move(target), std::move(h1), std::move(h0));
}

MFMorphism tensor_power(const MFMorphism& f, unsigned n) {
    if (n == 0)
        throw PreconditionError("tensor power needs n >= 1");
    MFMorphism acc = f;
    for (unsigned k = 1; k < n; ++k)
        acc = tensor_morphism(acc, f);
    return acc;
}

MFComplex MFComplex::make(std::vector<MatrixFactorization> entries, std::vector<MFMorphism> diffs,
                          int top_degree) {
    if (entries.empty())
        throw PreconditionError("complex needs at least one entry");
    if (diffs.size() + 1 != entries.size())
        throw PreconditionError("complex needs exactly one differential between consecutive entries");
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (!(diffs[k].source() == entries[k + 1]) || !(diffs[k].target() == entries[k]))
            throw PreconditionError("differential endpoints do not match the entries");
    }
    const LGModel& model = *entries[0].model();
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
        MFMorphism dd = compose(diffs[k], diffs[k + 1]);
        if (!model.reduce(dd.f1()).is_zero() || !model.reduce(dd.f0()).is_zero())
            throw ValidationError("consecutive differentials do not compose to zero mod I");
    }
    return MFComplex(std::move(entries), std::move(diffs), top_degree);
}

namespace {

// Parity of the component of entry with degree `deg` landing in T_l.
int component_parity(int deg, int l) {
    int j = ((-l - deg) % 2 + 2) % 2;
    return j;
}

Rational sign_of_degree(int deg) { return (((deg % 2) + 2) % 2 == 0) ? Rational(1) : Rational(-1); }

} // namespace

MatrixFactorization totalize(const MFComplex& complex) {
    const auto& entries = complex.entries();
    const ModelPtr& model = entries[0].model();
    const VarsPtr& vars = model->vars();
    std::size_t n = entries.size();

    auto comp_rank = [&](std::size_t k, int parity) {
        return parity == 1 ? entries[k].n1() : entries[k].n0();
    };
    auto block_sizes = [&](int l) {
        std::vector<std::size_t> sizes(n);
        for (std::size_t k = 0; k < n; ++k)
            sizes[k] = comp_rank(k, component_parity(complex.degree_of(k), l));
        return sizes;
    };
    std::vector<std::size_t> t1 = block_sizes(1), t0 = block_sizes(0);

    auto assemble = [&](int l, const std::vector<std::size_t>& src,
                        const std::vector<std::size_t>& dst) {
        std::size_t rows = 0, cols = 0;
        std::vector<std::size_t> row_off(n), col_off(n);
        for (std::size_t k = 0; k < n; ++k) {
            row_off[k] = rows;
            rows += dst[k];
            col_off[k] = cols;
            cols += src[k];
        }
        PolyMatrix t(vars, rows, cols);
        auto paste = [&](std::size_t rk, std::size_t ck, const PolyMatrix& block) {
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    t.at(row_off[rk] + i, col_off[ck] + j) = block.at(i, j);
        };
        for (std::size_t k = 0; k < n; ++k) {
            int deg = complex.degree_of(k);
            int j = component_parity(deg, l);
            // Internal differential of entry k, signed by its degree.
            const PolyMatrix& phi = (j == 1) ? entries[k].phi1() : entries[k].phi0();
            paste(k, k, phi.scaled(sign_of_degree(deg)));
            // The complex differential out of entry k raises degree by 1; with
            // entries stored in descending degree that is block row k-1.
            if (k > 0) {
                const MFMorphism& d = complex.differentials()[k - 1];
                const PolyMatrix& fj = (j == 1) ? d.f1() : d.f0();
                paste(k - 1, k, fj);
            }
        }
        return t;
    };

    PolyMatrix big_t1 = assemble(1, t1, t0);
    PolyMatrix big_t0 = assemble(0, t0, t1);
    return MatrixFactorization::make(model, entries[0].potential(), std::move(big_t1),
                                     std::move(big_t0));
}

MatrixFactorization cone(const MFMorphism& f) {
    MFComplex two = MFComplex::make({f.target(), f.source()}, {f}, 0);
    return totalize(two);
}

} // namespace mflocus
