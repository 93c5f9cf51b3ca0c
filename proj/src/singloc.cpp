#include "mflocus/singloc.hpp"

#include <algorithm>

namespace mflocus {

namespace {

// Generators of P^2 + I in the ambient ring, with the index of the first
// I-generator marked so certificates can be split into pair and relation parts.
struct SquarePlusI {
    Ideal ideal;
    std::vector<std::pair<std::size_t, std::size_t>> pair_index; // (i,j) of p_i*p_j
};

SquarePlusI square_plus_relations(const LGModel& model, const PrimeLocus& p) {
    const VarsPtr& vars = model.vars();
    const auto& pgens = p.ideal().gens;
    SquarePlusI out;
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < pgens.size(); ++i)
        for (std::size_t j = i; j < pgens.size(); ++j) {
            gens.push_back(pgens[i] * pgens[j]);
            out.pair_index.emplace_back(i, j);
        }
    for (const auto& g : model.relations().gens)
        if (!g.is_zero())
            gens.push_back(g);
    out.ideal = Ideal::make(vars, std::move(gens));
    return out;
}

void require_on_zero_scheme(const LGModel& model, const PrimeLocus& p) {
    if (!p.contains(model.potential()))
        throw PreconditionError("locus does not contain the potential (not a point of X_0)");
}

} // namespace

bool in_singloc(const ModelPtr& model, const PrimeLocus& p) {
    require_same_model(model, p.model(), "in_singloc");
    require_on_zero_scheme(*model, p);
    if (model->potential().is_zero())
        return true; // W = 0 lies in every m_p^2
    SquarePlusI q = square_plus_relations(*model, p);
    Ideal quot = ideal_quotient(q.ideal, model->potential(), model->options());
    for (const auto& g : quot.gens)
        if (!nf(g, p.gb()).is_zero())
            return true;
    return false;
}

bool critical_point_check(const ModelPtr& model, const std::vector<Rational>& point) {
    if (!model->smooth_ambient())
        throw PreconditionError("critical-point check needs a smooth ambient space (no relations)");
    const Polynomial& w = model->potential();
    if (w.evaluate(point) != 0)
        return false;
    for (std::size_t i = 0; i < model->vars()->size(); ++i)
        if (w.derivative(i).evaluate(point) != 0)
            return false;
    return true;
}

namespace {

PolyMatrix jacobian(const VarsPtr& vars, const std::vector<Polynomial>& gens) {
    std::vector<const Polynomial*> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero())
            nonzero.push_back(&g);
    PolyMatrix jac(vars, nonzero.size(), vars->size());
    for (std::size_t i = 0; i < nonzero.size(); ++i)
        for (std::size_t j = 0; j < vars->size(); ++j)
            jac.at(i, j) = nonzero[i]->derivative(j);
    return jac;
}

std::vector<Polynomial> x0_generators(const LGModel& model) {
    std::vector<Polynomial> gens;
    for (const auto& g : model.relations().gens)
        if (!g.is_zero())
            gens.push_back(g);
    gens.push_back(model.potential());
    return gens;
}

} // namespace

JacobianNumbers jacobian_numbers(const ModelPtr& model, const std::vector<Rational>& point) {
    PrimeLocus p = PrimeLocus::rational_point(model, point);
    const VarsPtr& vars = model->vars();
    std::size_t n = vars->size();
    JacobianNumbers out;

    auto dim_of = [&](const std::vector<Polynomial>& gens) {
        auto d = ideal_dimension(Ideal::make(vars, gens), model->options());
        if (!d)
            throw PreconditionError("variety is empty");
        return *d;
    };

    std::vector<Polynomial> igens;
    for (const auto& g : model->relations().gens)
        if (!g.is_zero())
            igens.push_back(g);
    out.emb_dim_x = n - rank_at(jacobian(vars, igens), p);
    out.dim_x = dim_of(igens.empty() ? std::vector<Polynomial>{Polynomial::zero(vars)} : igens);

    out.on_x0 = model->potential().evaluate(point) == 0;
    if (out.on_x0) {
        std::vector<Polynomial> jgens = x0_generators(*model);
        out.emb_dim_x0 = n - rank_at(jacobian(vars, jgens), p);
        out.dim_x0 = dim_of(jgens);
        long codim_x0 = static_cast<long>(out.emb_dim_x0) - static_cast<long>(out.dim_x0);
        long codim_x = static_cast<long>(out.emb_dim_x) - static_cast<long>(out.dim_x);
        out.codim_excess = codim_x0 > codim_x;
    }
    return out;
}

bool jacobian_singular_x0(const ModelPtr& model, const PrimeLocus& p) {
    require_same_model(model, p.model(), "jacobian_singular_x0");
    require_on_zero_scheme(*model, p);
    const VarsPtr& vars = model->vars();
    std::vector<Polynomial> jgens = x0_generators(*model);
    auto dim = ideal_dimension(Ideal::make(vars, jgens), model->options());
    if (!dim)
        throw PreconditionError("X_0 is empty");
    std::size_t rank = rank_at(jacobian(vars, jgens), p);
    return rank < vars->size() - *dim;
}

bool WitnessDecomposition::verify(const LGModel& model, const PrimeLocus& p) const {
    if (p.contains(r))
        return false;
    Polynomial acc = r * model.potential();
    for (const auto& [m, n] : pairs) {
        if (!p.contains(m) || !p.contains(n))
            return false;
        acc = acc - m * n;
    }
    if (!model.reduce(acc).is_zero())
        return false;
    if (a) {
        Polynomial one = Polynomial::constant(model.vars(), Rational(1));
        if (!p.contains(one - *a * r))
            return false;
    }
    return true;
}

WitnessDecomposition witness_decomposition(const ModelPtr& model, const PrimeLocus& p) {
    require_same_model(model, p.model(), "witness decomposition");
    require_on_zero_scheme(*model, p);
    const VarsPtr& vars = model->vars();
    const Polynomial& w = model->potential();

    SquarePlusI q = square_plus_relations(*model, p);

    // Pick s: the first quotient generator that stays nonzero mod p. For the
    // degenerate case W in P^2 + I the quotient contains 1 and s = 1 works.
    Polynomial s = Polynomial::zero(vars);
    if (w.is_zero()) {
        s = Polynomial::constant(vars, Rational(1));
    } else {
        Ideal quot = ideal_quotient(q.ideal, w, model->options());
        for (const auto& g : quot.gens)
            if (!nf(g, p.gb()).is_zero()) {
                s = g;
                break;
            }
        if (s.is_zero())
            throw PreconditionError("locus is not in the relative singular locus");
    }

    WitnessDecomposition out;
    out.r = model->reduce(s);
    if (out.r.is_zero() || p.contains(out.r))
        throw Error("internal: witness multiplier degenerated under reduction");

    // Certificate-tracked reduction of s*W against GB(P^2 + I): the remainder
    // is zero, and folding cofactors through the certificates rewrites s*W
    // over the original generators {p_i p_j} and I; the I-part vanishes in R.
    GroebnerBasis gbq = groebner(q.ideal, MonomialOrder::degrevlex(), model->options());
    NormalFormResult div = normal_form(s * w, gbq);
    if (!div.remainder.is_zero())
        throw Error("internal: s*W failed to reduce to zero against P^2 + I");
    std::vector<Polynomial> cert = combination_over_generators(gbq, div.cofactors);
    const auto& pgens = p.ideal().gens;
    for (std::size_t k = 0; k < q.pair_index.size(); ++k) {
        if (cert[k].is_zero())
            continue;
        auto [i, j] = q.pair_index[k];
        Polynomial m = model->reduce(cert[k] * pgens[i]);
        Polynomial n = model->reduce(pgens[j]);
        if (m.is_zero() || n.is_zero())
            continue;
        out.pairs.emplace_back(std::move(m), std::move(n));
    }

    if (p.kind() == PrimeLocus::Kind::rational_point) {
        Rational rv = out.r.evaluate(p.coords());
        out.a = Polynomial::constant(vars, Rational(1) / rv);
    }

    if (!out.verify(*model, p))
        throw Error("internal: witness decomposition failed its own verification");
    return out;
}

MatrixFactorization build_nonvanishing_mf(const ModelPtr& model,
                                          const std::vector<Rational>& point) {
    PrimeLocus p = PrimeLocus::rational_point(model, point);
    WitnessDecomposition wd = witness_decomposition(model, p);
    const VarsPtr& vars = model->vars();
    Polynomial one = Polynomial::constant(vars, Rational(1));
    MatrixFactorization acc = koszul(model, model->potential(), one - *wd.a * wd.r);
    for (const auto& [m, n] : wd.pairs)
        acc = tensor(acc, koszul(model, *wd.a * m, n));
    if (!(acc.potential() == model->potential()))
        throw Error("internal: nonvanishing object has the wrong potential");
    return acc;
}

MatrixFactorization realize_support(const ModelPtr& model,
                                    const std::vector<SupportComponent>& components) {
    if (components.empty())
        throw PreconditionError("support realization needs at least one component");
    std::optional<MatrixFactorization> acc;
    for (const auto& comp : components) {
        if (comp.cut_out.empty())
            throw PreconditionError("component needs a nonempty section list");
        for (const auto& f : comp.cut_out)
            if (f.evaluate(comp.base_point) != 0)
                throw PreconditionError("base point is not on the component");
        MatrixFactorization k = build_nonvanishing_mf(model, comp.base_point);
        MatrixFactorization piece = tensor(support_block(model, comp.cut_out), k);
        acc = acc ? direct_sum(*acc, piece) : piece;
    }
    return *acc;
}

std::vector<SingLocReport> sample_singloc(const ModelPtr& model,
                                          const std::vector<PrimeLocus>& loci, bool with_witness) {
    std::vector<SingLocReport> out;
    out.reserve(loci.size());
    for (const auto& locus : loci) {
        SingLocReport rep{locus};
        rep.in_singloc = in_singloc(model, locus);
        rep.in_sing_x0 = jacobian_singular_x0(model, locus);
        if (model->smooth_ambient() && locus.kind() == PrimeLocus::Kind::rational_point)
            rep.in_crit = critical_point_check(model, locus.coords());
        if (with_witness && rep.in_singloc)
            rep.witness = witness_decomposition(model, locus);
        if (rep.in_singloc && !rep.in_sing_x0)
            throw Error("internal: Sing^loc point escaped Sing(X_0)");
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace mflocus
