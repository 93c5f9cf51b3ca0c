#include "mflocus/tensorgeom.hpp"

#include <random>
#include <sstream>

namespace mflocus {

namespace {

Polynomial random_section(std::mt19937_64& rng, const VarsPtr& vars) {
    // Small affine-linear sections keep zero loci meaningful on the grids.
    std::size_t n = vars->size();
    std::size_t var = rng() % n;
    int c = static_cast<int>(rng() % 5) - 2;
    Polynomial p = Polynomial::variable(vars, var);
    if (c != 0 && (rng() & 1u))
        p = p - Polynomial::constant(vars, Rational(c));
    return p;
}

struct Sampler {
    const std::vector<MatrixFactorization>& gens;
    std::mt19937_64 rng;
    std::size_t max_total_rank;

    SampledExpression leaf() {
        std::size_t i = rng() % gens.size();
        return SampledExpression{gens[i], "G" + std::to_string(i)};
    }

    SampledExpression build(unsigned depth) {
        if (depth == 0)
            return leaf();
        SampledExpression child = build(depth - 1);
        std::size_t child_rank = child.value.n1() + child.value.n0();
        switch (rng() % 5) {
            case 0:
                return SampledExpression{shift(child.value), "T(" + child.tree + ")"};
            case 1: {
                SampledExpression other = build(depth - 1);
                if (child_rank + other.value.n1() + other.value.n0() > max_total_rank)
                    return child;
                return SampledExpression{direct_sum(child.value, other.value),
                                         "sum(" + child.tree + ", " + other.tree + ")"};
            }
            case 2: {
                SampledExpression other = build(depth - 1);
                if (child_rank + other.value.n1() + other.value.n0() > max_total_rank)
                    return child;
                return SampledExpression{cone(MFMorphism::zero(other.value, child.value)),
                                         "cone0(" + other.tree + ", " + child.tree + ")"};
            }
            case 3: {
                if (2 * child_rank > max_total_rank)
                    return SampledExpression{shift(child.value), "T(" + child.tree + ")"};
                const ModelPtr& model = child.value.model();
                Polynomial f = random_section(rng, model->vars());
                MatrixFactorization k =
                    koszul(model, f, Polynomial::zero(model->vars()));
                return SampledExpression{tensor(k, child.value),
                                         "kos(" + f.to_string() + ")*(" + child.tree + ")"};
            }
            case 4: {
                SampledExpression other = build(depth - 1);
                if (2 * child_rank * (other.value.n1() + other.value.n0()) > max_total_rank)
                    return child;
                return SampledExpression{half_tensor(other.value, child.value),
                                         "half(" + other.tree + ", " + child.tree + ")"};
            }
        }
        return child;
    }
};

} // namespace

SampledExpression sample_submodule_expression(const std::vector<MatrixFactorization>& generators,
                                              std::uint64_t seed, unsigned depth,
                                              std::size_t max_total_rank) {
    if (generators.empty())
        throw PreconditionError("expression sampling needs at least one generator");
    for (const auto& g : generators) {
        require_same_model(generators[0].model(), g.model(), "expression generators");
        if (!(g.potential() == generators[0].potential()))
            throw PreconditionError("expression generators must share one potential");
    }
    Sampler s{generators, std::mt19937_64(seed), max_total_rank};
    return s.build(depth);
}

ContainmentReport check_support_containment(const std::vector<SampledExpression>& expressions,
                                            const std::vector<MatrixFactorization>& reference,
                                            const std::vector<PrimeLocus>& points) {
    ContainmentReport report;
    report.expressions_checked = expressions.size();
    report.points_checked = points.size();
    for (const auto& expr : expressions) {
        for (const auto& p : points) {
            if (!in_support(expr.value, p))
                continue;
            bool covered = false;
            for (const auto& g : reference)
                if (in_support(g, p)) {
                    covered = true;
                    break;
                }
            if (!covered)
                report.violations.push_back(ContainmentViolation{expr.tree, p.to_string()});
        }
    }
    return report;
}

bool AxiomReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

namespace {

void record_failure(AxiomCheck& check, const std::string& witness) {
    if (check.pass) {
        check.pass = false;
        check.witness = witness;
    }
}

} // namespace

AxiomReport check_support_data_axioms(const ModelPtr& model,
                                      const std::vector<MatrixFactorization>& objects,
                                      const std::vector<PrimeLocus>& loci, std::uint64_t seed) {
    for (const auto& o : objects) {
        require_same_model(model, o.model(), "axiom objects");
        if (!(o.potential() == model->potential()))
            throw PreconditionError("axiom objects must carry the model potential");
    }
    for (const auto& p : loci)
        if (!p.contains(model->potential()))
            throw PreconditionError("axiom loci must lie on V(W)");

    AxiomCheck a1{"1"}, a2{"2"}, a3{"3"}, a4{"4"}, a5{"5"};

    // (1) sigma(0) is empty, and every sampled relative-singular point is
    // covered by some object of the category.
    MatrixFactorization zero = MatrixFactorization::zero(model, model->potential());
    for (const auto& p : loci) {
        if (in_support(zero, p))
            record_failure(a1, "zero object supported at " + p.to_string());
        if (p.kind() != PrimeLocus::Kind::rational_point)
            continue;
        if (!in_singloc(model, p))
            continue;
        bool covered = false;
        for (const auto& o : objects)
            if (in_support(o, p)) {
                covered = true;
                break;
            }
        if (!covered)
            covered = in_support(build_nonvanishing_mf(model, p.coords()), p);
        if (!covered)
            record_failure(a1, "no object supported at " + p.to_string());
    }

    auto supp = [&](const MatrixFactorization& f, const PrimeLocus& p) { return in_support(f, p); };

    for (std::size_t i = 0; i < objects.size(); ++i) {
        const MatrixFactorization& A = objects[i];
        // (3) shift invariance
        MatrixFactorization shifted = shift(A);
        for (const auto& p : loci)
            if (supp(shifted, p) != supp(A, p))
                record_failure(a3, "object " + std::to_string(i) + " at " + p.to_string());
        for (std::size_t j = 0; j < objects.size(); ++j) {
            const MatrixFactorization& B = objects[j];
            // (2) direct sums
            MatrixFactorization sum = direct_sum(A, B);
            for (const auto& p : loci)
                if (supp(sum, p) != (supp(A, p) || supp(B, p)))
                    record_failure(a2, "objects " + std::to_string(i) + "," + std::to_string(j) +
                                           " at " + p.to_string());
            // (5) half-twisted tensor products
            MatrixFactorization prod = half_tensor(A, B);
            for (const auto& p : loci)
                if (supp(prod, p) != (supp(A, p) && supp(B, p)))
                    record_failure(a5, "objects " + std::to_string(i) + "," + std::to_string(j) +
                                           " at " + p.to_string());
            // (4) triangles through sampled morphisms (zero when no ansatz
            // solution exists); all three rotations of E -> F -> cone.
            MFMorphism f = sample_morphism(A, B, 1, seed + i * 97 + j);
            MatrixFactorization c = cone(f);
            for (const auto& p : loci) {
                bool sa = supp(A, p), sb = supp(B, p), sc = supp(c, p);
                if ((sa && !(sb || sc)) || (sb && !(sc || sa)) || (sc && !(sa || sb)))
                    record_failure(a4, "triangle " + std::to_string(i) + "->" + std::to_string(j) +
                                           " at " + p.to_string());
            }
        }
    }

    AxiomReport report;
    report.checks = {a1, a2, a3, a4, a5};
    return report;
}

AxiomReport check_scale_invariance(const std::vector<MatrixFactorization>& objects,
                                   const std::vector<PrimeLocus>& loci,
                                   const std::vector<Rational>& lambdas) {
    AxiomCheck check{"scale-invariance"};
    for (std::size_t i = 0; i < objects.size(); ++i)
        for (const auto& lam : lambdas) {
            MatrixFactorization twisted = scale(lam, objects[i]);
            for (const auto& p : loci)
                if (in_support(twisted, p) != in_support(objects[i], p))
                    record_failure(check, "object " + std::to_string(i) + ", lambda " +
                                              to_string(lam) + ", at " + p.to_string());
        }
    AxiomReport report;
    report.checks = {check};
    return report;
}

NilpotenceResult nilpotence_search(const MFMorphism& f, unsigned max_n, unsigned degree_bound,
                                   const std::vector<PrimeLocus>& probes,
                                   std::size_t max_total_rank) {
    for (const auto& p : probes) {
        HomotopyDecision d = is_nullhomotopic(f, FiberAt{p});
        if (d.verdict != Verdict::yes)
            throw PreconditionError("fiber of the morphism does not vanish at probe " +
                                    p.to_string());
    }
    for (unsigned n = 1; n <= max_n; ++n) {
        MFMorphism power = tensor_power(f, n);
        if (power.source().n1() + power.source().n0() > max_total_rank)
            return NilpotenceResult{std::nullopt};
        RingLevel level;
        level.degree_bound = degree_bound;
        if (is_nullhomotopic(power, level).verdict == Verdict::yes)
            return NilpotenceResult{n};
    }
    return NilpotenceResult{std::nullopt};
}

GeneratorProbeReport generator_probe(const ModelPtr& model, const MatrixFactorization& g,
                                     const std::vector<PrimeLocus>& probes) {
    GeneratorProbeReport report;
    for (const auto& p : probes) {
        GeneratorProbeRow row;
        row.locus = p.to_string();
        row.in_singloc = p.contains(model->potential()) && in_singloc(model, p);
        row.in_support = in_support(g, p);
        if (row.in_singloc && !row.in_support)
            report.flagged.push_back(row.locus);
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Morphism ansatz

namespace {

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    Monomial current = Monomial::one(nvars);
    auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
        if (var == nvars) {
            out.push_back(current);
            return;
        }
        for (unsigned e = 0; e <= remaining; ++e) {
            current.e[var] = e;
            self(self, var + 1, remaining - e);
        }
        current.e[var] = 0;
    };
    rec(rec, 0, d);
    return out;
}

} // namespace

MFMorphism sample_morphism(const MatrixFactorization& e, const MatrixFactorization& f,
                           unsigned degree_bound, std::uint64_t seed) {
    require_same_model(e.model(), f.model(), "morphism ansatz");
    if (!(e.potential() == f.potential()))
        throw PreconditionError("morphism ansatz requires matching potentials");
    const LGModel& model = *e.model();
    const VarsPtr& vars = model.vars();

    std::vector<Monomial> basis = monomials_up_to(vars->size(), degree_bound);
    std::size_t e1 = e.n1(), e0 = e.n0(), f1 = f.n1(), f0 = f.n0();
    std::size_t n_entries = f1 * e1 + f0 * e0;
    std::size_t n_unknowns = n_entries * basis.size();
    if (n_unknowns == 0)
        return MFMorphism::zero(e, f);

    auto f1_index = [&](std::size_t r, std::size_t c, std::size_t b) {
        return (r * e1 + c) * basis.size() + b;
    };
    auto f0_index = [&](std::size_t r, std::size_t c, std::size_t b) {
        return (f1 * e1 + r * e0 + c) * basis.size() + b;
    };

    // Commutation constraints, one polynomial cell each:
    //   (f0 phi1^E - phi1^F f1)[i][j] = 0   (i < f0, j < e1)
    //   (f1 phi0^E - phi0^F f0)[i][j] = 0   (i < f1, j < e0)
    struct Contribution {
        std::size_t unknown;
        Polynomial coeff;
    };
    std::size_t n_cells = f0 * e1 + f1 * e0;
    std::vector<std::vector<Contribution>> cells(n_cells);
    std::size_t cell = 0;
    for (std::size_t i = 0; i < f0; ++i)
        for (std::size_t j = 0; j < e1; ++j, ++cell) {
            for (std::size_t k = 0; k < e0; ++k) {
                const Polynomial& c0 = e.phi1().at(k, j);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back(
                        {f0_index(i, k, b), model.reduce(c0.times_term(basis[b], Rational(1)))});
            }
            for (std::size_t k = 0; k < f1; ++k) {
                const Polynomial& c0 = f.phi1().at(i, k);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back(
                        {f1_index(k, j, b), model.reduce(-c0.times_term(basis[b], Rational(1)))});
            }
        }
    for (std::size_t i = 0; i < f1; ++i)
        for (std::size_t j = 0; j < e0; ++j, ++cell) {
            for (std::size_t k = 0; k < e1; ++k) {
                const Polynomial& c0 = e.phi0().at(k, j);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back(
                        {f1_index(i, k, b), model.reduce(c0.times_term(basis[b], Rational(1)))});
            }
            for (std::size_t k = 0; k < f0; ++k) {
                const Polynomial& c0 = f.phi0().at(i, k);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back(
                        {f0_index(k, j, b), model.reduce(-c0.times_term(basis[b], Rational(1)))});
            }
        }

    struct RowKey {
        std::size_t cell;
        Monomial mono;
    };
    std::vector<RowKey> rows;
    auto row_of = [&](std::size_t c, const Monomial& m) -> std::size_t {
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].cell == c && rows[r].mono == m)
                return r;
        rows.push_back(RowKey{c, m});
        return rows.size() - 1;
    };
    for (std::size_t c = 0; c < n_cells; ++c)
        for (const auto& contrib : cells[c])
            for (const auto& [m, q] : contrib.coeff.terms())
                row_of(c, m);
    QMatrix A(rows.size(), n_unknowns);
    for (std::size_t c = 0; c < n_cells; ++c)
        for (const auto& contrib : cells[c])
            for (const auto& [m, q] : contrib.coeff.terms())
                A.at(row_of(c, m), contrib.unknown) += q;

    auto kernel = nullspace(A);
    if (kernel.empty())
        return MFMorphism::zero(e, f);

    std::mt19937_64 rng(seed);
    std::vector<Rational> combo(n_unknowns, Rational(0));
    bool nonzero = false;
    for (const auto& v : kernel) {
        int c = static_cast<int>(rng() % 5) - 2;
        if (c == 0)
            continue;
        nonzero = true;
        for (std::size_t u = 0; u < n_unknowns; ++u)
            combo[u] += Rational(c) * v[u];
    }
    if (!nonzero)
        combo = kernel[rng() % kernel.size()];

    PolyMatrix m1(vars, f1, e1), m0(vars, f0, e0);
    for (std::size_t r = 0; r < f1; ++r)
        for (std::size_t c = 0; c < e1; ++c) {
            std::vector<Polynomial::Term> terms;
            for (std::size_t b = 0; b < basis.size(); ++b)
                terms.emplace_back(basis[b], combo[f1_index(r, c, b)]);
            m1.at(r, c) = Polynomial::from_terms(vars, std::move(terms));
        }
    for (std::size_t r = 0; r < f0; ++r)
        for (std::size_t c = 0; c < e0; ++c) {
            std::vector<Polynomial::Term> terms;
            for (std::size_t b = 0; b < basis.size(); ++b)
                terms.emplace_back(basis[b], combo[f0_index(r, c, b)]);
            m0.at(r, c) = Polynomial::from_terms(vars, std::move(terms));
        }
    return MFMorphism::make(e, f, std::move(m1), std::move(m0));
}

} // namespace mflocus
