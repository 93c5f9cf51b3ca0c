#include "mflocus/localize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mflocus {

PrimeLocus PrimeLocus::rational_point(ModelPtr model, std::vector<Rational> coords) {
    if (coords.size() != model->vars()->size())
        throw PreconditionError("point length does not match the variable count");
    for (const auto& g : model->relations().gens)
        if (g.evaluate(coords) != 0)
            throw PreconditionError("rational point does not satisfy the model relations");
    const VarsPtr& vars = model->vars();
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < coords.size(); ++i)
        gens.push_back(Polynomial::variable(vars, i) -
                       Polynomial::constant(vars, coords[i]));
    Ideal ideal = Ideal::make(vars, std::move(gens));
    GroebnerBasis gb = groebner(ideal, MonomialOrder::degrevlex(), model->options());
    return PrimeLocus(Kind::rational_point, std::move(model), std::move(coords), std::move(ideal),
                      std::move(gb));
}

PrimeLocus PrimeLocus::prime_ideal(ModelPtr model, Ideal generators) {
    require_same_vars(model->vars(), generators.vars, "prime locus");
    GroebnerBasis gb = groebner(generators, MonomialOrder::degrevlex(), model->options());
    for (const auto& g : model->relations().gens)
        if (!nf(g, gb).is_zero())
            throw PreconditionError("prime ideal does not contain the model relations");
    return PrimeLocus(Kind::prime_ideal, std::move(model), {}, std::move(generators), std::move(gb));
}

bool PrimeLocus::contains(const Polynomial& f) const {
    if (kind_ == Kind::rational_point)
        return f.evaluate(coords_) == 0;
    return nf(f, gb_).is_zero();
}

std::string PrimeLocus::to_string() const {
    std::ostringstream out;
    if (kind_ == Kind::rational_point) {
        out << "(";
        for (std::size_t i = 0; i < coords_.size(); ++i)
            out << (i ? ", " : "") << mflocus::to_string(coords_[i]);
        out << ")";
    } else {
        out << "<";
        for (std::size_t i = 0; i < ideal_.gens.size(); ++i)
            out << (i ? ", " : "") << ideal_.gens[i].to_string();
        out << ">";
    }
    return out.str();
}

namespace {

QMatrix evaluate_matrix(const PolyMatrix& m, const std::vector<Rational>& point) {
    QMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            q.at(i, j) = m.at(i, j).evaluate(point);
    return q;
}

// Fraction-free row elimination over the domain R/p; row scalings by nonzero
// domain elements do not change the rank over the fraction field k(p).
std::size_t rank_mod_prime(const PolyMatrix& m, const GroebnerBasis& gbp) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Polynomial> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i * cols + j] = nf(m.at(i, j), gbp);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + col].is_zero())
            ++pivot;
        if (pivot == rows)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(a[rank * cols + j], a[pivot * cols + j]);
        const Polynomial p = a[rank * cols + col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            Polynomial f = a[i * cols + col];
            if (f.is_zero())
                continue;
            for (std::size_t j = col; j < cols; ++j)
                a[i * cols + j] = nf(p * a[i * cols + j] - f * a[rank * cols + j], gbp);
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t rank_at(const PolyMatrix& m, const PrimeLocus& p) {
    if (p.kind() == PrimeLocus::Kind::rational_point)
        return evaluate_matrix(m, p.coords()).rank();
    return rank_mod_prime(m, p.gb());
}

namespace {

bool fiber_potential_vanishes(const MatrixFactorization& f, const PrimeLocus& p) {
    return p.contains(f.potential());
}

} // namespace

FiberCohomology fiber_cohomology(const MatrixFactorization& f, const PrimeLocus& p) {
    require_same_model(f.model(), p.model(), "fiber cohomology");
    if (!fiber_potential_vanishes(f, p))
        throw PreconditionError("fiber potential is nonzero at the locus");
    std::size_t r1 = rank_at(f.phi1(), p);
    std::size_t r0 = rank_at(f.phi0(), p);
    FiberCohomology h;
    h.h0 = f.n0() - r0 - r1;
    h.h1 = f.n1() - r1 - r0;
    return h;
}

bool in_support(const MatrixFactorization& f, const PrimeLocus& p) {
    require_same_model(f.model(), p.model(), "support test");
    if (!fiber_potential_vanishes(f, p))
        return false;
    return fiber_cohomology(f, p).total() > 0;
}

// ---------------------------------------------------------------------------
// Trimming

namespace {

struct LocalOps {
    const LGModel& model;
    const PrimeLocus& locus;

    Polynomial red(const Polynomial& p) const { return model.reduce(p); }

    bool unit_at(const LocalElem& e) const { return !locus.contains(e.num); }

    LocalElem make(Polynomial num, Polynomial den) const {
        return LocalElem{red(num), red(den)};
    }

    LocalElem from_poly(const Polynomial& p) const {
        return make(p, Polynomial::constant(p.vars(), Rational(1)));
    }

    // a - b*c/u, assembled over the common denominator a.den*b.den*c.den*u.num.
    LocalElem sub_mul_div(const LocalElem& a, const LocalElem& b, const LocalElem& c,
                          const LocalElem& u) const {
        Polynomial num = a.num * b.den * c.den * u.num - b.num * c.num * u.den * a.den;
        Polynomial den = a.den * b.den * c.den * u.num;
        return make(std::move(num), std::move(den));
    }
};

} // namespace

bool LocalElem::vanishes_at_locus(const PrimeLocus& p) const { return p.contains(num); }

bool LocalMF::entries_vanish_at_locus() const {
    for (const auto& e : phi1_)
        if (!e.vanishes_at_locus(locus_))
            return false;
    for (const auto& e : phi0_)
        if (!e.vanishes_at_locus(locus_))
            return false;
    return true;
}

namespace {

struct TrimState {
    std::size_t n1, n0;
    std::vector<LocalElem> a; // phi1: n0 x n1
    std::vector<LocalElem> b; // phi0: n1 x n0

    LocalElem& A(std::size_t r, std::size_t c) { return a[r * n1 + c]; }
    LocalElem& B(std::size_t r, std::size_t c) { return b[r * n0 + c]; }
};

// Pivot on the unit A[r][c]: clear its row and column, fold the inverse
// operations into B, then delete row r / column c of A and row c / column r
// of B, splitting off the contractible summand (R -u-> R -u^{-1}V-> R).
void pivot_first_matrix(TrimState& s, std::size_t r, std::size_t c, const LocalOps& ops) {
    std::size_t n1 = s.n1, n0 = s.n0;
    std::vector<LocalElem> a2((n0 - 1) * (n1 - 1));
    std::vector<LocalElem> b2((n1 - 1) * (n0 - 1));
    const LocalElem u = s.A(r, c);

    // Schur complement of A at the pivot.
    for (std::size_t i = 0, i2 = 0; i < n0; ++i) {
        if (i == r)
            continue;
        for (std::size_t j = 0, j2 = 0; j < n1; ++j) {
            if (j == c)
                continue;
            a2[i2 * (n1 - 1) + j2] = ops.sub_mul_div(s.A(i, j), s.A(i, c), s.A(r, j), u);
            ++j2;
        }
        ++i2;
    }
    // Inverse column/row operations on B: row c absorbs A[r][*]/u times the
    // other rows, column r absorbs A[*][c]/u times the other columns. Rows and
    // columns other than (c, r) of B are unchanged by those two updates, and
    // the deleted row c / column r are forced to u^{-1}V by the factorization
    // relations, so only the surviving block is assembled.
    for (std::size_t i = 0, i2 = 0; i < n1; ++i) {
        if (i == c)
            continue;
        for (std::size_t j = 0, j2 = 0; j < n0; ++j) {
            if (j == r)
                continue;
            b2[i2 * (n0 - 1) + j2] = s.B(i, j);
            ++j2;
        }
        ++i2;
    }
    s.n1 = n1 - 1;
    s.n0 = n0 - 1;
    s.a = std::move(a2);
    s.b = std::move(b2);
}

std::optional<std::pair<std::size_t, std::size_t>> find_unit(const std::vector<LocalElem>& m,
                                                             std::size_t rows, std::size_t cols,
                                                             const LocalOps& ops) {
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (ops.unit_at(m[i * cols + j]))
                return std::make_pair(i, j);
    return std::nullopt;
}

} // namespace

LocalMF trim_at_point(const MatrixFactorization& f, const PrimeLocus& p) {
    require_same_model(f.model(), p.model(), "trim");
    LocalOps ops{*f.model(), p};
    TrimState s;
    s.n1 = f.n1();
    s.n0 = f.n0();
    s.a.reserve(s.n0 * s.n1);
    s.b.reserve(s.n1 * s.n0);
    for (std::size_t i = 0; i < s.n0; ++i)
        for (std::size_t j = 0; j < s.n1; ++j)
            s.a.push_back(ops.from_poly(f.phi1().at(i, j)));
    for (std::size_t i = 0; i < s.n1; ++i)
        for (std::size_t j = 0; j < s.n0; ++j)
            s.b.push_back(ops.from_poly(f.phi0().at(i, j)));

    while (true) {
        if (auto hit = find_unit(s.a, s.n0, s.n1, ops)) {
            pivot_first_matrix(s, hit->first, hit->second, ops);
            continue;
        }
        if (auto hit = find_unit(s.b, s.n1, s.n0, ops)) {
            // Same elimination with the roles of phi1 and phi0 swapped.
            std::swap(s.a, s.b);
            std::swap(s.n1, s.n0);
            pivot_first_matrix(s, hit->first, hit->second, ops);
            std::swap(s.a, s.b);
            std::swap(s.n1, s.n0);
            continue;
        }
        break;
    }
    return LocalMF(p, s.n1, s.n0, std::move(s.a), std::move(s.b));
}

// ---------------------------------------------------------------------------
// Null-homotopy decisions

namespace {

struct HomotopyShapes {
    std::size_t h0_rows, h0_cols; // target.n1 x source.n0
    std::size_t h1_rows, h1_cols; // target.n0 x source.n1
    std::size_t unknowns() const { return h0_rows * h0_cols + h1_rows * h1_cols; }
};

HomotopyShapes shapes_of(const MFMorphism& f) {
    return HomotopyShapes{f.target().n1(), f.source().n0(), f.target().n0(), f.source().n1()};
}

// Homotopy equations with trivial twist:
//   f0 = phi1^T h0 + h1 phi0^S   and   f1 = phi0^T h1 + h0 phi1^S.
// Rows of the linear system are indexed by the entries of f0 then f1.

HomotopyDecision decide_fiber_rational(const MFMorphism& f, const PrimeLocus& p) {
    HomotopyShapes sh = shapes_of(f);
    QMatrix phi1t = evaluate_matrix(f.target().phi1(), p.coords());
    QMatrix phi0t = evaluate_matrix(f.target().phi0(), p.coords());
    QMatrix phi1s = evaluate_matrix(f.source().phi1(), p.coords());
    QMatrix phi0s = evaluate_matrix(f.source().phi0(), p.coords());
    QMatrix f0 = evaluate_matrix(f.f0(), p.coords());
    QMatrix f1 = evaluate_matrix(f.f1(), p.coords());

    std::size_t n_eq = f0.rows() * f0.cols() + f1.rows() * f1.cols();
    QMatrix A(n_eq, sh.unknowns());
    std::vector<Rational> rhs(n_eq, Rational(0));
    auto h0_index = [&](std::size_t r, std::size_t c) { return r * sh.h0_cols + c; };
    auto h1_index = [&](std::size_t r, std::size_t c) {
        return sh.h0_rows * sh.h0_cols + r * sh.h1_cols + c;
    };
    std::size_t eq = 0;
    for (std::size_t i = 0; i < f0.rows(); ++i)
        for (std::size_t j = 0; j < f0.cols(); ++j, ++eq) {
            for (std::size_t k = 0; k < sh.h0_rows; ++k)
                A.at(eq, h0_index(k, j)) += phi1t.at(i, k);
            for (std::size_t k = 0; k < sh.h1_cols; ++k)
                A.at(eq, h1_index(i, k)) += phi0s.at(k, j);
            rhs[eq] = f0.at(i, j);
        }
    for (std::size_t i = 0; i < f1.rows(); ++i)
        for (std::size_t j = 0; j < f1.cols(); ++j, ++eq) {
            for (std::size_t k = 0; k < sh.h1_rows; ++k)
                A.at(eq, h1_index(k, j)) += phi0t.at(i, k);
            for (std::size_t k = 0; k < sh.h0_cols; ++k)
                A.at(eq, h0_index(i, k)) += phi1s.at(k, j);
            rhs[eq] = f1.at(i, j);
        }
    auto sol = solve_linear(A, rhs);
    if (!sol)
        return HomotopyDecision{Verdict::no, std::nullopt};
    // Return the solution as constant matrices; the caller can re-substitute.
    const VarsPtr& vars = f.source().model()->vars();
    PolyMatrix h0(vars, sh.h0_rows, sh.h0_cols), h1(vars, sh.h1_rows, sh.h1_cols);
    for (std::size_t r = 0; r < sh.h0_rows; ++r)
        for (std::size_t c = 0; c < sh.h0_cols; ++c)
            h0.at(r, c) = Polynomial::constant(vars, (*sol)[h0_index(r, c)]);
    for (std::size_t r = 0; r < sh.h1_rows; ++r)
        for (std::size_t c = 0; c < sh.h1_cols; ++c)
            h1.at(r, c) = Polynomial::constant(vars, (*sol)[h1_index(r, c)]);
    return HomotopyDecision{Verdict::yes, HomotopyWitness{std::move(h0), std::move(h1)}};
}

HomotopyDecision decide_fiber_prime(const MFMorphism& f, const PrimeLocus& p) {
    // Solvability over k(p) is a rank comparison of the coefficient matrix
    // against its augmentation; both ranks are computed fraction-free in R/p.
    HomotopyShapes sh = shapes_of(f);
    const VarsPtr& vars = f.source().model()->vars();
    const GroebnerBasis& gbp = p.gb();
    auto red = [&](const Polynomial& q) { return nf(q, gbp); };

    std::size_t n_eq = f.f0().rows() * f.f0().cols() + f.f1().rows() * f.f1().cols();
    PolyMatrix A(vars, n_eq, sh.unknowns());
    PolyMatrix Ab(vars, n_eq, sh.unknowns() + 1);
    auto h0_index = [&](std::size_t r, std::size_t c) { return r * sh.h0_cols + c; };
    auto h1_index = [&](std::size_t r, std::size_t c) {
        return sh.h0_rows * sh.h0_cols + r * sh.h1_cols + c;
    };
    std::size_t eq = 0;
    auto add = [&](std::size_t row, std::size_t col, const Polynomial& v) {
        A.at(row, col) = red(A.at(row, col) + v);
    };
    for (std::size_t i = 0; i < f.f0().rows(); ++i)
        for (std::size_t j = 0; j < f.f0().cols(); ++j, ++eq) {
            for (std::size_t k = 0; k < sh.h0_rows; ++k)
                add(eq, h0_index(k, j), f.target().phi1().at(i, k));
            for (std::size_t k = 0; k < sh.h1_cols; ++k)
                add(eq, h1_index(i, k), f.source().phi0().at(k, j));
            Ab.at(eq, sh.unknowns()) = red(f.f0().at(i, j));
        }
    for (std::size_t i = 0; i < f.f1().rows(); ++i)
        for (std::size_t j = 0; j < f.f1().cols(); ++j, ++eq) {
            for (std::size_t k = 0; k < sh.h1_rows; ++k)
                add(eq, h1_index(k, j), f.target().phi0().at(i, k));
            for (std::size_t k = 0; k < sh.h0_cols; ++k)
                add(eq, h0_index(i, k), f.source().phi1().at(k, j));
            Ab.at(eq, sh.unknowns()) = red(f.f1().at(i, j));
        }
    for (std::size_t i = 0; i < n_eq; ++i)
        for (std::size_t j = 0; j < sh.unknowns(); ++j)
            Ab.at(i, j) = A.at(i, j);
    bool solvable = rank_mod_prime(A, gbp) == rank_mod_prime(Ab, gbp);
    return HomotopyDecision{solvable ? Verdict::yes : Verdict::no, std::nullopt};
}

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, unsigned d) {
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

HomotopyDecision is_nullhomotopic(const MFMorphism& f, const FiberAt& at) {
    require_same_model(f.source().model(), at.locus.model(), "fiber null-homotopy");
    if (at.locus.kind() == PrimeLocus::Kind::rational_point)
        return decide_fiber_rational(f, at.locus);
    return decide_fiber_prime(f, at.locus);
}

HomotopyDecision is_nullhomotopic(const MFMorphism& f, const RingLevel& level) {
    const LGModel& model = *f.source().model();
    const VarsPtr& vars = model.vars();
    // The zero morphism mod I is null with the zero homotopy.
    if (model.reduce(f.f0()).is_zero() && model.reduce(f.f1()).is_zero()) {
        HomotopyWitness w{PolyMatrix(vars, f.target().n1(), f.source().n0()),
                          PolyMatrix(vars, f.target().n0(), f.source().n1())};
        return HomotopyDecision{Verdict::yes, std::move(w)};
    }

    HomotopyShapes sh = shapes_of(f);
    std::vector<Monomial> basis = monomials_up_to_degree(vars->size(), level.degree_bound);
    std::size_t n_unknowns = sh.unknowns() * basis.size();
    if (n_unknowns == 0 || n_unknowns > level.max_unknowns)
        return HomotopyDecision{Verdict::unknown, std::nullopt};

    // Residual identities, one polynomial equation per matrix entry:
    //   f0[i][j] - sum_k phi1^T[i][k] h0[k][j] - sum_k h1[i][k] phi0^S[k][j] = 0
    //   f1[i][j] - sum_k phi0^T[i][k] h1[k][j] - sum_k h0[i][k] phi1^S[k][j] = 0
    // Expanding h entries over the monomial basis makes the system Q-linear;
    // rows are indexed by (equation cell, monomial of the reduced residual).
    struct Contribution {
        std::size_t unknown;
        Polynomial coeff;
    };
    std::size_t n_cells = f.f0().rows() * f.f0().cols() + f.f1().rows() * f.f1().cols();
    std::vector<std::vector<Contribution>> cells(n_cells);
    std::vector<Polynomial> rhs_cell(n_cells, Polynomial::zero(vars));

    auto unknown_index = [&](bool is_h1, std::size_t r, std::size_t c, std::size_t b) {
        std::size_t entry = is_h1 ? sh.h0_rows * sh.h0_cols + r * sh.h1_cols + c : r * sh.h0_cols + c;
        return entry * basis.size() + b;
    };
    std::size_t cell = 0;
    for (std::size_t i = 0; i < f.f0().rows(); ++i)
        for (std::size_t j = 0; j < f.f0().cols(); ++j, ++cell) {
            rhs_cell[cell] = model.reduce(f.f0().at(i, j));
            for (std::size_t k = 0; k < sh.h0_rows; ++k) {
                const Polynomial& c0 = f.target().phi1().at(i, k);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back({unknown_index(false, k, j, b),
                                           model.reduce(c0.times_term(basis[b], Rational(1)))});
            }
            for (std::size_t k = 0; k < sh.h1_cols; ++k) {
                const Polynomial& c0 = f.source().phi0().at(k, j);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back({unknown_index(true, i, k, b),
                                           model.reduce(c0.times_term(basis[b], Rational(1)))});
            }
        }
    for (std::size_t i = 0; i < f.f1().rows(); ++i)
        for (std::size_t j = 0; j < f.f1().cols(); ++j, ++cell) {
            rhs_cell[cell] = model.reduce(f.f1().at(i, j));
            for (std::size_t k = 0; k < sh.h1_rows; ++k) {
                const Polynomial& c0 = f.target().phi0().at(i, k);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back({unknown_index(true, k, j, b),
                                           model.reduce(c0.times_term(basis[b], Rational(1)))});
            }
            for (std::size_t k = 0; k < sh.h0_cols; ++k) {
                const Polynomial& c0 = f.source().phi1().at(k, j);
                if (c0.is_zero())
                    continue;
                for (std::size_t b = 0; b < basis.size(); ++b)
                    cells[cell].push_back({unknown_index(false, i, k, b),
                                           model.reduce(c0.times_term(basis[b], Rational(1)))});
            }
        }

    // Scalar rows: every monomial appearing in any cell's coefficients or rhs.
    std::size_t n_rows = 0;
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
    for (std::size_t c = 0; c < n_cells; ++c) {
        for (const auto& [m, q] : rhs_cell[c].terms())
            row_of(c, m);
        for (const auto& contrib : cells[c])
            for (const auto& [m, q] : contrib.coeff.terms())
                row_of(c, m);
    }
    n_rows = rows.size();
    QMatrix A(n_rows, n_unknowns);
    std::vector<Rational> rhs(n_rows, Rational(0));
    for (std::size_t c = 0; c < n_cells; ++c) {
        for (const auto& [m, q] : rhs_cell[c].terms())
            rhs[row_of(c, m)] = q;
        for (const auto& contrib : cells[c])
            for (const auto& [m, q] : contrib.coeff.terms())
                A.at(row_of(c, m), contrib.unknown) += q;
    }
    auto sol = solve_linear(A, rhs);
    if (!sol)
        return HomotopyDecision{Verdict::unknown, std::nullopt};

    PolyMatrix h0(vars, sh.h0_rows, sh.h0_cols), h1(vars, sh.h1_rows, sh.h1_cols);
    for (std::size_t r = 0; r < sh.h0_rows; ++r)
        for (std::size_t c = 0; c < sh.h0_cols; ++c) {
            std::vector<Polynomial::Term> terms;
            for (std::size_t b = 0; b < basis.size(); ++b)
                terms.emplace_back(basis[b], (*sol)[unknown_index(false, r, c, b)]);
            h0.at(r, c) = Polynomial::from_terms(vars, std::move(terms));
        }
    for (std::size_t r = 0; r < sh.h1_rows; ++r)
        for (std::size_t c = 0; c < sh.h1_cols; ++c) {
            std::vector<Polynomial::Term> terms;
            for (std::size_t b = 0; b < basis.size(); ++b)
                terms.emplace_back(basis[b], (*sol)[unknown_index(true, r, c, b)]);
            h1.at(r, c) = Polynomial::from_terms(vars, std::move(terms));
        }
    // Re-substitute the witness before trusting the linear algebra.
    PolyMatrix res0 = f.f0() - (f.target().phi1() * h0 + h1 * f.source().phi0());
    PolyMatrix res1 = f.f1() - (f.target().phi0() * h1 + h0 * f.source().phi1());
    if (!model.reduce(res0).is_zero() || !model.reduce(res1).is_zero())
        throw Error("internal: homotopy witness failed re-substitution");
    return HomotopyDecision{Verdict::yes, HomotopyWitness{std::move(h0), std::move(h1)}};
}

HomotopyDecision h0_class_is_zero(const MatrixFactorization& f, const PolyMatrix& f0,
                                  const H0ClassOptions& opts) {
    const LGModel& model = *f.model();
    const VarsPtr& vars = model.vars();
    if (!model.reduce(f.potential()).is_zero())
        throw PreconditionError("h0 classes live in potential-zero factorizations");
    if (f0.rows() != f.n0() || f0.cols() != 1)
        throw PreconditionError("f0 must be an n0 x 1 column");
    PolyMatrix col = model.reduce(f0);
    if (!model.reduce(f.phi0() * col).is_zero())
        throw PreconditionError("f0 is not a cycle: phi0*f0 != 0 mod I");
    if (col.is_zero())
        return HomotopyDecision{Verdict::yes, std::nullopt};

    // Fiber obstruction: if f0(p) is outside the column span of phi1(p) over
    // k(p), then f0 cannot lie in the column span over R.
    for (const auto& p : opts.probes) {
        PolyMatrix aug(vars, f.n0(), f.n1() + 1);
        for (std::size_t i = 0; i < f.n0(); ++i) {
            for (std::size_t j = 0; j < f.n1(); ++j)
                aug.at(i, j) = f.phi1().at(i, j);
            aug.at(i, f.n1()) = col.at(i, 0);
        }
        if (rank_at(aug, p) != rank_at(f.phi1(), p))
            return HomotopyDecision{Verdict::no, std::nullopt};
    }

    if (f.n0() == 1) {
        // Single row: membership in the ideal generated by the phi1 entries
        // (plus the relations) is decidable exactly.
        std::vector<Polynomial> gens;
        for (std::size_t j = 0; j < f.n1(); ++j)
            gens.push_back(f.phi1().at(0, j));
        for (const auto& g : model.relations().gens)
            gens.push_back(g);
        GroebnerBasis gb = groebner(Ideal::make(vars, std::move(gens)), MonomialOrder::degrevlex(),
                                    model.options());
        bool inside = nf(col.at(0, 0), gb).is_zero();
        return HomotopyDecision{inside ? Verdict::yes : Verdict::no, std::nullopt};
    }

    // Degree-bounded certificate search for f0 = phi1 * c.
    MatrixFactorization unit = MatrixFactorization::unit(f.model());
    MFMorphism as_morphism = MFMorphism::make(unit, f, PolyMatrix(vars, f.n1(), 0), col);
    RingLevel level;
    level.degree_bound = opts.degree_bound;
    HomotopyDecision d = is_nullhomotopic(as_morphism, level);
    // A null-homotopy of (0, f0) from the unit is exactly a span certificate.
    return HomotopyDecision{d.verdict == Verdict::yes ? Verdict::yes : Verdict::unknown,
                            std::move(d.witness)};
}

} // namespace mflocus
