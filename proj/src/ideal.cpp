#include "mflocus/ideal.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace mflocus {

Ideal Ideal::make(VarsPtr vars, std::vector<Polynomial> gens) {
    for (const auto& g : gens)
        require_same_vars(vars, g.vars(), "ideal generators");
    if (gens.empty())
        gens.push_back(Polynomial::zero(vars));
    return Ideal{std::move(vars), std::move(gens)};
}

bool Ideal::is_zero() const {
    return std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_zero(); });
}

namespace {

struct StepCounter {
    std::uint64_t used = 0;
    std::uint64_t budget;
    explicit StepCounter(std::uint64_t b) : budget(b) {}
    void tick() {
        if (++used > budget)
            throw BudgetExhaustedError("Groebner reduction step budget exhausted");
    }
};

// A polynomial together with its exact representation over the source generators.
struct Tracked {
    Polynomial p;
    std::vector<Polynomial> cert;
};

// Full division of `f` by the tracked basis. Moves irreducible leading terms
// into the remainder, so no remainder term is divisible by any basis LT.
struct DivisionResult {
    Polynomial remainder;
    std::vector<Polynomial> cofactors; // over the basis, aligned with `basis`
};

DivisionResult divide_full(const Polynomial& f, const std::vector<Tracked>& basis,
                           const MonomialOrder& order, StepCounter* steps) {
    const VarsPtr& vars = f.vars();
    DivisionResult out;
    out.remainder = Polynomial::zero(vars);
    out.cofactors.assign(basis.size(), Polynomial::zero(vars));
    Polynomial work = f;
    while (!work.is_zero()) {
        const auto& [lm, lc] = work.leading_term(order);
        bool reduced = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (basis[k].p.is_zero())
                continue;
            const auto& [gm, gc] = basis[k].p.leading_term(order);
            if (!gm.divides(lm))
                continue;
            Monomial q = gm.divided_into(lm);
            Rational c = lc / gc;
            work = work - basis[k].p.times_term(q, c);
            out.cofactors[k] = out.cofactors[k] + Polynomial::monomial_term(vars, q, c);
            if (steps)
                steps->tick();
            reduced = true;
            break;
        }
        if (!reduced) {
            Polynomial t = Polynomial::monomial_term(vars, lm, lc);
            out.remainder = out.remainder + t;
            work = work - t;
        }
    }
    return out;
}

std::vector<Polynomial> combine_certs(const std::vector<Tracked>& basis,
                                      const std::vector<Polynomial>& cofactors, const VarsPtr& vars,
                                      std::size_t ngens) {
    std::vector<Polynomial> cert(ngens, Polynomial::zero(vars));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (cofactors[k].is_zero())
            continue;
        for (std::size_t j = 0; j < ngens; ++j)
            cert[j] = cert[j] + cofactors[k] * basis[k].cert[j];
    }
    return cert;
}

} // namespace

GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order, const GroebnerOptions& opts) {
    const VarsPtr& vars = ideal.vars;
    const std::size_t ngens = ideal.gens.size();
    StepCounter steps(opts.step_budget);

    std::vector<Tracked> basis;
    for (std::size_t j = 0; j < ngens; ++j) {
        if (ideal.gens[j].is_zero())
            continue;
        std::vector<Polynomial> cert(ngens, Polynomial::zero(vars));
        cert[j] = Polynomial::constant(vars, Rational(1));
        basis.push_back(Tracked{ideal.gens[j], std::move(cert)});
    }

    // Pending pair set, kept sorted; selection picks the smallest lcm (normal
    // strategy). Pairs are also consulted by the chain criterion below.
    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            pending.insert({i, j});

    auto lt = [&](std::size_t k) -> const Monomial& { return basis[k].p.leading_term(order).first; };

    while (!pending.empty()) {
        auto chosen = pending.begin();
        Monomial chosen_lcm = Monomial::lcm(lt(chosen->first), lt(chosen->second));
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            Monomial l = Monomial::lcm(lt(it->first), lt(it->second));
            if (order.less(l, chosen_lcm)) {
                chosen = it;
                chosen_lcm = l;
            }
        }
        auto [i, j] = *chosen;
        pending.erase(chosen);

        if (lt(i).coprime_to(lt(j)))
            continue; // product criterion
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == i || k == j || !lt(k).divides(chosen_lcm))
                continue;
            std::pair<std::size_t, std::size_t> ik{std::min(i, k), std::max(i, k)};
            std::pair<std::size_t, std::size_t> jk{std::min(j, k), std::max(j, k)};
            if (!pending.count(ik) && !pending.count(jk))
                chained = true; // chain criterion
        }
        if (chained)
            continue;

        const auto& [mi, ci] = basis[i].p.leading_term(order);
        const auto& [mj, cj] = basis[j].p.leading_term(order);
        Polynomial spoly = basis[i].p.times_term(mi.divided_into(chosen_lcm), Rational(1) / ci) -
                           basis[j].p.times_term(mj.divided_into(chosen_lcm), Rational(1) / cj);
        std::vector<Polynomial> scert(ngens, Polynomial::zero(vars));
        {
            Polynomial ui = Polynomial::monomial_term(vars, mi.divided_into(chosen_lcm), Rational(1) / ci);
            Polynomial uj = Polynomial::monomial_term(vars, mj.divided_into(chosen_lcm), Rational(1) / cj);
            for (std::size_t g = 0; g < ngens; ++g)
                scert[g] = ui * basis[i].cert[g] - uj * basis[j].cert[g];
        }

        DivisionResult div = divide_full(spoly, basis, order, &steps);
        if (div.remainder.is_zero())
            continue;
        std::vector<Polynomial> rcert = scert;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (div.cofactors[k].is_zero())
                continue;
            for (std::size_t g = 0; g < ngens; ++g)
                rcert[g] = rcert[g] - div.cofactors[k] * basis[k].cert[g];
        }
        basis.push_back(Tracked{std::move(div.remainder), std::move(rcert)});
        for (std::size_t k = 0; k + 1 < basis.size(); ++k)
            pending.insert({k, basis.size() - 1});
    }

    // Minimalize: drop elements whose LT is divisible by another surviving LT.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!keep[i])
            continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !keep[j])
                continue;
            if (lt(j).divides(lt(i)) && !(lt(i) == lt(j) && j > i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Tracked> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i])
            minimal.push_back(std::move(basis[i]));

    // Tail-reduce each element against the others and normalize to monic.
    std::vector<Tracked> reduced = minimal;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Tracked> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        DivisionResult div = divide_full(minimal[i].p, others, order, &steps);
        std::vector<Polynomial> cert = minimal[i].cert;
        std::size_t oj = 0;
        for (std::size_t j = 0; j < minimal.size(); ++j) {
            if (j == i)
                continue;
            if (!div.cofactors[oj].is_zero())
                for (std::size_t g = 0; g < ngens; ++g)
                    cert[g] = cert[g] - div.cofactors[oj] * minimal[j].cert[g];
            ++oj;
        }
        Rational lc = div.remainder.leading_term(order).second;
        reduced[i].p = div.remainder.scaled(Rational(1) / lc);
        for (std::size_t g = 0; g < ngens; ++g)
            reduced[i].cert[g] = cert[g].scaled(Rational(1) / lc);
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Tracked& a, const Tracked& b) {
        return order.less(a.p.leading_term(order).first, b.p.leading_term(order).first);
    });

    GroebnerBasis gb;
    gb.source_ = ideal;
    gb.order_ = order;
    for (auto& t : reduced) {
        gb.elements_.push_back(std::move(t.p));
        gb.certificates_.push_back(std::move(t.cert));
    }
    return gb;
}

bool GroebnerBasis::contains_one() const {
    for (const auto& g : elements_)
        if (!g.is_zero() && g.is_constant())
            return true;
    return false;
}

bool GroebnerBasis::verify_certificates() const {
    const VarsPtr& vars = source_.vars;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        Polynomial acc = Polynomial::zero(vars);
        for (std::size_t j = 0; j < source_.gens.size(); ++j)
            acc = acc + certificates_[k][j] * source_.gens[j];
        if (!(acc == elements_[k]))
            return false;
    }
    return true;
}

bool GroebnerBasis::verify_buchberger(const GroebnerOptions& opts) const {
    StepCounter steps(opts.step_budget);
    std::vector<Tracked> basis;
    for (const auto& g : elements_)
        basis.push_back(Tracked{g, {}});
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto& [mi, ci] = basis[i].p.leading_term(order_);
            const auto& [mj, cj] = basis[j].p.leading_term(order_);
            Monomial l = Monomial::lcm(mi, mj);
            Polynomial spoly = basis[i].p.times_term(mi.divided_into(l), Rational(1) / ci) -
                               basis[j].p.times_term(mj.divided_into(l), Rational(1) / cj);
            if (!divide_full(spoly, basis, order_, &steps).remainder.is_zero())
                return false;
        }
    }
    return true;
}

NormalFormResult normal_form(const Polynomial& f, const GroebnerBasis& gb) {
    require_same_vars(f.vars(), gb.source().vars, "normal form");
    std::vector<Tracked> basis;
    for (const auto& g : gb.elements())
        basis.push_back(Tracked{g, {}});
    DivisionResult div = divide_full(f, basis, gb.order(), nullptr);
    return NormalFormResult{std::move(div.remainder), std::move(div.cofactors)};
}

Polynomial nf(const Polynomial& f, const GroebnerBasis& gb) {
    return normal_form(f, gb).remainder;
}

std::vector<Polynomial> combination_over_generators(const GroebnerBasis& gb,
                                                    const std::vector<Polynomial>& gb_cofactors) {
    const VarsPtr& vars = gb.source().vars;
    std::vector<Polynomial> cert(gb.source().gens.size(), Polynomial::zero(vars));
    for (std::size_t k = 0; k < gb_cofactors.size(); ++k) {
        if (gb_cofactors[k].is_zero())
            continue;
        for (std::size_t j = 0; j < cert.size(); ++j)
            cert[j] = cert[j] + gb_cofactors[k] * gb.certificates()[k][j];
    }
    return cert;
}

namespace {

// Fresh elimination variable name, guaranteed absent from `vars`.
std::string fresh_var_name(const Vars& vars) {
    std::string name = "t";
    while (vars.index_of(name))
        name += "_";
    return name;
}

VarsPtr extend_front(const Vars& vars, const std::string& name) {
    std::vector<std::string> names;
    names.reserve(vars.size() + 1);
    names.push_back(name);
    for (const auto& v : vars.names())
        names.push_back(v);
    return make_vars(std::move(names));
}

} // namespace

Ideal ideal_quotient(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& opts) {
    require_same_vars(ideal.vars, f.vars(), "ideal quotient");
    if (f.is_zero())
        throw PreconditionError("ideal quotient by the zero polynomial");
    if (ideal.is_zero())
        return Ideal::make(ideal.vars, {});

    VarsPtr ext = extend_front(*ideal.vars, fresh_var_name(*ideal.vars));
    Polynomial t = Polynomial::variable(ext, 0);
    Polynomial one = Polynomial::constant(ext, Rational(1));
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.gens)
        if (!g.is_zero())
            gens.push_back(t * embed_into(g, ext, 1));
    gens.push_back((one - t) * embed_into(f, ext, 1));

    GroebnerBasis gb = groebner(Ideal::make(ext, std::move(gens)), MonomialOrder::elimination(1), opts);

    // The t-free basis elements generate I ∩ <f>; dividing them by f gives (I : f).
    std::vector<Tracked> divisor{Tracked{f, {}}};
    std::vector<Polynomial> out;
    for (const auto& g : gb.elements()) {
        bool tfree = std::all_of(g.terms().begin(), g.terms().end(),
                                 [](const Polynomial::Term& t2) { return t2.first.e[0] == 0; });
        if (!tfree)
            continue;
        Polynomial h = restrict_from_front(g, ideal.vars, 1);
        DivisionResult div = divide_full(h, divisor, MonomialOrder::degrevlex(), nullptr);
        if (!div.remainder.is_zero())
            throw Error("internal: intersection element not divisible by f");
        if (!div.cofactors[0].is_zero())
            out.push_back(div.cofactors[0]);
    }
    std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
        if (a.terms().size() != b.terms().size())
            return a.terms().size() < b.terms().size();
        return a.to_string() < b.to_string();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Ideal::make(ideal.vars, std::move(out));
}

bool radical_membership(const Polynomial& f, const Ideal& ideal, const GroebnerOptions& opts) {
    require_same_vars(ideal.vars, f.vars(), "radical membership");
    if (f.is_zero())
        return true;
    VarsPtr ext = extend_front(*ideal.vars, fresh_var_name(*ideal.vars));
    Polynomial t = Polynomial::variable(ext, 0);
    Polynomial one = Polynomial::constant(ext, Rational(1));
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.gens)
        if (!g.is_zero())
            gens.push_back(embed_into(g, ext, 1));
    gens.push_back(one - t * embed_into(f, ext, 1));
    GroebnerBasis gb = groebner(Ideal::make(ext, std::move(gens)), MonomialOrder::degrevlex(), opts);
    return gb.contains_one();
}

namespace {

// Largest variable subset S with no leading monomial supported inside S.
std::size_t max_independent_set(const std::vector<Monomial>& lts, std::size_t nvars) {
    std::size_t best = 0;
    std::vector<std::size_t> chosen;
    auto independent = [&](std::size_t candidate) {
        for (const auto& m : lts) {
            bool inside = true;
            for (std::size_t i = 0; i < nvars && inside; ++i) {
                if (m.e[i] == 0)
                    continue;
                bool in_set = (i == candidate) ||
                              std::find(chosen.begin(), chosen.end(), i) != chosen.end();
                inside = in_set;
            }
            if (inside && !m.is_one())
                return false;
        }
        return true;
    };
    auto recurse = [&](auto&& self, std::size_t next) -> void {
        best = std::max(best, chosen.size());
        for (std::size_t v = next; v < nvars; ++v) {
            if (chosen.size() + (nvars - v) <= best)
                break;
            if (!independent(v))
                continue;
            chosen.push_back(v);
            self(self, v + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

} // namespace

std::optional<unsigned> ideal_dimension(const Ideal& ideal, const GroebnerOptions& opts) {
    GroebnerBasis gb = groebner(ideal, MonomialOrder::degrevlex(), opts);
    if (gb.contains_one())
        return std::nullopt;
    std::vector<Monomial> lts;
    for (const auto& g : gb.elements())
        lts.push_back(g.leading_term(gb.order()).first);
    return static_cast<unsigned>(max_independent_set(lts, ideal.vars->size()));
}

} // namespace mflocus
