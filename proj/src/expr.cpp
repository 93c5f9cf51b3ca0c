#include "mflocus/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace mflocus {

std::string to_string(const Rational& q) {
    std::ostringstream out;
    out << numerator(q);
    if (denominator(q) != 1)
        out << "/" << denominator(q);
    return out.str();
}

Rational rational_from_string(std::string_view text) {
    std::string s(text);
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            throw ParseError("zero denominator in rational literal", slash + 1);
        return Rational(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal '" + s + "'", 0);
    }
}

Vars::Vars(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<std::size_t> Vars::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const Vars>(std::move(names));
}

void require_same_vars(const VarsPtr& a, const VarsPtr& b, const char* what) {
    if (!same_vars(a, b))
        throw ContextMismatchError(std::string("variable context mismatch in ") + what);
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (auto x : e)
        d += x;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i)
        r.e[i] += other.e[i];
    return r;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > other.e[i])
            return false;
    return true;
}

Monomial Monomial::divided_into(const Monomial& numerator) const {
    Monomial r = numerator;
    for (std::size_t i = 0; i < e.size(); ++i)
        r.e[i] -= e[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i)
        r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

bool Monomial::coprime_to(const Monomial& other) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0 && other.e[i] > 0)
            return false;
    return true;
}

namespace {

int compare_lex(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

// a > b when the last nonzero entry of a-b is negative.
int compare_degrevlex(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    std::uint64_t da = 0, db = 0;
    for (auto x : a)
        da += x;
    for (auto x : b)
        db += x;
    if (da != db)
        return da < db ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::lex:
            return compare_lex(a.e, b.e);
        case Kind::degrevlex:
            return compare_degrevlex(a.e, b.e);
        case Kind::elimination: {
            std::size_t k = std::min(block_, a.e.size());
            std::span<const std::uint32_t> a_head(a.e.data(), k), b_head(b.e.data(), k);
            if (int c = compare_degrevlex(a_head, b_head); c != 0)
                return c;
            std::span<const std::uint32_t> a_tail(a.e.data() + k, a.e.size() - k);
            std::span<const std::uint32_t> b_tail(b.e.data() + k, b.e.size() - k);
            return compare_degrevlex(a_tail, b_tail);
        }
    }
    return 0;
}

std::string MonomialOrder::to_string() const {
    switch (kind_) {
        case Kind::lex:
            return "lex";
        case Kind::degrevlex:
            return "degrevlex";
        case Kind::elimination:
            return "elimination(" + std::to_string(block_) + ")";
    }
    return "?";
}

namespace {

// Canonical term layout comparator: descending degrevlex.
struct CanonicalLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare_degrevlex(a.e, b.e) > 0;
    }
};

} // namespace

Polynomial Polynomial::zero(VarsPtr vars) {
    Polynomial p;
    p.vars_ = std::move(vars);
    return p;
}

Polynomial Polynomial::constant(VarsPtr vars, Rational c) {
    std::size_t n = vars->size();
    Polynomial p;
    p.vars_ = std::move(vars);
    if (c != 0)
        p.terms_.emplace_back(Monomial::one(n), std::move(c));
    return p;
}

Polynomial Polynomial::variable(VarsPtr vars, std::size_t index) {
    Monomial m = Monomial::one(vars->size());
    m.e.at(index) = 1;
    return monomial_term(std::move(vars), std::move(m), Rational(1));
}

Polynomial Polynomial::monomial_term(VarsPtr vars, Monomial m, Rational c) {
    Polynomial p;
    p.vars_ = std::move(vars);
    if (c != 0)
        p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
}

Polynomial Polynomial::from_terms(VarsPtr vars, std::vector<Term> terms) {
    std::map<Monomial, Rational, CanonicalLess> acc;
    for (auto& [m, c] : terms)
        acc[std::move(m)] += c;
    Polynomial p;
    p.vars_ = std::move(vars);
    for (auto& [m, c] : acc)
        if (c != 0)
            p.terms_.emplace_back(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Rational Polynomial::constant_coefficient() const {
    if (!terms_.empty() && terms_.back().first.is_one())
        return terms_.back().second;
    return Rational(0);
}

std::uint64_t Polynomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    require_same_vars(vars_, other.vars_, "polynomial addition");
    Polynomial r;
    r.vars_ = vars_;
    r.terms_.reserve(terms_.size() + other.terms_.size());
    CanonicalLess before;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
        if (j == other.terms_.size() || (i < terms_.size() && before(terms_[i].first, other.terms_[j].first))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || before(other.terms_[j].first, terms_[i].first)) {
            r.terms_.push_back(other.terms_[j++]);
        } else {
            Rational c = terms_[i].second + other.terms_[j].second;
            if (c != 0)
                r.terms_.emplace_back(terms_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    return *this + (-other);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c == 0)
        return zero(vars_);
    Polynomial r = *this;
    for (auto& [m, coeff] : r.terms_)
        coeff *= c;
    return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
    if (c == 0)
        return zero(vars_);
    Polynomial r;
    r.vars_ = vars_;
    r.terms_.reserve(terms_.size());
    for (const auto& [tm, tc] : terms_)
        r.terms_.emplace_back(tm * m, tc * c);
    // Multiplying every monomial by a fixed one preserves the degrevlex order,
    // so the term list stays sorted.
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    require_same_vars(vars_, other.vars_, "polynomial multiplication");
    std::map<Monomial, Rational, CanonicalLess> acc;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            acc[ma * mb] += ca * cb;
    Polynomial r;
    r.vars_ = vars_;
    for (auto& [m, c] : acc)
        if (c != 0)
            r.terms_.emplace_back(m, c);
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(vars_, Rational(1));
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1u)
            r = r * base;
        n >>= 1u;
        if (n > 0)
            base = base * base;
    }
    return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars())
        throw PreconditionError("evaluation point has wrong length");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            for (std::uint32_t k = 0; k < m.e[i]; ++k)
                v *= point[i];
        }
        total += v;
    }
    return total;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= nvars())
        throw PreconditionError("unknown variable index in derivative");
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0)
            continue;
        Monomial dm = m;
        Rational dc = c * Rational(dm.e[var]);
        dm.e[var] -= 1;
        out.emplace_back(std::move(dm), std::move(dc));
    }
    return from_terms(vars_, std::move(out));
}

const Polynomial::Term& Polynomial::leading_term(const MonomialOrder& order) const {
    if (terms_.empty())
        throw PreconditionError("the zero polynomial has no leading term");
    if (order.kind() == MonomialOrder::Kind::degrevlex)
        return terms_.front();
    const Term* best = &terms_.front();
    for (const auto& t : terms_)
        if (order.less(best->first, t.first))
            best = &t;
    return *best;
}

bool Polynomial::operator==(const Polynomial& other) const {
    return same_vars(vars_, other.vars_) && terms_ == other.terms_;
}

std::string Polynomial::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        bool coeff_shown = false;
        if (m.is_one() || a != 1) {
            out << mflocus::to_string(a);
            coeff_shown = true;
        }
        bool any_var = false;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0)
                continue;
            if (coeff_shown || any_var)
                out << "*";
            out << vars_->name(i);
            if (m.e[i] > 1)
                out << "^" << m.e[i];
            any_var = true;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    VarsPtr vars;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* ctx) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' " + ctx, pos);
    }

    Int integer_literal() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            throw ParseError("expected an integer literal", pos);
        return Int(std::string(text.substr(start, pos - start)));
    }

    Polynomial expr() {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Polynomial acc = term();
        if (negate)
            acc = -acc;
        while (true) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*'))
            acc = acc * factor();
        // A factor immediately followed by another factor means a missing '*'.
        skip_ws();
        if (pos < text.size()) {
            char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
                throw ParseError("missing '*' between factors", pos);
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (accept('^')) {
            Int n = integer_literal();
            if (n < 0 || n > 100000)
                throw ParseError("exponent out of range", pos);
            base = base.pow(static_cast<unsigned>(n));
        }
        return base;
    }

    Polynomial primary() {
        skip_ws();
        if (pos >= text.size())
            throw ParseError("unexpected end of expression", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Polynomial inner = expr();
            expect(')', "to close '('");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = integer_literal();
            // A '/' directly after an integer extends it to a rational literal.
            skip_ws();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                std::size_t den_pos = pos;
                Int den = integer_literal();
                if (den == 0)
                    throw ParseError("zero denominator in rational literal", den_pos);
                return Polynomial::constant(vars, Rational(num, den));
            }
            return Polynomial::constant(vars, Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string_view name = text.substr(start, pos - start);
            auto idx = vars->index_of(name);
            if (!idx)
                throw ParseError("unknown variable '" + std::string(name) + "'", start);
            return Polynomial::variable(vars, *idx);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
};

} // namespace

Polynomial parse_poly(std::string_view text, VarsPtr vars) {
    Parser p{text, 0, std::move(vars)};
    Polynomial result = p.expr();
    if (!p.at_end())
        throw ParseError("trailing input after expression", p.pos);
    return result;
}

Polynomial embed_into(const Polynomial& p, VarsPtr bigger, std::size_t shift) {
    std::size_t n_old = p.nvars();
    std::size_t n_new = bigger->size();
    std::vector<Polynomial::Term> out;
    out.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        Monomial nm = Monomial::one(n_new);
        for (std::size_t i = 0; i < n_old; ++i)
            nm.e[i + shift] = m.e[i];
        out.emplace_back(std::move(nm), c);
    }
    return Polynomial::from_terms(std::move(bigger), std::move(out));
}

Polynomial restrict_from_front(const Polynomial& p, VarsPtr smaller, std::size_t shift) {
    std::size_t n_new = smaller->size();
    std::vector<Polynomial::Term> out;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < shift; ++i)
            if (m.e[i] != 0)
                throw PreconditionError("polynomial still involves an eliminated variable");
        Monomial nm = Monomial::one(n_new);
        for (std::size_t i = 0; i < n_new; ++i)
            nm.e[i] = m.e[i + shift];
        out.emplace_back(std::move(nm), c);
    }
    return Polynomial::from_terms(std::move(smaller), std::move(out));
}

} // namespace mflocus
