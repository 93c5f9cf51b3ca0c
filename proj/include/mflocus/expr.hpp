#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mflocus/errors.hpp"

namespace mflocus {

// Exact scalars: arbitrary-precision rationals, always reduced, denominator > 0.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);
// Parses "p", "-p" or "p/q" with integer p, q. Throws ParseError.
Rational rational_from_string(std::string_view text);

// Immutable ambient variable list shared by all values of one computation.
class Vars {
public:
    explicit Vars(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const Vars& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const Vars>;

VarsPtr make_vars(std::vector<std::string> names);

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) {
    return a == b || (a && b && *a == *b);
}

// Throws ContextMismatchError unless a and b agree.
void require_same_vars(const VarsPtr& a, const VarsPtr& b, const char* what);

// Exponent vector, one natural per ambient variable.
struct Monomial {
    std::vector<std::uint32_t> e;

    static Monomial one(std::size_t nvars) { return Monomial{std::vector<std::uint32_t>(nvars, 0)}; }

    std::uint64_t degree() const;
    bool is_one() const;
    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    // Exact division; caller guarantees divisibility.
    Monomial divided_into(const Monomial& numerator) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime_to(const Monomial& other) const;

    bool operator==(const Monomial& other) const { return e == other.e; }
};

// Total, multiplicative well-orders on monomials.
class MonomialOrder {
public:
    enum class Kind { degrevlex, lex, elimination };

    static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
    static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
    // Block order eliminating the first `block` variables: compares the leading
    // block by degrevlex first, then the remaining variables by degrevlex.
    static MonomialOrder elimination(std::size_t block) { return MonomialOrder(Kind::elimination, block); }

    // -1 if a < b, 0 if equal, +1 if a > b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    Kind kind() const { return kind_; }
    std::size_t block() const { return block_; }
    std::string to_string() const;

    bool operator==(const MonomialOrder& other) const = default;

private:
    MonomialOrder(Kind k, std::size_t block) : kind_(k), block_(block) {}
    Kind kind_;
    std::size_t block_;
};

// Sparse multivariate polynomial over Q with a canonical term layout:
// terms are stored sorted descending by degrevlex and never carry a zero
// coefficient, so equal polynomials have identical representations.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rational>;

    Polynomial() = default; // zero over an empty context; prefer the named constructors
    static Polynomial zero(VarsPtr vars);
    static Polynomial constant(VarsPtr vars, Rational c);
    static Polynomial variable(VarsPtr vars, std::size_t index);
    static Polynomial monomial_term(VarsPtr vars, Monomial m, Rational c);
    // Takes any term list, merges duplicates, drops zeros, sorts canonically.
    static Polynomial from_terms(VarsPtr vars, std::vector<Term> terms);

    const VarsPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The coefficient of the constant monomial (0 if absent).
    Rational constant_coefficient() const;
    std::uint64_t total_degree() const; // 0 for the zero polynomial

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned n) const;
    Polynomial times_term(const Monomial& m, const Rational& c) const;

    Rational evaluate(std::span<const Rational> point) const;
    Polynomial derivative(std::size_t var) const;

    // Leading term w.r.t. `order`; throws PreconditionError on the zero polynomial.
    const Term& leading_term(const MonomialOrder& order) const;

    bool operator==(const Polynomial& other) const;

    std::string to_string() const;

private:
    VarsPtr vars_;
    std::vector<Term> terms_; // sorted descending by degrevlex, no zero coefficients
};

// Parses the expression grammar: integers, rationals "p/q", variables,
// + - * ^ ( ); '*' is mandatory between factors, '^' takes a natural literal.
// Throws ParseError with a position, or for identifiers missing from `vars`.
Polynomial parse_poly(std::string_view text, VarsPtr vars);

// Context surgery: re-expresses a polynomial over an extended variable list
// (the original variables must appear, in order, at offset `shift`).
Polynomial embed_into(const Polynomial& p, VarsPtr bigger, std::size_t shift);
// Drops the first `shift` variables; every term must have exponent 0 there.
Polynomial restrict_from_front(const Polynomial& p, VarsPtr smaller, std::size_t shift);

} // namespace mflocus
