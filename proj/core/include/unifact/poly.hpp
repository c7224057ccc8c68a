#ifndef UNIFACT_POLY_HPP
#define UNIFACT_POLY_HPP

#include <map>
#include <set>
#include <vector>

#include "unifact/exact.hpp"
#include "unifact/variable.hpp"

namespace unifact {

// Monomial: sorted (variable, exponent) pairs, exponents > 0.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(const VarId& v, int exp = 1);

    const std::vector<std::pair<VarId, int>>& factors() const { return factors_; }
    bool is_constant() const { return factors_.empty(); }
    int degree() const;
    int degree_in(const VarId& v) const;

    Monomial operator*(const Monomial& o) const;
    // Divides the exponent of v by one; precondition degree_in(v) >= 1.
    Monomial without_one(const VarId& v) const;

    friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    std::string to_string() const;

private:
    std::vector<std::pair<VarId, int>> factors_;
};

// Sparse multivariate polynomial over ExactComplex. Terms are kept in a
// canonically ordered map with no zero coefficients, so structural equality
// is semantic equality and serialization is deterministic.
class Poly {
public:
    using TermMap = std::map<Monomial, ExactComplex>;

    Poly() = default;
    Poly(long c) { add_term(Monomial(), ExactComplex(c)); }
    explicit Poly(ExactComplex c) { add_term(Monomial(), std::move(c)); }
    static Poly variable(const VarId& v) {
        Poly p;
        p.add_term(Monomial(v), ExactComplex(1));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero if absent).
    ExactComplex constant_value() const;

    void add_term(const Monomial& m, ExactComplex c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const ExactComplex& c) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::set<VarId> support() const;
    int total_degree() const;
    int degree_in(const VarId& v) const;

    // Exact formal partial derivative.
    Poly derivative(const VarId& v) const;

    // True iff every monomial exponent is <= 1 in every variable; offenders
    // collects the violating variables when given.
    bool is_multilinear(std::vector<VarId>* offenders = nullptr) const;

    // Horner-style evaluation (recursive single-variable splits). Throws
    // DomainError listing the absent variables if the assignment is partial.
    Cplx evaluate(const std::map<VarId, Cplx>& assignment) const;
    ExactComplex evaluate_exact(const std::map<VarId, ExactComplex>& assignment) const;

    // Partial substitution of exact values; remaining variables stay symbolic.
    Poly substitute(const std::map<VarId, ExactComplex>& values) const;
    // Substitute a polynomial for a variable (exponents expand by powers).
    Poly substitute(const VarId& v, const Poly& value) const;

    std::string to_string() const;

private:
    TermMap terms_;
};

// Process-wide cap on the number of terms a single product may produce,
// honoring the UNIFACT_TERM_BUDGET environment variable at CLI startup.
std::size_t term_budget();
void set_term_budget(std::size_t budget);

} // namespace unifact

#endif
