#include "unifact/poly.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "unifact/errors.hpp"

namespace unifact {

VarId VarId::param(int factor, int row, int col) {
    if (factor < 1)
        throw DomainError("unipotent parameter needs factor index >= 1");
    if (row == col || row < 1 || col < 1)
        throw DomainError("unipotent parameter needs off-diagonal (row, col)");
    bool lower = factor_is_lower(factor);
    if (lower && row < col)
        throw DomainError("odd factor is lower triangular, needs row > col");
    if (!lower && row > col)
        throw DomainError("even factor is upper triangular, needs row < col");
    VarId v;
    v.factor = factor;
    v.row = row;
    v.col = col;
    return v;
}

VarId VarId::symbol(std::string name) {
    if (name.empty())
        throw DomainError("free symbol needs a nonempty name");
    VarId v;
    v.name = std::move(name);
    return v;
}

std::string VarId::to_string() const {
    if (is_symbol())
        return name;
    std::ostringstream os;
    os << "z[" << row << "," << col << "," << factor << "]";
    return os.str();
}

std::vector<std::pair<int, int>> triangle_coords(int n, bool lower) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    if (lower) {
        for (int col = 1; col < n; ++col)
            for (int row = col + 1; row <= n; ++row)
                out.emplace_back(row, col);
    } else {
        for (int row = 1; row < n; ++row)
            for (int col = row + 1; col <= n; ++col)
                out.emplace_back(row, col);
    }
    return out;
}

std::vector<VarId> chain_variables(int n, int K) {
    std::vector<VarId> vars;
    vars.reserve(static_cast<std::size_t>(K) * n * (n - 1) / 2);
    for (int k = 1; k <= K; ++k)
        for (auto [r, c] : triangle_coords(n, factor_is_lower(k)))
            vars.push_back(VarId::param(k, r, c));
    return vars;
}

Monomial::Monomial(const VarId& v, int exp) {
    if (exp < 1)
        throw DomainError("monomial exponent must be positive");
    factors_.emplace_back(v, exp);
}

int Monomial::degree() const {
    int d = 0;
    for (auto& [v, e] : factors_)
        d += e;
    return d;
}

int Monomial::degree_in(const VarId& v) const {
    for (auto& [w, e] : factors_)
        if (w == v)
            return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first < b->first)
            out.factors_.push_back(*a++);
        else if (b->first < a->first)
            out.factors_.push_back(*b++);
        else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    out.factors_.insert(out.factors_.end(), a, factors_.end());
    out.factors_.insert(out.factors_.end(), b, o.factors_.end());
    return out;
}

Monomial Monomial::without_one(const VarId& v) const {
    Monomial out;
    out.factors_.reserve(factors_.size());
    for (auto& [w, e] : factors_) {
        if (w == v) {
            if (e > 1)
                out.factors_.emplace_back(w, e - 1);
        } else {
            out.factors_.emplace_back(w, e);
        }
    }
    return out;
}

std::string Monomial::to_string() const {
    if (factors_.empty())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : factors_) {
        if (!first)
            os << "*";
        first = false;
        os << v.to_string();
        if (e > 1)
            os << "^" << e;
    }
    return os.str();
}

namespace {
std::atomic<std::size_t> g_term_budget{4'000'000};
}

std::size_t term_budget() { return g_term_budget.load(); }
void set_term_budget(std::size_t budget) { g_term_budget.store(budget); }

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

ExactComplex Poly::constant_value() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? ExactComplex() : it->second;
}

void Poly::add_term(const Monomial& m, ExactComplex c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(c));
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

Poly Poly::operator-() const {
    Poly out;
    for (auto& [m, c] : terms_)
        out.terms_.emplace(m, -c);
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    const std::size_t budget = term_budget();
    for (auto& [ma, ca] : a.terms_) {
        for (auto& [mb, cb] : b.terms_) {
            out.add_term(ma * mb, ca * cb);
            if (out.terms_.size() > budget)
                throw NumericError("term budget exceeded in polynomial product");
        }
    }
    return out;
}

Poly Poly::scaled(const ExactComplex& c) const {
    Poly out;
    if (c.is_zero())
        return out;
    for (auto& [m, k] : terms_)
        out.terms_.emplace(m, k * c);
    return out;
}

std::set<VarId> Poly::support() const {
    std::set<VarId> s;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors())
            s.insert(v);
    return s;
}

int Poly::total_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

int Poly::degree_in(const VarId& v) const {
    int d = 0;
    for (auto& [m, c] : terms_)
        d = std::max(d, m.degree_in(v));
    return d;
}

Poly Poly::derivative(const VarId& v) const {
    Poly out;
    for (auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        if (e == 0)
            continue;
        out.add_term(m.without_one(v), c * ExactComplex(e));
    }
    return out;
}

bool Poly::is_multilinear(std::vector<VarId>* offenders) const {
    std::set<VarId> bad;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors())
            if (e > 1)
                bad.insert(v);
    if (offenders)
        offenders->assign(bad.begin(), bad.end());
    return bad.empty();
}

namespace {

void check_assignment_covers(const Poly& p, const std::set<VarId>& given) {
    std::vector<VarId> missing;
    for (const VarId& v : p.support())
        if (!given.count(v))
            missing.push_back(v);
    if (!missing.empty()) {
        std::ostringstream os;
        os << "evaluation is missing variables:";
        for (auto& v : missing)
            os << " " << v.to_string();
        throw DomainError(os.str());
    }
}

// Horner split on the most frequent variable: p = v^? ... implemented as
// p = v * q + r with q, r of strictly smaller support mass.
template <class Scalar, class Map>
Scalar horner_eval(const Poly& p, const Map& assignment) {
    if (p.is_zero())
        return Scalar{};
    if (p.is_constant()) {
        if constexpr (std::is_same_v<Scalar, Cplx>)
            return p.constant_value().to_complex();
        else
            return p.constant_value();
    }
    // Pick the variable occurring in the most terms.
    std::map<VarId, int> freq;
    for (auto& [m, c] : p.terms())
        for (auto& [v, e] : m.factors())
            ++freq[v];
    const VarId* best = nullptr;
    int best_count = -1;
    for (auto& [v, k] : freq)
        if (k > best_count) {
            best = &v;
            best_count = k;
        }
    Poly with_v, rest;
    for (auto& [m, c] : p.terms()) {
        if (m.degree_in(*best) >= 1)
            with_v.add_term(m.without_one(*best), c);
        else
            rest.add_term(m, c);
    }
    Scalar x = assignment.at(*best);
    return x * horner_eval<Scalar>(with_v, assignment) + horner_eval<Scalar>(rest, assignment);
}

} // namespace

Cplx Poly::evaluate(const std::map<VarId, Cplx>& assignment) const {
    std::set<VarId> given;
    for (auto& [v, x] : assignment)
        given.insert(v);
    check_assignment_covers(*this, given);
    return horner_eval<Cplx>(*this, assignment);
}

ExactComplex Poly::evaluate_exact(const std::map<VarId, ExactComplex>& assignment) const {
    std::set<VarId> given;
    for (auto& [v, x] : assignment)
        given.insert(v);
    check_assignment_covers(*this, given);
    return horner_eval<ExactComplex>(*this, assignment);
}

Poly Poly::substitute(const std::map<VarId, ExactComplex>& values) const {
    Poly out;
    for (auto& [m, c] : terms_) {
        ExactComplex coeff = c;
        Monomial kept;
        bool dead = false;
        for (auto& [v, e] : m.factors()) {
            auto it = values.find(v);
            if (it == values.end()) {
                kept = kept * Monomial(v, e);
                continue;
            }
            if (it->second.is_zero()) {
                dead = true;
                break;
            }
            ExactComplex pw(1);
            for (int i = 0; i < e; ++i)
                pw *= it->second;
            coeff *= pw;
        }
        if (!dead)
            out.add_term(kept, coeff);
    }
    return out;
}

Poly Poly::substitute(const VarId& v, const Poly& value) const {
    Poly out;
    for (auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        Monomial stripped = m;
        for (int i = 0; i < e; ++i)
            stripped = stripped.without_one(v);
        Poly piece;
        piece.add_term(stripped, c);
        for (int i = 0; i < e; ++i)
            piece = piece * value;
        out += piece;
    }
    return out;
}

std::string Poly::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (!m.is_constant())
            os << "*" << m.to_string();
    }
    return os.str();
}

} // namespace unifact
