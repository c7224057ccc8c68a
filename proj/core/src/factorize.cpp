#include "unifact/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unifact {

ComplexMatrix ElementaryFactor::matrix() const {
    ComplexMatrix m = ComplexMatrix::identity(n);
    for (auto& [rc, v] : entries) {
        auto [r, c] = rc;
        if (r == c || (side == Side::lower && r < c) || (side == Side::upper && r > c))
            throw DomainError("elementary factor entry outside its triangle");
        m(r, c) = v;
    }
    return m;
}

bool ElementaryFactor::is_identity(double tol) const {
    for (auto& [rc, v] : entries)
        if (std::abs(v) > tol)
            return false;
    return true;
}

SymMatrix PolyElementaryFactor::matrix() const {
    SymMatrix m = SymMatrix::identity(2);
    if (side == Side::lower)
        m(2, 1) = payload;
    else
        m(1, 2) = payload;
    return m;
}

PolyMatrix2::PolyMatrix2(Poly a_, Poly b_, Poly c_, Poly d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    std::set<VarId> vars;
    for (const Poly* p : {&a, &b, &c, &d})
        for (const VarId& v : p->support())
            vars.insert(v);
    if (vars.size() > 1)
        throw DomainError("SL_2 polynomial matrices must be univariate");
    var = vars.empty() ? VarId::symbol("z") : *vars.begin();
    Poly det = a * d - b * c;
    if (!(det == Poly(1)))
        throw DomainError("polynomial matrix determinant is not 1");
}

SymMatrix PolyMatrix2::matrix() const {
    SymMatrix m(2);
    m(1, 1) = a;
    m(1, 2) = b;
    m(2, 1) = c;
    m(2, 2) = d;
    return m;
}

std::vector<ParamVector> preimage_last_row(const std::vector<Cplx>& b) {
    const int n = static_cast<int>(b.size());
    if (n < 2)
        throw DomainError("preimage needs a target in C^n, n >= 2");
    double scale = 0.0;
    for (const Cplx& z : b)
        scale = std::max(scale, std::abs(z));
    if (scale == 0.0)
        throw DomainError("preimage target must be nonzero");

    ParamVector X1(n, 1), X2(n, 2), X3(n, 3);
    if (std::abs(b[0]) >= 1e-8 * scale) {
        // pi_n(M_1 M_2) = (x_{n1}, x_{n2} + ..., ..., 1 + x_{n1} x_{1n,2})
        // with all cross terms zeroed.
        X1.set(n, 1, b[0]);
        for (int k = 2; k <= n - 1; ++k)
            X1.set(n, k, b[k - 1]);
        X2.set(1, n, (b[n - 1] - Cplx(1.0)) / b[0]);
    } else {
        // Hit (1, b_2, ..., b_n) with two factors, then fix the leading
        // coordinate with the third factor's first column.
        X1.set(n, 1, Cplx(1.0));
        for (int k = 2; k <= n - 1; ++k)
            X1.set(n, k, b[k - 1]);
        X2.set(1, n, b[n - 1] - Cplx(1.0));
        int m = 2;
        for (int j = 2; j <= n; ++j)
            if (std::abs(b[j - 1]) > std::abs(b[m - 1]))
                m = j;
        X3.set(m, 1, (b[0] - Cplx(1.0)) / b[m - 1]);
    }
    // Convert the direct coordinates to the inverse orientation.
    return {inverse_params(X1), inverse_params(X2), inverse_params(X3)};
}

namespace {

ComplexMatrix psi_numeric(const std::vector<ParamVector>& Z, int n) {
    SquareMatrix<Cplx> acc = SquareMatrix<Cplx>::identity(n);
    for (const auto& f : Z)
        acc = acc * build_factor(inverse_params(f));
    return to_complex_matrix(acc);
}

} // namespace

PeelResult peel_last_row(const ComplexMatrix& A, const std::vector<ParamVector>& Z, double tol) {
    const int n = A.n();
    if (Z.empty() || Z.front().n() != n)
        throw DomainError("chain size mismatch in peel");
    ComplexMatrix B = psi_numeric(Z, n) * A.inverse();
    for (int j = 1; j <= n; ++j) {
        Cplx expect = (j == n) ? Cplx(1.0) : Cplx(0.0);
        if (std::abs(B(n, j) - expect) > tol)
            throw DomainError("last rows of Psi_K(Z) and A do not match within tolerance");
    }
    PeelResult out;
    out.h.resize(n - 1);
    for (int j = 1; j <= n - 1; ++j)
        out.h[j - 1] = B(j, n);
    // E(-h) B clears the last column; its upper-left block is B's.
    ComplexMatrix core(n - 1);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n - 1; ++j)
            core(i, j) = B(i, j);
    out.core = std::move(core);
    out.b_matrix = std::move(B);
    return out;
}

namespace {

ElementaryFactor from_params(const ParamVector& pv) {
    ElementaryFactor f;
    f.side = pv.lower() ? Side::lower : Side::upper;
    f.n = pv.n();
    for (auto& [rc, v] : pv.entries())
        if (v != Cplx(0.0))
            f.entries[rc] = v;
    return f;
}

std::vector<ElementaryFactor> factor_rec(const ComplexMatrix& A) {
    const int n = A.n();
    if (n == 1)
        return {};
    std::vector<ParamVector> Z = preimage_last_row(A.last_row());
    PeelResult peel = peel_last_row(A, Z, 1e-6);

    // A = [embedded factors of core^{-1}] E(-h) M(iota(Z_1)) M(iota(Z_2)) M(iota(Z_3)).
    std::vector<ElementaryFactor> out = factor_rec(peel.core.inverse());
    for (ElementaryFactor& f : out)
        f.n = n;

    ElementaryFactor eh;
    eh.side = Side::upper;
    eh.n = n;
    for (int j = 1; j <= n - 1; ++j)
        if (peel.h[j - 1] != Cplx(0.0))
            eh.entries[{j, n}] = -peel.h[j - 1];
    out.push_back(std::move(eh));

    for (const ParamVector& zk : Z)
        out.push_back(from_params(inverse_params(zk)));
    return out;
}

} // namespace

std::vector<ElementaryFactor> factor_constant(const ComplexMatrix& A, double det_tol) {
    if (!A.is_special(det_tol))
        throw DomainError("determinant is not 1 within tolerance");
    return merge_factors(factor_rec(A));
}

std::vector<ElementaryFactor> whitehead_diag(Cplx u) {
    if (u == Cplx(0.0))
        throw DomainError("whitehead_diag needs u != 0");
    auto e12 = [](Cplx v) {
        ElementaryFactor f;
        f.side = Side::upper;
        f.n = 2;
        f.entries[{1, 2}] = v;
        return f;
    };
    auto e21 = [](Cplx v) {
        ElementaryFactor f;
        f.side = Side::lower;
        f.n = 2;
        f.entries[{2, 1}] = v;
        return f;
    };
    return {e12(u), e21(-1.0 / u), e12(u - 1.0), e21(Cplx(1.0)), e12(Cplx(-1.0))};
}

std::vector<PolyElementaryFactor> whitehead_diag_exact(const ExactComplex& u) {
    if (u.is_zero())
        throw DomainError("whitehead_diag needs u != 0");
    auto e12 = [](ExactComplex v) { return PolyElementaryFactor{Side::upper, Poly(std::move(v))}; };
    auto e21 = [](ExactComplex v) { return PolyElementaryFactor{Side::lower, Poly(std::move(v))}; };
    const ExactComplex one(1);
    return {e12(u), e21(-(u.inverse())), e12(u - one), e21(one), e12(-one)};
}

namespace {

int poly_degree_in(const Poly& p, const VarId& var) {
    return p.is_zero() ? -1 : p.degree_in(var);
}

ExactComplex leading_coeff(const Poly& p, const VarId& var, int deg) {
    for (auto& [m, c] : p.terms())
        if (m.degree_in(var) == deg)
            return c;
    return ExactComplex();
}

Poly var_power(const VarId& var, int k) {
    if (k == 0)
        return Poly(1);
    Poly out;
    out.add_term(Monomial(var, k), ExactComplex(1));
    return out;
}

} // namespace

std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& d, const VarId& var) {
    for (const Poly* q : {&p, &d})
        for (const VarId& v : q->support())
            if (!(v == var))
                throw DomainError("univariate division got a multivariate polynomial");
    if (d.is_zero())
        throw DomainError("univariate division by zero");
    const int dd = poly_degree_in(d, var);
    const ExactComplex lead_d = leading_coeff(d, var, dd);
    Poly q, r = p;
    while (!r.is_zero() && poly_degree_in(r, var) >= dd) {
        int dr = poly_degree_in(r, var);
        ExactComplex coef = leading_coeff(r, var, dr) / lead_d;
        Poly t = var_power(var, dr - dd).scaled(coef);
        q += t;
        r -= t * d;
    }
    return {q, r};
}

std::vector<PolyElementaryFactor> factor_sl2_poly(const PolyMatrix2& A) {
    const VarId& var = A.var;
    Poly a = A.a, b = A.b, c = A.c, d = A.d;
    std::vector<PolyElementaryFactor> out;
    auto push_e12 = [&](Poly v) { out.push_back({Side::upper, std::move(v)}); };
    auto push_e21 = [&](Poly v) { out.push_back({Side::lower, std::move(v)}); };

    // Reduce by left multiplications, recording the inverses so the
    // invariant A = out * [[a,b],[c,d]] holds throughout.
    while (!c.is_zero()) {
        if (a.is_zero()) {
            // det = -bc = 1, so c is a unit; seed the corner with a row op.
            a -= c;
            b -= d;
            push_e12(Poly(1));
            continue;
        }
        const int da = poly_degree_in(a, var);
        const int dc = poly_degree_in(c, var);
        if (dc >= da) {
            auto [q, r] = poly_divmod(c, a, var);
            c = r;
            d -= q * b;
            push_e21(q);
        } else {
            auto [q, r] = poly_divmod(a, c, var);
            a = r;
            b -= q * d;
            push_e12(q);
        }
    }
    // Now [[u, b'],[0, 1/u]] with constant unit u; finish with the
    // correction shear and the Whitehead identity for the diagonal.
    if (!a.is_constant())
        throw NumericError("euclidean reduction did not reach a constant corner");
    const ExactComplex u = a.constant_value();
    if (!b.is_zero())
        push_e12(b.scaled(u));
    if (!u.is_one()) {
        for (auto& f : whitehead_diag_exact(u))
            out.push_back(std::move(f));
    }
    return merge_factors(std::move(out));
}

ComplexMatrix product(int n, const std::vector<ElementaryFactor>& factors) {
    ComplexMatrix acc = ComplexMatrix::identity(n);
    for (const auto& f : factors) {
        if (f.n != n)
            throw DomainError("factor size mismatch in product");
        acc = acc * f.matrix();
    }
    return acc;
}

SymMatrix product2(const std::vector<PolyElementaryFactor>& factors) {
    SymMatrix acc = SymMatrix::identity(2);
    for (const auto& f : factors)
        acc = acc * f.matrix();
    return acc;
}

std::vector<ElementaryFactor> merge_factors(std::vector<ElementaryFactor> factors,
                                            bool drop_identities) {
    std::vector<ElementaryFactor> out;
    const double tol = 1e-14;
    for (ElementaryFactor& f : factors) {
        if (drop_identities && f.is_identity(tol))
            continue;
        if (!out.empty() && out.back().side == f.side) {
            ElementaryFactor merged;
            merged.side = f.side;
            merged.n = f.n;
            ComplexMatrix m = out.back().matrix() * f.matrix();
            for (int r = 1; r <= f.n; ++r)
                for (int c = 1; c <= f.n; ++c)
                    if (r != c && m(r, c) != Cplx(0.0))
                        merged.entries[{r, c}] = m(r, c);
            out.pop_back();
            if (!(drop_identities && merged.is_identity(tol)))
                out.push_back(std::move(merged));
        } else {
            out.push_back(std::move(f));
        }
    }
    return out;
}

std::vector<PolyElementaryFactor> merge_factors(std::vector<PolyElementaryFactor> factors,
                                                bool drop_identities) {
    std::vector<PolyElementaryFactor> out;
    for (PolyElementaryFactor& f : factors) {
        if (drop_identities && f.payload.is_zero())
            continue;
        if (!out.empty() && out.back().side == f.side) {
            Poly merged = out.back().payload + f.payload;
            out.pop_back();
            if (!merged.is_zero() || !drop_identities)
                out.push_back({f.side, std::move(merged)});
        } else {
            out.push_back(std::move(f));
        }
    }
    return out;
}

VerifyReport verify_factorization(const ComplexMatrix& target,
                                  const std::vector<ElementaryFactor>& factors, double tol) {
    VerifyReport rep;
    rep.factor_count = static_cast<int>(factors.size());
    ComplexMatrix p = product(target.n(), factors);
    double denom = std::max(target.frobenius_norm(), 1.0);
    rep.relative_error = p.frobenius_distance(target) / denom;
    rep.match = rep.relative_error <= tol;
    return rep;
}

VerifyReport verify_factorization(const PolyMatrix2& target,
                                  const std::vector<PolyElementaryFactor>& factors) {
    VerifyReport rep;
    rep.factor_count = static_cast<int>(factors.size());
    rep.match = (product2(factors) == target.matrix());
    rep.relative_error = rep.match ? 0.0 : 1.0;
    return rep;
}

} // namespace unifact
