#include "unifact/components.hpp"

#include <map>
#include <sstream>

namespace unifact {

CompiledPoly::CompiledPoly(const Poly& p, const std::vector<VarId>& order) {
    std::map<VarId, std::uint32_t> index;
    for (std::uint32_t i = 0; i < order.size(); ++i)
        index[order[i]] = i;
    for (auto& [m, c] : p.terms()) {
        Term t;
        t.coeff = c.to_complex();
        t.begin = static_cast<std::uint32_t>(idx_.size());
        for (auto& [v, e] : m.factors()) {
            auto it = index.find(v);
            if (it == index.end())
                throw DomainError("compiled polynomial uses variable outside the order: " +
                                  v.to_string());
            for (int i = 0; i < e; ++i)
                idx_.push_back(it->second);
        }
        t.end = static_cast<std::uint32_t>(idx_.size());
        terms_.push_back(t);
    }
}

Cplx CompiledPoly::eval(std::span<const Cplx> x) const {
    Cplx acc(0.0, 0.0);
    for (const Term& t : terms_) {
        Cplx prod = t.coeff;
        for (std::uint32_t i = t.begin; i < t.end; ++i)
            prod *= x[idx_[i]];
        acc += prod;
    }
    return acc;
}

ComponentSystem::ComponentSystem(int n, int K, std::vector<Poly> components)
    : n_(n), K_(K), comps_(std::move(components)), vars_(chain_variables(n, K)) {
    deriv_.reserve(comps_.size() * vars_.size());
    for (const Poly& p : comps_) {
        comp_compiled_.emplace_back(p, vars_);
        for (const VarId& v : vars_)
            deriv_.push_back(p.derivative(v));
    }
    deriv_compiled_.reserve(deriv_.size());
    for (const Poly& d : deriv_)
        deriv_compiled_.emplace_back(d, vars_);
}

std::vector<Cplx> ComponentSystem::eval(std::span<const Cplx> point) const {
    if (static_cast<int>(point.size()) != dim())
        throw DomainError("point has wrong dimension for component system");
    std::vector<Cplx> out;
    out.reserve(comps_.size());
    for (auto& c : comp_compiled_)
        out.push_back(c.eval(point));
    return out;
}

ComponentSystem symbolic_components(int n, int K) {
    if (n < 2 || K < 1)
        throw DomainError("symbolic_components needs n >= 2, K >= 1");
    // Base case: last row of M_1(Z_1)^{-1}.
    SymParamVector z1(n, 1);
    for (auto [r, c] : triangle_coords(n, true))
        z1.set(r, c, Poly::variable(VarId::param(1, r, c)));
    std::vector<Poly> prev = build_factor(inverse_params(z1)).last_row();

    for (int level = 2; level <= K; ++level) {
        std::vector<Poly> cur(n);
        if (level % 2 == 0) {
            // P_{k,K} = P_{k,K-1} - sum_{j=1}^{k-1} z_{jk,K} P_{j,K}
            for (int k = 1; k <= n; ++k) {
                Poly p = prev[k - 1];
                for (int j = 1; j < k; ++j)
                    p -= Poly::variable(VarId::param(level, j, k)) * cur[j - 1];
                cur[k - 1] = std::move(p);
            }
        } else {
            // P_{k,K} = P_{k,K-1} - sum_{j=k+1}^{n} z_{jk,K} P_{j,K}
            for (int k = n; k >= 1; --k) {
                Poly p = prev[k - 1];
                for (int j = k + 1; j <= n; ++j)
                    p -= Poly::variable(VarId::param(level, j, k)) * cur[j - 1];
                cur[k - 1] = std::move(p);
            }
        }
        prev = std::move(cur);
    }
    return ComponentSystem(n, K, std::move(prev));
}

Eigen::MatrixXcd jacobian_at(const ComponentSystem& system, std::span<const Cplx> point) {
    if (static_cast<int>(point.size()) != system.dim())
        throw DomainError("point has wrong dimension for jacobian");
    Eigen::MatrixXcd J(system.n(), system.dim());
    for (int k = 0; k < system.n(); ++k)
        for (int v = 0; v < system.dim(); ++v)
            J(k, v) = system.deriv_compiled_[k * system.dim() + v].eval(point);
    return J;
}

double min_singular_value(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().tail(1)(0);
}

bool submersive_at(const ComponentSystem& system, std::span<const Cplx> point, double tol) {
    if (system.K() < 2)
        throw DomainError("submersivity test needs K >= 2");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jacobian_at(system, point));
    const auto& sv = svd.singularValues();
    double largest = sv(0);
    if (largest == 0.0)
        return false;
    return sv(sv.size() - 1) > tol * largest;
}

std::map<VarId, ExactComplex> singular_set_constraints(int n, int K) {
    if (K < 2)
        throw DomainError("S_K is defined for K >= 2");
    std::map<VarId, ExactComplex> zeros;
    for (int k = 1; k < K; ++k) {
        if (factor_is_lower(k)) {
            for (int col = 1; col < n; ++col)
                zeros.emplace(VarId::param(k, n, col), ExactComplex());
        } else {
            for (int row = 1; row < n; ++row)
                zeros.emplace(VarId::param(k, row, n), ExactComplex());
        }
    }
    return zeros;
}

SingularImageReport singular_image_check(int n, int K) {
    SingularImageReport report;
    report.n = n;
    report.K = K;
    ComponentSystem sys = symbolic_components(n, K);
    auto zeros = singular_set_constraints(n, K);
    const Poly one(1);
    const Poly zero;
    for (int k = 1; k <= n; ++k) {
        Poly r = sys.components()[k - 1].substitute(zeros);
        bool ok = true;
        std::ostringstream why;
        if (k == n) {
            ok = (r == one);
            if (!ok)
                why << "P_" << k << "," << K << " restricted to S_K is not 1";
        } else if (K % 2 == 0) {
            ok = (r == zero);
            if (!ok)
                why << "P_" << k << "," << K << " restricted to S_K is not 0";
        }
        if (!ok)
            report.failures.push_back(why.str());
        report.restricted.push_back(std::move(r));
    }
    report.pass = report.failures.empty();
    return report;
}

} // namespace unifact
