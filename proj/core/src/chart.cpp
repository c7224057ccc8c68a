#include "unifact/chart.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace unifact {

VarId target_symbol(int coordinate) {
    std::ostringstream os;
    os << "a" << coordinate;
    return VarId::symbol(os.str());
}

int stratum_index(const std::vector<Cplx>& a, bool even_parity) {
    const int n = static_cast<int>(a.size());
    bool all_zero = std::all_of(a.begin(), a.end(), [](Cplx z) { return z == Cplx(0.0); });
    if (n == 0 || all_zero)
        throw DomainError("stratum index needs a nonzero target vector");
    for (int k = 1; k <= n; ++k) {
        const Cplx& probe = even_parity ? a[k - 1] : a[n - k];
        if (probe != Cplx(0.0))
            return k;
    }
    return n; // unreachable
}

FiberChart fiber_chart(int n, int K, const std::vector<Cplx>& a) {
    if (static_cast<int>(a.size()) != n)
        throw DomainError("target vector has wrong length");
    if (K < 2)
        throw DomainError("fiber charts need K >= 2");
    const bool even = (K % 2 == 0);
    const int k = stratum_index(a, even);
    if (even && K == 2 && k >= 2)
        throw DomainError("stratum " + std::to_string(k) + " needs K >= 4 (K = 2 reaches stratum 1 only)");

    FiberChart chart;
    chart.n_ = n;
    chart.K_ = K;
    chart.stratum_ = k;
    chart.a_ = a;

    const std::vector<Poly> P_prev = symbolic_components(n, K - 1).components();
    std::vector<Poly> P_prev2;
    if (k >= 2)
        P_prev2 = symbolic_components(n, K - 2).components();

    std::set<VarId> solved_set, free_set;
    auto var_poly = [](int factor, int r, int c) { return Poly::variable(VarId::param(factor, r, c)); };

    if (even) {
        chart.pivot_ = k;
        chart.residual_ = P_prev[k - 1];

        // Factor K (upper): rows 1..k-1 free; row k solved from the last
        // n-k equations; rows below are plain chart variables.
        for (int i = 1; i <= k - 1; ++i)
            for (int j = i + 1; j <= n; ++j)
                free_set.insert(VarId::param(K, i, j));
        for (int m = k + 1; m <= n; ++m) {
            // z_{km,K} = (P_{m,K-1} - a_m - sum_{j=k+1}^{m-1} z_{jm,K} a_j) / a_k
            Poly num = P_prev[m - 1];
            num -= Poly::variable(target_symbol(m));
            for (int j = k + 1; j < m; ++j)
                num -= var_poly(K, j, m) * Poly::variable(target_symbol(j));
            chart.solved_.push_back({VarId::param(K, k, m), std::move(num)});
            solved_set.insert(VarId::param(K, k, m));
        }

        // Factor K-1 (lower): the rewritten first k-1 equations solve row k;
        // the strictly smaller triangle becomes free.
        for (int j = 1; j <= k - 2; ++j)
            for (int i = j + 1; i <= k - 1; ++i)
                free_set.insert(VarId::param(K - 1, i, j));
        for (int j = 1; j <= k - 1; ++j) {
            // z_{kj,K-1} = (P_{j,K-2} - sum_{m=k+1}^{n} z_{mj,K-1} P_{m,K-1}) / a_k
            Poly num = P_prev2[j - 1];
            for (int m = k + 1; m <= n; ++m)
                num -= var_poly(K - 1, m, j) * P_prev[m - 1];
            chart.solved_.push_back({VarId::param(K - 1, k, j), std::move(num)});
            solved_set.insert(VarId::param(K - 1, k, j));
        }
    } else {
        const int r = n - k + 1; // pivot coordinate, a_r != 0
        chart.pivot_ = r;
        chart.residual_ = P_prev[r - 1];

        // Factor K (lower): rows r+1..n free; row r solved from the first
        // r-1 equations.
        for (int i = r + 1; i <= n; ++i)
            for (int j = 1; j < i; ++j)
                free_set.insert(VarId::param(K, i, j));
        for (int m = 1; m <= r - 1; ++m) {
            // z_{rm,K} = (P_{m,K-1} - a_m - sum_{j=m+1}^{r-1} z_{jm,K} a_j) / a_r
            Poly num = P_prev[m - 1];
            num -= Poly::variable(target_symbol(m));
            for (int j = m + 1; j <= r - 1; ++j)
                num -= var_poly(K, j, m) * Poly::variable(target_symbol(j));
            chart.solved_.push_back({VarId::param(K, r, m), std::move(num)});
            solved_set.insert(VarId::param(K, r, m));
        }

        // Factor K-1 (upper): rewritten trailing equations solve row r; the
        // triangle strictly below-right becomes free.
        for (int j = r + 1; j <= n - 1; ++j)
            for (int m = j + 1; m <= n; ++m)
                free_set.insert(VarId::param(K - 1, j, m));
        for (int m = r + 1; m <= n; ++m) {
            // z_{rm,K-1} = (P_{m,K-2} - sum_{j=1}^{r-1} z_{jm,K-1} P_{j,K-1}) / a_r
            Poly num = P_prev2[m - 1];
            for (int j = 1; j <= r - 1; ++j)
                num -= var_poly(K - 1, j, m) * P_prev[j - 1];
            chart.solved_.push_back({VarId::param(K - 1, r, m), std::move(num)});
            solved_set.insert(VarId::param(K - 1, r, m));
        }
    }

    for (const VarId& v : chain_variables(n, K)) {
        if (solved_set.count(v) || free_set.count(v))
            continue;
        chart.chart_.push_back(v);
    }
    chart.free_.assign(free_set.begin(), free_set.end());
    return chart;
}

FiberChart FiberChart::rebound(const std::vector<Cplx>& a) const {
    if (static_cast<int>(a.size()) != n_)
        throw DomainError("target vector has wrong length");
    if (stratum_index(a, K_ % 2 == 0) != stratum_)
        throw DomainError("rebound target lies in a different stratum");
    FiberChart out = *this;
    out.a_ = a;
    return out;
}

FiberChart::Reconstruction FiberChart::reconstruct(const PointAssignment& values) const {
    PointAssignment full = values;
    for (int j = 1; j <= n_; ++j)
        full[target_symbol(j)] = a_[j - 1];

    const Cplx den = a_[pivot_ - 1];
    for (const SolvedVar& s : solved_) {
        if (full.count(s.var))
            throw DomainError("solved variable supplied as input: " + s.var.to_string());
        full[s.var] = s.numerator.evaluate(full) / den;
    }

    Reconstruction rec;
    const auto vars = chain_variables(n_, K_);
    rec.flat.reserve(vars.size());
    for (const VarId& v : vars) {
        auto it = full.find(v);
        if (it == full.end())
            throw DomainError("reconstruction is missing a value for " + v.to_string());
        rec.flat.push_back(it->second);
    }

    double grad_max = 0.0;
    for (const VarId& v : residual_.support())
        grad_max = std::max(grad_max, std::abs(residual_.derivative(v).evaluate(full)));
    rec.singular_fiber = grad_max <= 1e-12 * (1.0 + std::abs(den));
    return rec;
}

} // namespace unifact
