#ifndef UNIFACT_UNIPOTENT_HPP
#define UNIFACT_UNIPOTENT_HPP

#include <vector>

#include "unifact/matrix.hpp"
#include "unifact/param.hpp"

namespace unifact {

// Unit triangular matrix with Z's entries in the triangle matching parity.
template <class T>
SquareMatrix<T> build_factor(const BasicParamVector<T>& Z) {
    SquareMatrix<T> m = SquareMatrix<T>::identity(Z.n());
    for (auto& [rc, v] : Z.entries())
        m(rc.first, rc.second) = v;
    return m;
}

// Parameters of the inverse matrix, by exact forward substitution on the
// unit triangular system (no division). An involution: iota(iota(Z)) = Z.
template <class T>
BasicParamVector<T> inverse_params(const BasicParamVector<T>& Z) {
    const int n = Z.n();
    SquareMatrix<T> m = build_factor(Z);
    SquareMatrix<T> inv = SquareMatrix<T>::identity(n);
    // Column by column: inv(r,c) = -(sum_{j between c and r} m(r,j) inv(j,c)).
    if (Z.lower()) {
        for (int c = 1; c <= n; ++c)
            for (int r = c + 1; r <= n; ++r) {
                T acc{};
                for (int j = c; j < r; ++j)
                    acc += m(r, j) * inv(j, c);
                inv(r, c) = -acc;
            }
    } else {
        for (int c = n; c >= 1; --c)
            for (int r = c - 1; r >= 1; --r) {
                T acc{};
                for (int j = r + 1; j <= c; ++j)
                    acc += m(r, j) * inv(j, c);
                inv(r, c) = -acc;
            }
    }
    BasicParamVector<T> out(n, Z.factor_index());
    for (auto rc : triangle_coords(n, Z.lower()))
        out.set(rc.first, rc.second, inv(rc.first, rc.second));
    return out;
}

// Ordered product of the chain respecting orientation. Inverse-orientation
// products invert each factor via inverse_params, never numerically.
template <class T>
SquareMatrix<T> psi_eval(const BasicFactorChain<T>& chain) {
    SquareMatrix<T> acc = SquareMatrix<T>::identity(chain.n());
    for (auto& f : chain.factors()) {
        if (chain.orientation() == Orientation::inverse)
            acc = acc * build_factor(inverse_params(f));
        else
            acc = acc * build_factor(f);
    }
    return acc;
}

// Last row of Psi_K; defined on inverse-orientation chains.
template <class T>
std::vector<T> phi_eval(const BasicFactorChain<T>& chain) {
    if (chain.orientation() != Orientation::inverse)
        throw DomainError("phi_eval needs an inverse-orientation chain");
    return psi_eval(chain).last_row();
}

namespace detail {
inline bool value_is_zero(const Cplx& v) { return v == Cplx(0.0, 0.0); }
inline bool value_is_zero(const ExactComplex& v) { return v.is_zero(); }
inline bool value_is_zero(const Poly& v) { return v.is_zero(); }
} // namespace detail

// Membership in S_K: for every factor index k < K, the last-row entries of
// lower factors and last-column entries of upper factors vanish. The K-th
// factor is unconstrained. Zero tests are exact.
template <class T>
bool in_singular_set(const std::vector<BasicParamVector<T>>& factors, int K) {
    if (K < 2)
        throw DomainError("S_K is defined for K >= 2");
    if (static_cast<int>(factors.size()) < K)
        throw DomainError("chain point has fewer than K factors");
    const int n = factors.front().n();
    for (int k = 1; k < K; ++k) {
        const auto& f = factors[k - 1];
        if (f.lower()) {
            for (int col = 1; col < n; ++col)
                if (!detail::value_is_zero(f.at(n, col)))
                    return false;
        } else {
            for (int row = 1; row < n; ++row)
                if (!detail::value_is_zero(f.at(row, n)))
                    return false;
        }
    }
    return true;
}

template <class T>
bool in_singular_set(const BasicFactorChain<T>& chain) {
    return in_singular_set(chain.factors(), chain.K());
}

// The Vaserstein padding trick: appends factors with final canonical
// coordinate 1, then 0, then -1. Psi is unchanged pointwise and the padded
// chain point lies off S_{K+3}.
template <class T>
BasicFactorChain<T> pad_factors(const BasicFactorChain<T>& chain) {
    if (chain.orientation() != Orientation::inverse)
        throw DomainError("pad_factors needs an inverse-orientation chain");
    BasicFactorChain<T> out = chain;
    const int n = chain.n();
    const std::size_t d = static_cast<std::size_t>(n) * (n - 1) / 2;
    auto with_last = [&](int factor_index, T value) {
        std::vector<T> coords(d, T{});
        coords.back() = std::move(value);
        return BasicParamVector<T>::from_canonical(n, factor_index, coords);
    };
    int K = chain.K();
    out.append(with_last(K + 1, T{1}));
    out.append(BasicParamVector<T>(n, K + 2));
    out.append(with_last(K + 3, T{-1}));
    return out;
}

// Chain whose entries are the parameter variables themselves.
SymFactorChain symbolic_chain(int n, int K, Orientation orientation = Orientation::inverse);

} // namespace unifact

#endif
