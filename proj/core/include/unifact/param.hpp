#ifndef UNIFACT_PARAM_HPP
#define UNIFACT_PARAM_HPP

#include <map>
#include <vector>

#include "unifact/errors.hpp"
#include "unifact/exact.hpp"
#include "unifact/poly.hpp"
#include "unifact/variable.hpp"

namespace unifact {

// Parameter vector Z_k of one unipotent factor: the n(n-1)/2 off-diagonal
// entries of a lower (odd k) or upper (even k) unit triangular matrix.
template <class T>
class BasicParamVector {
public:
    BasicParamVector() = default;
    BasicParamVector(int n, int factor_index) : n_(n), factor_(factor_index) {
        if (n < 2)
            throw DomainError("parameter vector needs n >= 2");
        if (factor_index < 1)
            throw DomainError("factor index must be >= 1");
        for (auto rc : triangle_coords(n, lower()))
            entries_.emplace(rc, T{});
    }

    int n() const { return n_; }
    int factor_index() const { return factor_; }
    bool lower() const { return factor_is_lower(factor_); }

    const std::map<std::pair<int, int>, T>& entries() const { return entries_; }

    const T& at(int row, int col) const {
        auto it = entries_.find({row, col});
        if (it == entries_.end())
            throw DomainError("parameter (row, col) outside this factor's triangle");
        return it->second;
    }
    void set(int row, int col, T value) {
        auto it = entries_.find({row, col});
        if (it == entries_.end())
            throw DomainError("parameter (row, col) outside this factor's triangle");
        it->second = std::move(value);
    }

    // Values in canonical coordinate order (column-major for lower factors,
    // row-major for upper ones); the padding trick's "final canonical
    // coordinate" is the last element.
    std::vector<T> canonical() const {
        std::vector<T> out;
        out.reserve(entries_.size());
        for (auto rc : triangle_coords(n_, lower()))
            out.push_back(entries_.at(rc));
        return out;
    }

    static BasicParamVector from_canonical(int n, int factor_index, const std::vector<T>& values) {
        BasicParamVector pv(n, factor_index);
        auto coords = triangle_coords(n, pv.lower());
        if (values.size() != coords.size())
            throw DomainError("wrong number of canonical coordinates for parameter vector");
        for (std::size_t i = 0; i < coords.size(); ++i)
            pv.entries_[coords[i]] = values[i];
        return pv;
    }

    bool is_zero() const {
        for (auto& [rc, v] : entries_)
            if (!(v == T{}))
                return false;
        return true;
    }

private:
    int n_ = 0;
    int factor_ = 0;
    std::map<std::pair<int, int>, T> entries_;
};

using ParamVector = BasicParamVector<Cplx>;
using SymParamVector = BasicParamVector<Poly>;

enum class Orientation {
    direct,  // M_1(Z_1) ... M_K(Z_K)
    inverse, // Psi_K = M_1(Z_1)^{-1} ... M_K(Z_K)^{-1}
};

// Ordered list of parameter vectors with factor indices 1..K (parities
// alternating lower, upper, lower, ...).
template <class T>
class BasicFactorChain {
public:
    BasicFactorChain() = default;
    BasicFactorChain(int n, Orientation orientation) : n_(n), orientation_(orientation) {}

    int n() const { return n_; }
    int K() const { return static_cast<int>(factors_.size()); }
    Orientation orientation() const { return orientation_; }

    const std::vector<BasicParamVector<T>>& factors() const { return factors_; }
    const BasicParamVector<T>& factor(int k) const { return factors_.at(k - 1); }

    void append(BasicParamVector<T> pv) {
        if (pv.n() != n_)
            throw DomainError("factor size mismatch in chain");
        if (pv.factor_index() != K() + 1)
            throw DomainError("factor indices must be consecutive from 1");
        factors_.push_back(std::move(pv));
    }

    // Flat values in canonical order, factor-major; matches chain_variables.
    std::vector<T> flat() const {
        std::vector<T> out;
        for (auto& f : factors_) {
            auto c = f.canonical();
            out.insert(out.end(), c.begin(), c.end());
        }
        return out;
    }

    static BasicFactorChain from_flat(int n, int K, Orientation orientation,
                                      const std::vector<T>& values) {
        const std::size_t d = static_cast<std::size_t>(n) * (n - 1) / 2;
        if (values.size() != d * K)
            throw DomainError("flat chain point has wrong length");
        BasicFactorChain chain(n, orientation);
        for (int k = 1; k <= K; ++k) {
            std::vector<T> slice(values.begin() + (k - 1) * d, values.begin() + k * d);
            chain.append(BasicParamVector<T>::from_canonical(n, k, slice));
        }
        return chain;
    }

private:
    int n_ = 0;
    Orientation orientation_ = Orientation::inverse;
    std::vector<BasicParamVector<T>> factors_;
};

using FactorChain = BasicFactorChain<Cplx>;
using SymFactorChain = BasicFactorChain<Poly>;

} // namespace unifact

#endif
