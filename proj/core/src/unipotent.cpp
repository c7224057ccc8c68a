#include "unifact/unipotent.hpp"

namespace unifact {

SymFactorChain symbolic_chain(int n, int K, Orientation orientation) {
    SymFactorChain chain(n, orientation);
    for (int k = 1; k <= K; ++k) {
        SymParamVector pv(n, k);
        for (auto [r, c] : triangle_coords(n, factor_is_lower(k)))
            pv.set(r, c, Poly::variable(VarId::param(k, r, c)));
        chain.append(pv);
    }
    return chain;
}

} // namespace unifact
