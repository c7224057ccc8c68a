#ifndef UNIFACT_CHART_HPP
#define UNIFACT_CHART_HPP

#include <vector>

#include "unifact/components.hpp"
#include "unifact/spray.hpp"

namespace unifact {

// Stratum index of a target vector a in C^n \ {0}: even parity uses the
// leading coordinates (smallest k with a_k != 0), odd parity the trailing
// ones (smallest k with a_{n-k+1} != 0). Zero tests are exact.
int stratum_index(const std::vector<Cplx>& a, bool even_parity);

// One solved coordinate of a fiber chart: value = numerator / a_pivot.
// Numerators are polynomials in the chart and free variables plus the
// target symbols a1..an.
struct SolvedVar {
    VarId var;
    Poly numerator;
};

// Graph parametrization of Phi_K^{-1}(a) over one stratum: the solved
// variables are rational in the others, the free variables do not enter any
// equation, and what remains is the single residual equation
// P_{pivot,K-1} = a_pivot over the chart variables, with the free
// variables spanning a complementary affine block.
class FiberChart {
public:
    int n() const { return n_; }
    int K() const { return K_; }
    int stratum() const { return stratum_; }
    int pivot() const { return pivot_; } // residual component index
    const std::vector<Cplx>& target() const { return a_; }

    const std::vector<SolvedVar>& solved() const { return solved_; }
    const std::vector<VarId>& free_vars() const { return free_; }
    const std::vector<VarId>& chart_vars() const { return chart_; }
    const Poly& residual() const { return residual_; }
    Cplx residual_target() const { return a_[pivot_ - 1]; }

    int base_dim_M() const { return static_cast<int>(chart_.size()); }
    int base_dim_N() const { return static_cast<int>(free_.size()); }

    // Full chain point (flat canonical order) from chart + free values; the
    // singular flag marks a vanishing residual differential at the point
    // (the one non-smooth fiber, over the image of S_K), with no spray span
    // claimed there.
    struct Reconstruction {
        std::vector<Cplx> flat;
        bool singular_fiber = false;
    };
    Reconstruction reconstruct(const PointAssignment& values) const;

    // Same chart rebound to another target in the same stratum; the solved
    // recipes are symbolic in a1..an, so only the bound vector changes.
    FiberChart rebound(const std::vector<Cplx>& a) const;

    friend FiberChart fiber_chart(int n, int K, const std::vector<Cplx>& a);

private:
    int n_ = 0, K_ = 0, stratum_ = 0, pivot_ = 0;
    std::vector<Cplx> a_;
    std::vector<SolvedVar> solved_;
    std::vector<VarId> free_;
    std::vector<VarId> chart_;
    Poly residual_;
};

// Chart over the stratum containing a. Even K: stratum 1 needs K >= 2,
// deeper strata K >= 4. Odd K needs K >= 3 (mirrored construction).
FiberChart fiber_chart(int n, int K, const std::vector<Cplx>& a);

// The target symbols a1..an used in solved-variable numerators.
VarId target_symbol(int coordinate);

} // namespace unifact

#endif
