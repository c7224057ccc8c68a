#ifndef UNIFACT_COMPONENTS_HPP
#define UNIFACT_COMPONENTS_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unifact/poly.hpp"
#include "unifact/unipotent.hpp"

namespace unifact {

// Relative singular-value threshold shared by all numerical rank decisions.
inline constexpr double kRankTol = 1e-8;

// Flattened polynomial evaluator over a fixed variable order; built once,
// evaluated per point.
class CompiledPoly {
public:
    CompiledPoly() = default;
    CompiledPoly(const Poly& p, const std::vector<VarId>& order);

    Cplx eval(std::span<const Cplx> x) const;

private:
    struct Term {
        Cplx coeff;
        std::uint32_t begin = 0, end = 0;
    };
    std::vector<Term> terms_;
    std::vector<std::uint32_t> idx_;
};

// The last-row component polynomials P_{1,K}..P_{n,K} of Phi_K, in the
// canonical variables of factors 1..K, together with compiled forms of the
// components and their first derivatives.
class ComponentSystem {
public:
    ComponentSystem(int n, int K, std::vector<Poly> components);

    int n() const { return n_; }
    int K() const { return K_; }
    const std::vector<Poly>& components() const { return comps_; }
    const std::vector<VarId>& variables() const { return vars_; }
    const Poly& derivative(int comp, int var) const { return deriv_[comp * dim() + var]; }
    int dim() const { return static_cast<int>(vars_.size()); }

    std::vector<Cplx> eval(std::span<const Cplx> point) const;

private:
    friend Eigen::MatrixXcd jacobian_at(const ComponentSystem&, std::span<const Cplx>);

    int n_, K_;
    std::vector<Poly> comps_;
    std::vector<VarId> vars_;
    std::vector<Poly> deriv_;
    std::vector<CompiledPoly> comp_compiled_;
    std::vector<CompiledPoly> deriv_compiled_;
};

// Builds the components through the last-row recurrences: the K = 1 base
// case is the last row of M_1(Z_1)^{-1}; even levels append
//   P_{k,K} = P_{k,K-1} - sum_{j<k} z_{jk,K} P_{j,K}
// and odd levels the mirrored relations from P_{n,K} downward.
ComponentSystem symbolic_components(int n, int K);

// Jacobian of Phi_K at a point, rows dP_{k,K}, columns in canonical
// variable order.
Eigen::MatrixXcd jacobian_at(const ComponentSystem& system, std::span<const Cplx> point);

double min_singular_value(const Eigen::MatrixXcd& m);

// Numerical-rank-n test: smallest singular value > tol * largest.
bool submersive_at(const ComponentSystem& system, std::span<const Cplx> point,
                   double tol = kRankTol);

// Symbolic restriction of the components to S_K. For even K every
// P_{1..n-1} must restrict to 0 and P_n to 1; for odd K, P_n to 1.
struct SingularImageReport {
    int n = 0, K = 0;
    bool pass = false;
    std::vector<Poly> restricted;       // all components restricted to S_K
    std::vector<std::string> failures;  // offending components, empty on pass
};

SingularImageReport singular_image_check(int n, int K);

// S_K as an exact-substitution map (constrained coordinates -> 0).
std::map<VarId, ExactComplex> singular_set_constraints(int n, int K);

} // namespace unifact

#endif
