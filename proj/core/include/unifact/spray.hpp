#ifndef UNIFACT_SPRAY_HPP
#define UNIFACT_SPRAY_HPP

#include <map>
#include <variant>
#include <vector>

#include "unifact/poly.hpp"

namespace unifact {

using PointAssignment = std::map<VarId, Cplx>;

// Shear field V_{ij,p} = (dp/dx_i) d/dx_j - (dp/dx_j) d/dx_i for a
// multilinear p; globally integrable with the closed-form flow below.
struct ShearField {
    Poly p;
    VarId i, j;

    ShearField(Poly p_, VarId i_, VarId j_);
};

// Directional derivative of q along the field; tangency is
// apply_field(f, f.p) == 0 exactly.
Poly apply_field(const ShearField& field, const Poly& q);

// Closed-form flow of the shear field for complex time t. With
// alpha = d2p/dxi dxj and beta, gamma the affine parts at the start point,
// the (x_i, x_j) pair moves by opposite exponentials (alpha != 0) or drifts
// linearly (alpha = 0); all other coordinates are fixed and p is conserved.
PointAssignment shear_field_flow(const ShearField& field, const PointAssignment& start, Cplx t);

// Rank of {V_{ij,p}(point) : i < j over the point's variables}; equals
// (#vars - 1) whenever dp(point) != 0.
int span_rank(const Poly& p, const PointAssignment& point);

// Composed-flow spray s(z, t_1..t_N) = phi_1^{t_1} o ... o phi_N^{t_N}(z),
// built from shear fields of one shared residual polynomial plus
// translations along free directions outside its support.
class SprayMap {
public:
    using Step = std::variant<ShearField, VarId>;

    SprayMap(Poly residual, PointAssignment base);

    void add_shear(VarId i, VarId j);      // field of the shared residual
    void add_field(ShearField field);      // rejected unless field.p == residual
    void add_translation(VarId direction); // rejected if direction is in the residual support

    const Poly& residual() const { return residual_; }
    const PointAssignment& base() const { return base_; }
    const std::vector<Step>& steps() const { return steps_; }

    PointAssignment apply(const std::vector<Cplx>& times) const;

private:
    Poly residual_;
    PointAssignment base_;
    std::vector<Step> steps_;
};

} // namespace unifact

#endif
