#include "unifact/spray.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "unifact/errors.hpp"

namespace unifact {

namespace {
// Below this magnitude of alpha the exponential flow degenerates to the
// linear drift formula.
constexpr double kAlphaThreshold = 1e-14;
} // namespace

ShearField::ShearField(Poly p_, VarId i_, VarId j_) : p(std::move(p_)), i(std::move(i_)), j(std::move(j_)) {
    if (i == j)
        throw DomainError("shear field needs distinct variables");
    std::vector<VarId> offenders;
    if (!p.is_multilinear(&offenders))
        throw DomainError("shear field polynomial must be multilinear");
}

Poly apply_field(const ShearField& field, const Poly& q) {
    return field.p.derivative(field.i) * q.derivative(field.j) -
           field.p.derivative(field.j) * q.derivative(field.i);
}

PointAssignment shear_field_flow(const ShearField& field, const PointAssignment& start, Cplx t) {
    const Poly dpi = field.p.derivative(field.i);
    const Poly dpj = field.p.derivative(field.j);
    const Poly alpha_poly = dpi.derivative(field.j);

    PointAssignment full = start;
    // Variables of p absent from the start point would make the coefficient
    // evaluations throw a missing-variable error; let that propagate.
    const Cplx xi0 = full.count(field.i) ? full.at(field.i) : Cplx(0.0);
    const Cplx xj0 = full.count(field.j) ? full.at(field.j) : Cplx(0.0);
    full[field.i] = xi0;
    full[field.j] = xj0;

    const Cplx alpha = alpha_poly.evaluate(full);
    const Cplx beta = dpi.evaluate(full) - alpha * xj0;
    const Cplx gamma = dpj.evaluate(full) - alpha * xi0;

    PointAssignment out = full;
    if (std::abs(alpha) < kAlphaThreshold) {
        out[field.j] = xj0 + beta * t;
        out[field.i] = xi0 - gamma * t;
    } else {
        const Cplx e = std::exp(alpha * t);
        out[field.j] = (xj0 + beta / alpha) * e - beta / alpha;
        out[field.i] = (xi0 + gamma / alpha) / e - gamma / alpha;
    }
    return out;
}

int span_rank(const Poly& p, const PointAssignment& point) {
    std::vector<VarId> vars;
    vars.reserve(point.size());
    for (auto& [v, x] : point)
        vars.push_back(v);
    const int m = static_cast<int>(vars.size());
    std::vector<Cplx> grad(m);
    for (int k = 0; k < m; ++k)
        grad[k] = p.derivative(vars[k]).evaluate(point);

    const int pairs = m * (m - 1) / 2;
    if (pairs == 0)
        return 0;
    Eigen::MatrixXcd rows(pairs, m);
    rows.setZero();
    int r = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b, ++r) {
            rows(r, b) = grad[a];  // (dp/dx_a) d/dx_b
            rows(r, a) = -grad[b]; // -(dp/dx_b) d/dx_a
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rows);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0)
        return 0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > 1e-12 * sv(0))
            ++rank;
    return rank;
}

SprayMap::SprayMap(Poly residual, PointAssignment base)
    : residual_(std::move(residual)), base_(std::move(base)) {
    std::vector<VarId> offenders;
    if (!residual_.is_multilinear(&offenders))
        throw DomainError("spray residual must be multilinear");
}

void SprayMap::add_shear(VarId i, VarId j) { steps_.emplace_back(ShearField(residual_, i, j)); }

void SprayMap::add_field(ShearField field) {
    if (!(field.p == residual_))
        throw DomainError("spray fields must share the residual polynomial");
    steps_.emplace_back(std::move(field));
}

void SprayMap::add_translation(VarId direction) {
    if (residual_.support().count(direction))
        throw DomainError("translation direction must be outside the residual support");
    steps_.emplace_back(std::move(direction));
}

PointAssignment SprayMap::apply(const std::vector<Cplx>& times) const {
    if (times.size() != steps_.size())
        throw DomainError("spray map needs one time per step");
    PointAssignment z = base_;
    // phi_1^{t_1} o ... o phi_N^{t_N}: the last step acts first.
    for (std::size_t idx = steps_.size(); idx-- > 0;) {
        const Step& step = steps_[idx];
        const Cplx t = times[idx];
        if (std::holds_alternative<ShearField>(step)) {
            z = shear_field_flow(std::get<ShearField>(step), z, t);
        } else {
            const VarId& v = std::get<VarId>(step);
            auto it = z.find(v);
            if (it == z.end())
                z[v] = t;
            else
                it->second += t;
        }
    }
    return z;
}

} // namespace unifact
